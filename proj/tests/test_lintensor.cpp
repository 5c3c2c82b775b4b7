#include "curvcone/error.hpp"
#include "curvcone/jet.hpp"
#include "curvcone/lintensor.hpp"
#include "curvcone/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace curvcone;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

SymForm random_sym(Rng& rng, int n, double lo = -1.0, double hi = 1.0) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(lo, hi);
  return SymForm(m);
}

MetricValue random_metric(Rng& rng, int n, double eps = 0.2) {
  Matrix m = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double e = rng.uniform(-eps, eps) / n;
      m(i, j) += e;
      if (i != j) m(j, i) += e;
    }
  return MetricValue(SymForm(m));
}

}  // namespace

TEST_SUITE("lintensor") {
  TEST_CASE("SymForm symmetrizes and rejects bad input") {
    const SymForm a(mat({{1.0, 2.0}, {2.0, 3.0}}));
    CHECK(a(0, 1) == 2.0);
    CHECK_THROWS_AS(SymForm(mat({{1.0, 2.0}, {2.5, 3.0}})), Error);
    CHECK_THROWS_AS(SymForm(mat({{1.0, std::numeric_limits<double>::quiet_NaN()}, {0.0, 1.0}})), Error);
    // round-off level asymmetry is accepted and removed
    const SymForm b(mat({{1.0, 2.0}, {2.0 + 1e-15, 3.0}}));
    CHECK(b(0, 1) == b(1, 0));
  }

  TEST_CASE("MetricValue requires positive definiteness") {
    CHECK_THROWS_AS(MetricValue(SymForm(mat({{1.0, 0.0}, {0.0, -1.0}}))), Error);
    try {
      MetricValue(SymForm(mat({{0.0, 0.0}, {0.0, 1.0}})));
      FAIL("expected MetricNotSPD");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MetricNotSPD);
    }
    const MetricValue g(SymForm(mat({{2.0, 0.0}, {0.0, 4.0}})));
    Vector p(2);
    p << 2.0, 4.0;
    CHECK(g.covector_norm2(p) == doctest::Approx(2.0 + 4.0));
  }

  TEST_CASE("generalized eigenvalue examples") {
    const MetricValue g2(SymForm::identity(2));
    const auto l0 = generalized_eigenvalues(SymForm::identity(3), MetricValue(SymForm::identity(3)));
    for (int i = 0; i < 3; ++i) CHECK(l0[i] == doctest::Approx(1.0));

    const auto l1 = generalized_eigenvalues(SymForm(mat({{2.0, 0.0}, {0.0, 4.0}})),
                                            MetricValue(SymForm(mat({{1.0, 0.0}, {0.0, 4.0}}))));
    CHECK(l1[0] == doctest::Approx(1.0));
    CHECK(l1[1] == doctest::Approx(2.0));

    const auto l2 = generalized_eigenvalues(SymForm(mat({{0.0, 1.0}, {1.0, 0.0}})), g2);
    CHECK(l2[0] == doctest::Approx(-1.0));
    CHECK(l2[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(generalized_eigenvalues(SymForm::identity(3), g2), Error);
  }

  TEST_CASE("generalized eigenvalues match the characteristic polynomial oracle") {
    Rng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
      const SymForm a = random_sym(rng, 3);
      const MetricValue g = random_metric(rng, 3);
      oracle::Mat3 am{}, gm{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          am[i][j] = a(i, j);
          gm[i][j] = g.matrix()(i, j);
        }
      const auto ref = oracle::generalized_eigenvalues(am, gm);
      const auto got = generalized_eigenvalues(a, g);
      for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(got[i] - ref[static_cast<std::size_t>(i)]));
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("eigenvalue scaling properties") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + trial % 5;
      const SymForm a = random_sym(rng, n);
      const MetricValue g = random_metric(rng, n);
      const auto base = generalized_eigenvalues(a, g);
      const double s = rng.uniform(0.1, 5.0);
      const auto scaled = generalized_eigenvalues(a * s, g);
      const auto negated = generalized_eigenvalues(a * (-s), g);
      const auto cg = generalized_eigenvalues(a, MetricValue(g.form() * s));
      for (int i = 0; i < n; ++i) {
        CHECK(scaled[i] == doctest::Approx(s * base[i]).epsilon(1e-10));
        CHECK(negated[i] == doctest::Approx(-s * base[n - 1 - i]).epsilon(1e-10));
        CHECK(cg[i] == doctest::Approx(base[i] / s).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("eigenvectors are g-orthonormal and solve the pencil") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 3 + trial % 4;
      const SymForm a = random_sym(rng, n);
      const MetricValue g = random_metric(rng, n);
      const EigenSystem es = generalized_eigensystem(a, g);
      const Matrix gram = es.vectors.transpose() * g.matrix() * es.vectors;
      CHECK((gram - Matrix::Identity(n, n)).norm() < 1e-12);
      for (int i = 0; i < n; ++i) {
        const Vector r = a.matrix() * es.vectors.col(i) - es.values[i] * (g.matrix() * es.vectors.col(i));
        CHECK(r.norm() < 1e-12);
      }
    }
  }

  TEST_CASE("sigma_k examples and brute force") {
    const std::vector<double> l = {1.0, 2.0, 3.0};
    CHECK(sigma_k(l, 1) == doctest::Approx(6.0));
    CHECK(sigma_k(l, 2) == doctest::Approx(11.0));
    CHECK(sigma_k(l, 3) == doctest::Approx(6.0));
    CHECK(oracle::sigma_k(l, 2) == doctest::Approx(11.0));
    CHECK_THROWS_AS(sigma_k(l, 0), Error);
    CHECK_THROWS_AS(sigma_k(l, 4), Error);

    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + trial % 6;
      std::vector<double> x(static_cast<std::size_t>(n));
      for (double& v : x) v = rng.uniform(-2.0, 2.0);
      for (int k = 1; k <= n; ++k) CHECK(sigma_k(x, k) == doctest::Approx(oracle::sigma_k(x, k)).epsilon(1e-12));
    }
  }

  TEST_CASE("Kulkarni-Nomizu product") {
    const int n = 3;
    const SymForm zero = SymForm::zero(n);
    CHECK(kulkarni_nomizu(zero, SymForm::identity(n)).norm() == 0.0);

    Rng rng(9);
    const MetricValue g = random_metric(rng, n, 0.5);
    const Curv4Tensor gg = kulkarni_nomizu(g.form(), g.form());
    const Matrix& m = g.matrix();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            worst = std::max(worst, std::abs(gg(i, j, k, l) - 2.0 * (m(i, k) * m(j, l) - m(i, l) * m(j, k))));
    CHECK(worst < 1e-14);

    for (int trial = 0; trial < 50; ++trial) {
      const int d = 2 + trial % 5;
      const Curv4Tensor t = kulkarni_nomizu(random_sym(rng, d), random_sym(rng, d));
      CHECK(t.symmetry_residual() < 1e-14);
    }
  }

  TEST_CASE("relative_error uses the floor") {
    const SymForm a = SymForm::identity(2) * 1e-3;
    CHECK(relative_error(a, SymForm::zero(2)) == doctest::Approx(std::sqrt(2.0) * 1e-3));
    CHECK(relative_error(a * 2.0, a, 1e-12) == doctest::Approx(1.0));
  }
}

TEST_SUITE("jet") {
  TEST_CASE("Jet2 chain rule against closed forms") {
    // f(x, y) = exp(x) sin(y) / (1 + x^2) + sqrt(y) log(x) + pow(x y, 1.5)
    const double x0 = 0.7, y0 = 1.3;
    const Jet2 x = Jet2::variable(2, 0, x0), y = Jet2::variable(2, 1, y0);
    const Jet2 f = exp(x) * sin(y) / (1.0 + x * x) + sqrt(y) * log(x) + pow(x * y, 1.5);

    auto value = [](double a, double b) {
      return std::exp(a) * std::sin(b) / (1 + a * a) + std::sqrt(b) * std::log(a) + std::pow(a * b, 1.5);
    };
    CHECK(f.value() == doctest::Approx(value(x0, y0)).epsilon(1e-14));
    const double h = 1e-4;
    const double fx = (value(x0 + h, y0) - value(x0 - h, y0)) / (2 * h);
    const double fy = (value(x0, y0 + h) - value(x0, y0 - h)) / (2 * h);
    const double fxx = (value(x0 + h, y0) - 2 * value(x0, y0) + value(x0 - h, y0)) / (h * h);
    const double fyy = (value(x0, y0 + h) - 2 * value(x0, y0) + value(x0, y0 - h)) / (h * h);
    const double fxy =
        (value(x0 + h, y0 + h) - value(x0 + h, y0 - h) - value(x0 - h, y0 + h) + value(x0 - h, y0 - h)) / (4 * h * h);
    CHECK(f.d(0) == doctest::Approx(fx).epsilon(1e-7));
    CHECK(f.d(1) == doctest::Approx(fy).epsilon(1e-7));
    CHECK(f.dd(0, 0) == doctest::Approx(fxx).epsilon(1e-5));
    CHECK(f.dd(1, 1) == doctest::Approx(fyy).epsilon(1e-5));
    CHECK(f.dd(0, 1) == doctest::Approx(fxy).epsilon(1e-5));
    CHECK(f.dd(1, 0) == f.dd(0, 1));
  }

  TEST_CASE("Jet2 constants mix with variables") {
    const Jet2 c(3.0);
    const Jet2 x = Jet2::variable(3, 2, 2.0);
    const Jet2 r = c * x * x - c;
    CHECK(r.value() == doctest::Approx(9.0));
    CHECK(r.d(2) == doctest::Approx(12.0));
    CHECK(r.d(0) == 0.0);
    CHECK(r.dd(2, 2) == doctest::Approx(6.0));
    CHECK(cos(Jet2::variable(1, 0, 0.0)).dd(0, 0) == doctest::Approx(-1.0));
  }
}
