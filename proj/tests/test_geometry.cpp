#include "curvcone/catalog.hpp"
#include "curvcone/error.hpp"
#include "curvcone/geometry.hpp"
#include "curvcone/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace curvcone;

namespace {

const DerivativeProvider kTaylor = DerivativeProvider::taylor();
const DerivativeProvider kFd4 = DerivativeProvider::finite_difference(4, 1e-3);

ChartMetric polar_chart() {
  return ChartMetric("polar", 2, {0.5, 0.0}, {2.0, 1.0}, std::vector<bool>(4, false), [](auto x) {
    using T = scalar_of<decltype(x)>;
    SymComponents<T> g(2);
    g.set(0, 0, T(1.0));
    g.set(1, 1, x[0] * x[0]);
    return g;
  });
}

oracle::MetricFn doubles(const ChartMetric& chart) {
  return [&chart](const oracle::Point& x) {
    const auto c = chart.metric()(std::span<const double>(x));
    std::vector<std::vector<double>> g(x.size(), std::vector<double>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) g[i][j] = c(static_cast<int>(i), static_cast<int>(j));
    return g;
  };
}

std::vector<ChartMetric> catalog(int n) {
  return {euclidean_box(n), flat_shell(n), sphere_band(n), poincare_shell(n), perturbed_flat(n)};
}

std::vector<double> point_in(const ChartMetric& chart, Rng& rng) {
  const Grid g = sample_points(chart, 1, rng, 0.0);
  return {g.point(0).begin(), g.point(0).end()};
}

double tensor_rel(const Curv4Tensor& a, const Curv4Tensor& b) { return (a - b).norm() / std::max(b.norm(), 1.0); }

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("Euclidean metric has no curvature") {
    for (int n = 2; n <= 6; ++n) {
      const auto chart = euclidean_box(n);
      const std::vector<double> x(static_cast<std::size_t>(n), 0.3);
      for (const auto& p : {kTaylor, kFd4}) {
        const auto geom = LocalGeometry::at(chart, p, x);
        CHECK(geom.riemann().norm() == doctest::Approx(0.0));
        CHECK(geom.ricci().max_abs() == doctest::Approx(0.0));
        CHECK(geom.scalar_curvature() == doctest::Approx(0.0));
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(geom.christoffel()(k, i, j) == 0.0);
      }
    }
  }

  TEST_CASE("polar chart Christoffel symbols and Hessian") {
    const auto chart = polar_chart();
    for (double r : {0.6, 1.0, 1.7}) {
      const std::vector<double> x = {r, 0.4};
      oracle::FdCurvature fd(doubles(chart), 2);
      const auto ref = fd.christoffel(x);  // index (k*2+i)*2+j
      for (const auto& p : {kTaylor, kFd4}) {
        const auto gamma = christoffel(chart, p, x);
        CHECK(gamma(0, 1, 1) == doctest::Approx(-r).epsilon(1e-9));
        CHECK(gamma(1, 0, 1) == doctest::Approx(1.0 / r).epsilon(1e-9));
        for (int k = 0; k < 2; ++k)
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              CHECK(gamma(k, i, j) == doctest::Approx(ref[static_cast<std::size_t>((k * 2 + i) * 2 + j)]).epsilon(1e-6).scale(1.0));
        ScalarField f = [](auto y) { return y[0]; };
        CHECK(hessian_of_scalar(chart, p, x, f)(1, 1) == doctest::Approx(r).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("conformally flat Christoffel closed form") {
    for (int n : {3, 4}) {
      ScalarField u = [](auto x) { return squared_norm(x); };
      const auto chart = conformal_metric(euclidean_box(n), u);
      Rng rng(n);
      for (int trial = 0; trial < 5; ++trial) {
        const auto x = point_in(chart, rng);
        std::vector<double> du(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) du[i] = 2.0 * x[i];
        for (const auto& p : {kTaylor, kFd4}) {
          const auto gamma = christoffel(chart, p, x);
          for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) {
                const double expected = (k == i ? du[j] : 0.0) + (k == j ? du[i] : 0.0) - (i == j ? du[k] : 0.0);
                CHECK(gamma(k, i, j) == doctest::Approx(expected).epsilon(1e-8).scale(1.0));
              }
        }
      }
    }
  }

  TEST_CASE("stereographic sphere scalar curvature against an independent difference oracle") {
    const auto chart = sphere_band(3);
    const std::vector<double> x = {0.4, 0.5, -0.3};
    oracle::FdCurvature fd(doubles(chart), 3);
    CHECK(fd.scalar_curvature(x) == doctest::Approx(6.0).epsilon(1e-5));
    CHECK(scalar_curv(chart, kTaylor, x) == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(scalar_curv(chart, kFd4, x) == doctest::Approx(6.0).epsilon(1e-6));
  }

  TEST_CASE("space forms satisfy all curvature identities") {
    for (int n = 3; n <= 6; ++n)
      for (const auto& chart : {sphere_band(n), poincare_shell(n), flat_shell(n)}) {
        const double c = *space_form_curvature(chart.name());
        Rng rng(static_cast<std::uint64_t>(n * 10));
        for (int trial = 0; trial < 4; ++trial) {
          const auto x = point_in(chart, rng);
          const auto geom = LocalGeometry::at(chart, kTaylor, x);
          const SymForm& g = geom.metric().form();
          CHECK(relative_error(geom.ricci(), g * ((n - 1) * c)) <= 1e-8);
          CHECK(geom.scalar_curvature() == doctest::Approx(n * (n - 1) * c).epsilon(1e-8).scale(1.0));
          CHECK(relative_error(geom.schouten(), g * (c / 2)) <= 1e-8);
          CHECK(relative_error(geom.einstein(), g * (-(n - 1) * (n - 2) * c / 2)) <= 1e-8);
          CHECK(tensor_rel(geom.riemann(), kulkarni_nomizu(g * (c / 2), g)) <= 1e-8);
          Vector a(n), b(n);
          for (int i = 0; i < n; ++i) {
            a(i) = rng.normal();
            b(i) = rng.normal();
          }
          CHECK(geom.sectional(a, b) == doctest::Approx(c).epsilon(1e-8).scale(1.0));
        }
      }
    const std::vector<double> x3 = {0.3, 0.1, -0.2};
    CHECK(relative_error(einstein(poincare_shell(3), kTaylor, x3), LocalGeometry::at(poincare_shell(3), kTaylor, x3).metric().form()) <= 1e-8);
    const std::vector<double> y3 = {0.5, 0.6, -0.2};
    CHECK(relative_error(einstein(sphere_band(3), kTaylor, y3), -LocalGeometry::at(sphere_band(3), kTaylor, y3).metric().form()) <= 1e-8);
  }

  TEST_CASE("providers agree and Riemann symmetries hold on every catalog metric") {
    for (int n = 3; n <= 5; ++n)
      for (const auto& chart : catalog(n)) {
        Rng rng(static_cast<std::uint64_t>(100 + n));
        for (int trial = 0; trial < 4; ++trial) {
          const auto x = point_in(chart, rng);
          const auto rt = riemann(chart, kTaylor, x);
          const auto rf = riemann(chart, kFd4, x);
          CHECK(tensor_rel(rf, rt) <= 1e-4);
          CHECK(rt.symmetry_residual() <= 1e-9 * (rt.norm() + 1.0));
        }
      }
  }

  TEST_CASE("providers agree tightly on a polynomial metric") {
    const int n = 3;
    const ChartMetric chart("poly", n, {0, 0, 0}, {1, 1, 1}, std::vector<bool>(6, true), [](auto x) {
      using T = scalar_of<decltype(x)>;
      SymComponents<T> g(3);
      g.set(0, 0, 1.0 + 0.2 * x[1] * x[1]);
      g.set(1, 1, 1.0 + 0.1 * x[0] * x[2]);
      g.set(2, 2, T(2.0) + 0.3 * x[0]);
      g.set(0, 1, 0.1 * x[2]);
      return g;
    });
    // the face stencils are one-sided; include a corner
    for (const std::vector<double>& x : {std::vector<double>{0.3, 0.6, 0.2}, std::vector<double>{0.0, 1.0, 0.0}}) {
      CHECK(tensor_rel(riemann(chart, kFd4, x), riemann(chart, kTaylor, x)) <= 1e-8);
    }
  }

  TEST_CASE("modified Schouten special cases") {
    const auto chart = perturbed_flat(4);
    const std::vector<double> x = {0.2, 0.4, 0.6, 0.8};
    const auto geom = LocalGeometry::at(chart, kTaylor, x);
    CHECK(relative_error(geom.modified_schouten(1.0, 1.0), geom.schouten(), 1e-12) <= 1e-14);
    CHECK(relative_error(geom.modified_schouten(3.0, 1.0), geom.einstein() * 0.5, 1e-12) <= 1e-12);
    CHECK(geom.modified_schouten(2.0, 0.0).max_abs() == 0.0);
    CHECK_THROWS_AS(LocalGeometry::at(polar_chart(), kTaylor, std::vector<double>{1.0, 0.1}).schouten(), Error);
  }

  TEST_CASE("Bakry-Emery tensor") {
    const int n = 3;
    const auto flat = euclidean_box(n);
    const std::vector<double> x = {0.2, 0.5, 0.7};
    ScalarField half_r2 = [](auto y) { return 0.5 * squared_norm(y); };
    const SymForm be = bakry_emery(flat, kTaylor, x, half_r2, n + 1.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(be(i, j) == doctest::Approx((i == j ? 1.0 : 0.0) - x[i] * x[j]));

    const auto chart = sphere_band(n);
    const std::vector<double> y = {0.6, 0.3, 0.4};
    ScalarField constant = [](auto) { return 2.5; };
    CHECK(relative_error(bakry_emery(chart, kTaylor, y, constant, 5.0), ricci(chart, kTaylor, y)) <= 1e-14);

    ScalarField phi = [](auto z) {
      using std::sin;
      return sin(z[0]) + z[1] * z[2];
    };
    const SymForm limit = ricci(chart, kTaylor, y) + hessian_of_scalar(chart, kTaylor, y, phi);
    CHECK(relative_error(bakry_emery(chart, kTaylor, y, phi, 1e9), limit) <= 1e-8);
    CHECK(relative_error(bakry_emery(chart, kTaylor, y, phi, 1e6), limit) <= 1e-5);
    CHECK_THROWS_AS(bakry_emery(chart, kTaylor, y, phi, 3.0), Error);
  }

  TEST_CASE("flat Hessian and Laplacian") {
    const auto chart = euclidean_box(4);
    const std::vector<double> x = {0.1, 0.2, 0.3, 0.4};
    ScalarField lin = [](auto y) { return 2.0 * y[0] - y[3]; };
    ScalarField q = [](auto y) { return 0.5 * squared_norm(y); };
    CHECK(hessian_of_scalar(chart, kTaylor, x, lin).max_abs() == 0.0);
    CHECK(relative_error(hessian_of_scalar(chart, kTaylor, x, q), SymForm::identity(4)) <= 1e-14);
    CHECK(laplacian(chart, kTaylor, x, q) == doctest::Approx(4.0));
  }

  TEST_CASE("Weyl residual") {
    Rng rng(41);
    // dimension three: always zero
    const auto p3 = perturbed_flat(3, 0.05, 3);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = point_in(p3, rng);
      const auto geom = LocalGeometry::at(p3, kTaylor, x);
      CHECK(weyl_residual(geom) < 1e-6);
      CHECK(tensor_rel(geom.riemann(), kulkarni_nomizu(geom.schouten(), geom.metric().form())) <= 1e-6);
    }
    ScalarField u = [](auto y) {
      using std::sin;
      return 0.3 * sin(y[0] + 2.0 * y[1]) + 0.1 * squared_norm(y);
    };
    for (int n = 4; n <= 6; ++n) {
      const auto lcf = conformal_metric(euclidean_box(n), u);
      CHECK(weyl_residual(LocalGeometry::at(lcf, kTaylor, point_in(lcf, rng))) < 1e-6);
    }
    const auto p4 = perturbed_flat(4);
    CHECK(weyl_residual(LocalGeometry::at(p4, kTaylor, std::vector<double>{0.3, 0.3, 0.6, 0.2})) > 1e-3);
  }

  TEST_CASE("sectional curvature edge cases") {
    const auto chart = sphere_band(3);
    const std::vector<double> x = {0.5, 0.5, 0.5};
    Vector a(3), b(3);
    a << 1, 2, 3;
    b << 2, 4, 6;
    CHECK_THROWS_AS(sectional(chart, kTaylor, x, a, b), Error);
    CHECK_THROWS_AS(sectional(chart, kTaylor, x, a, Vector::Zero(3)), Error);
    b << 0, 1, -1;
    CHECK(sectional(euclidean_box(3), kTaylor, x, a, b) == doctest::Approx(0.0));
  }

  TEST_CASE("conformal change of the flat ball gives the hyperbolic metric") {
    const int n = 3;
    ScalarField u = [](auto y) {
      using std::log;
      return log(2.0 / (1.0 - squared_norm(y)));
    };
    const ChartMetric flat("ball", n, {-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}, std::vector<bool>(6, true),
                           [](auto y) { return SymComponents<scalar_of<decltype(y)>>::scaled_identity(3, 1.0); });
    const auto hyper = conformal_metric(flat, u);
    Rng rng(43);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = point_in(hyper, rng);
      Vector a(3), b(3);
      for (int i = 0; i < 3; ++i) {
        a(i) = rng.normal();
        b(i) = rng.normal();
      }
      CHECK(sectional(hyper, kTaylor, x, a, b) == doctest::Approx(-1.0).epsilon(1e-9));
    }
    ScalarField zero;
    const auto same = conformal_metric(flat, zero);
    const std::vector<double> x = {0.1, 0.2, 0.3};
    CHECK(same.metric()(x)(1, 1) == 1.0);
  }

  TEST_CASE("metric evaluation rejects non-SPD values") {
    const ChartMetric bad("bad", 2, {0, 0}, {1, 1}, std::vector<bool>(4, true), [](auto x) {
      using T = scalar_of<decltype(x)>;
      SymComponents<T> g(2);
      g.set(0, 0, T(1.0));
      g.set(1, 1, x[0] - 0.5);
      return g;
    });
    CHECK_THROWS_AS(LocalGeometry::at(bad, kTaylor, std::vector<double>{0.1, 0.1}), Error);
  }
}

TEST_SUITE("catalog") {
  TEST_CASE("grids include boundary points and respect the domain") {
    for (int n = 3; n <= 5; ++n) {
      for (const auto& chart : catalog(n)) {
        const Grid grid = make_grid(chart, 5);
        CHECK(grid.size() > 0);
        CHECK(grid.boundary_count() > 0);
        for (std::size_t i = 0; i < grid.size(); ++i) CHECK(chart.in_domain(grid.point(i)));
      }
    }
    const auto shell = flat_shell(3);
    const Grid grid = make_grid(shell, 9);
    std::size_t inner = 0, outer = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!grid.on_boundary(i)) continue;
      double r2 = 0;
      for (double c : grid.point(i)) r2 += c * c;
      if (std::abs(std::sqrt(r2) - 1.0) < 1e-12) ++inner;
      if (std::abs(std::sqrt(r2) - 2.0) < 1e-12) ++outer;
    }
    CHECK(inner > 0);
    CHECK(outer > 0);
    CHECK(inner + outer == grid.boundary_count());
  }

  TEST_CASE("sampling is seeded") {
    const auto chart = poincare_shell(4);
    Rng a(5), b(5);
    const Grid ga = sample_points(chart, 30, a), gb = sample_points(chart, 30, b);
    for (std::size_t i = 0; i < ga.size(); ++i)
      for (int c = 0; c < 4; ++c) CHECK(ga.point(i)[static_cast<std::size_t>(c)] == gb.point(i)[static_cast<std::size_t>(c)]);
    CHECK(ga.boundary_count() == 6);
  }

  TEST_CASE("catalog validation") {
    CHECK_THROWS_AS(make_chart(ManifoldSpec{"torus", 3}), Error);
    CHECK_THROWS_AS(poincare_shell(3, 0.5, 1.0), Error);
    CHECK_THROWS_AS(flat_shell(3, 2.0, 1.0), Error);
    CHECK_THROWS_AS(perturbed_flat(3, 0.1), Error);
    CHECK(make_chart(ManifoldSpec{"sphere_band", 4}).name() == "sphere_band");
  }
}
