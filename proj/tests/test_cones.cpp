#include "curvcone/cones.hpp"
#include "curvcone/error.hpp"
#include "curvcone/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace curvcone;

namespace {

bool brute_contains(const ConeSpec& cone, const std::vector<double>& l) {
  switch (cone.family()) {
    case ConeFamily::GammaK:
      for (int j = 1; j <= cone.k(); ++j)
        if (!(oracle::sigma_k(l, j) > 0.0)) return false;
      return true;
    case ConeFamily::PK: return oracle::min_k_sum(l, cone.k()) > 0.0;
    case ConeFamily::HalfSpaceSum: return oracle::sigma_k(l, 1) > 0.0;
  }
  return false;
}

std::vector<ConeSpec> all_cones(int n) {
  std::vector<ConeSpec> out = {ConeSpec::half_space_sum(n)};
  for (int k = 1; k <= n; ++k) {
    out.push_back(ConeSpec::gamma_k(n, k));
    out.push_back(ConeSpec::p_k(n, k));
  }
  return out;
}

// Draws points near the cone so that both outcomes are frequent.
std::vector<double> draw(Rng& rng, int n) {
  std::vector<double> l(static_cast<std::size_t>(n));
  for (double& x : l) x = rng.uniform(-1.0, 2.0);
  return l;
}

}  // namespace

TEST_SUITE("cones") {
  TEST_CASE("membership examples") {
    CHECK(contains(ConeSpec::positive_orthant(3), std::vector<double>{1, 1, 1}));
    CHECK(contains(ConeSpec::p_k(3, 2), std::vector<double>{-0.5, 1, 1}));
    CHECK_FALSE(contains(ConeSpec::gamma_k(3, 2), std::vector<double>{2, 2, -1}));
    CHECK_THROWS_AS(contains(ConeSpec::gamma_k(3, 2), std::vector<double>{1, 1}), Error);
    CHECK_THROWS_AS(ConeSpec::gamma_k(3, 4), Error);
  }

  TEST_CASE("margin examples") {
    CHECK(margin(ConeSpec::positive_orthant(4), std::vector<double>{1, 1, 1, 1}) == doctest::Approx(1.0));
    CHECK(std::abs(margin(ConeSpec::gamma_k(3, 2), std::vector<double>{2, 2, -1})) <= 1e-15);
    CHECK(margin(ConeSpec::p_k(3, 2), std::vector<double>{0, 0, 0}) == 0.0);
  }

  TEST_CASE("rho values") {
    for (int n = 1; n <= 6; ++n) {
      for (int k = 1; k <= n; ++k) CHECK(rho(ConeSpec::gamma_k(n, k)) == doctest::Approx(double(n) / k).epsilon(1e-10));
      CHECK(rho(ConeSpec::half_space_sum(n)) == doctest::Approx(n).epsilon(1e-10));
    }
    for (int n = 2; n <= 6; ++n) CHECK(rho(ConeSpec::p_k(n, 2)) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(rho(ConeSpec::gamma_k(4, 2)) == doctest::Approx(1.0 + (4.0 - 2.0) / 2.0));
  }

  TEST_CASE("contains and margin agree with brute force") {
    Rng rng(17);
    for (int n = 1; n <= 6; ++n)
      for (const auto& cone : all_cones(n))
        for (int trial = 0; trial < 200; ++trial) {
          const auto l = draw(rng, n);
          const bool in = brute_contains(cone, l);
          CHECK(contains(cone, l) == in);
          const double m = margin(cone, l);
          CHECK((m > 0.0) == in);
        }
  }

  TEST_CASE("margin is scale invariant") {
    Rng rng(19);
    for (int n = 2; n <= 6; ++n)
      for (const auto& cone : all_cones(n))
        for (int trial = 0; trial < 50; ++trial) {
          auto l = draw(rng, n);
          const double t = rng.uniform(1e-3, 1e3);
          std::vector<double> s(l);
          for (double& x : s) x *= t;
          CHECK(margin(cone, s) == doctest::Approx(margin(cone, l)).epsilon(1e-12).scale(1.0));
        }
  }

  TEST_CASE("cones are convex and contain the orthant") {
    Rng rng(23);
    for (int n = 2; n <= 6; ++n)
      for (const auto& cone : all_cones(n)) {
        int pairs = 0;
        while (pairs < 1000) {
          const auto a = draw(rng, n), b = draw(rng, n);
          if (!contains(cone, a) || !contains(cone, b)) continue;
          std::vector<double> mid(a.size());
          for (std::size_t i = 0; i < a.size(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
          CHECK(contains(cone, mid));
          ++pairs;
        }
        std::vector<double> pos(static_cast<std::size_t>(n));
        for (double& x : pos) x = rng.uniform(1e-3, 1.0);
        CHECK(contains(cone, pos));
      }
  }

  TEST_CASE("permutation invariance") {
    Rng rng(29);
    for (int n = 2; n <= 5; ++n)
      for (const auto& cone : all_cones(n))
        for (int trial = 0; trial < 10; ++trial) {
          auto l = draw(rng, n);
          std::sort(l.begin(), l.end());
          const bool in = contains(cone, l);
          const double m = margin(cone, l);
          do {
            CHECK(contains(cone, l) == in);
            CHECK(margin(cone, l) == doctest::Approx(m).epsilon(1e-12).scale(1.0));
          } while (std::next_permutation(l.begin(), l.end()));
        }
  }

  TEST_CASE("gamma cones are nested") {
    Rng rng(31);
    for (int n = 2; n <= 6; ++n)
      for (int trial = 0; trial < 300; ++trial) {
        const auto l = draw(rng, n);
        for (int k = 2; k <= n; ++k)
          if (contains(ConeSpec::gamma_k(n, k), l)) CHECK(contains(ConeSpec::gamma_k(n, k - 1), l));
      }
  }
}
