#include "curvcone/cones.hpp"

#include "curvcone/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace curvcone {

namespace {

void check_dims(const ConeSpec& cone, std::span<const double> lambda) {
  if (static_cast<int>(lambda.size()) != cone.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "cone " + cone.name() + " got a vector of size " +
                                                  std::to_string(lambda.size()));
  }
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double sum_of_k_smallest(std::span<const double> lambda, int k) {
  std::array<double, kMaxDim> buf{};
  std::vector<double> big;
  double* first = buf.data();
  if (lambda.size() > buf.size()) {
    big.assign(lambda.begin(), lambda.end());
    first = big.data();
  } else {
    std::copy(lambda.begin(), lambda.end(), buf.begin());
  }
  double* last = first + lambda.size();
  std::partial_sort(first, first + k, last);
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += first[i];
  return s;
}

// sigma_1..sigma_k of lambda in one pass.
template <class Out>
void elementary_prefix(std::span<const double> lambda, int k, Out& e) {
  e[0] = 1.0;
  for (int j = 1; j <= k; ++j) e[j] = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    for (int j = std::min(static_cast<int>(i) + 1, k); j >= 1; --j) e[j] += lambda[i] * e[j - 1];
  }
}

}  // namespace

ConeSpec ConeSpec::gamma_k(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw Error(ErrorCode::InvalidInput, "GammaK needs 1 <= k <= n");
  return ConeSpec(ConeFamily::GammaK, n, k);
}

ConeSpec ConeSpec::p_k(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw Error(ErrorCode::InvalidInput, "PK needs 1 <= k <= n");
  return ConeSpec(ConeFamily::PK, n, k);
}

ConeSpec ConeSpec::half_space_sum(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "HalfSpaceSum needs n >= 1");
  return ConeSpec(ConeFamily::HalfSpaceSum, n, 1);
}

std::string ConeSpec::name() const {
  switch (family_) {
    case ConeFamily::GammaK: return "GammaK(" + std::to_string(k_) + ")";
    case ConeFamily::PK: return "PK(" + std::to_string(k_) + ")";
    case ConeFamily::HalfSpaceSum: return "HalfSpaceSum";
  }
  return "?";
}

bool contains(const ConeSpec& cone, std::span<const double> lambda) {
  check_dims(cone, lambda);
  switch (cone.family()) {
    case ConeFamily::GammaK: {
      std::vector<double> e(static_cast<std::size_t>(cone.k()) + 1);
      elementary_prefix(lambda, cone.k(), e);
      for (int j = 1; j <= cone.k(); ++j)
        if (!(e[static_cast<std::size_t>(j)] > 0.0)) return false;
      return true;
    }
    case ConeFamily::PK:
      return sum_of_k_smallest(lambda, cone.k()) > 0.0;
    case ConeFamily::HalfSpaceSum: {
      double s = 0.0;
      for (double x : lambda) s += x;
      return s > 0.0;
    }
  }
  return false;
}

double margin(const ConeSpec& cone, std::span<const double> lambda) {
  check_dims(cone, lambda);
  double scale = 0.0;
  for (double x : lambda) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;

  std::vector<double> unit(lambda.begin(), lambda.end());
  for (double& x : unit) x /= scale;

  switch (cone.family()) {
    case ConeFamily::GammaK: {
      std::vector<double> e(static_cast<std::size_t>(cone.k()) + 1);
      elementary_prefix(unit, cone.k(), e);
      double m = e[1] / binomial(cone.dim(), 1);
      for (int j = 2; j <= cone.k(); ++j) m = std::min(m, e[static_cast<std::size_t>(j)] / binomial(cone.dim(), j));
      return m;
    }
    case ConeFamily::PK:
      return sum_of_k_smallest(unit, cone.k());
    case ConeFamily::HalfSpaceSum: {
      double s = 0.0;
      for (double x : unit) s += x;
      return s / cone.dim();
    }
  }
  return 0.0;
}

double rho(const ConeSpec& cone) {
  const int n = cone.dim();
  std::vector<double> ray(static_cast<std::size_t>(n), 1.0);
  auto inside = [&](double t) {
    ray.back() = 1.0 - t;
    return contains(cone, ray);
  };

  double lo = 0.0;
  double hi = 4.0 * n;
  if (!inside(lo)) throw Error(ErrorCode::InternalInconsistency, cone.name() + " misses (1,...,1)");
  if (inside(hi)) throw Error(ErrorCode::NoBoundaryFound, cone.name() + " ray stays inside up to t=" + std::to_string(hi));
  // The cone is convex and contains t = 0, so the ray crosses its boundary once.
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace curvcone
