#pragma once

// Concrete open symmetric convex cones containing the positive orthant.
//
//   GammaK(k)    : sigma_1..sigma_k > 0          (GammaK(n) is the orthant)
//   PK(k)        : every sum of k distinct entries > 0
//   HalfSpaceSum : sum of entries > 0            (same set as GammaK(1))

#include "curvcone/lintensor.hpp"

#include <span>
#include <string>

namespace curvcone {

enum class ConeFamily { GammaK, PK, HalfSpaceSum };

/// Margins at or below this are treated as the cone boundary.
inline constexpr double kBoundaryMargin = 1e-12;

class ConeSpec {
 public:
  static ConeSpec gamma_k(int n, int k);
  static ConeSpec p_k(int n, int k);
  static ConeSpec half_space_sum(int n);
  static ConeSpec positive_orthant(int n) { return gamma_k(n, n); }

  ConeFamily family() const { return family_; }
  int k() const { return k_; }
  int dim() const { return n_; }
  std::string name() const;

  bool operator==(const ConeSpec&) const = default;

 private:
  ConeSpec(ConeFamily family, int n, int k) : family_(family), n_(n), k_(k) {}

  ConeFamily family_;
  int n_;
  int k_;
};

bool contains(const ConeSpec& cone, std::span<const double> lambda);
inline bool contains(const ConeSpec& cone, const EigenList& lambda) { return contains(cone, lambda.values()); }

/// Minimum normalized slack of the defining inequalities after scaling lambda
/// to unit max-norm. Positive exactly on the open cone; zero vector gives 0.
double margin(const ConeSpec& cone, std::span<const double> lambda);
inline double margin(const ConeSpec& cone, const EigenList& lambda) { return margin(cone, lambda.values()); }

/// The t > 0 with (1,...,1,1-t) on the cone boundary, by bisection.
double rho(const ConeSpec& cone);

}  // namespace curvcone
