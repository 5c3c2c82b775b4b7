#pragma once

// Test-side reference computations, written independently of the library
// code paths they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Mat3 = std::array<std::array<double, 3>, 3>;

inline double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline double char_poly(const Mat3& a, const Mat3& g, double lambda) {
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[i][j] - lambda * g[i][j];
  return det3(m);
}

/// Roots of det(A - lambda g) = 0 for symmetric A and SPD g. The cubic is
/// recovered by interpolation at lambda = 0, 1, -1, 2, solved with the
/// trigonometric formula, then polished by Newton steps on the determinant.
inline std::array<double, 3> generalized_eigenvalues(const Mat3& a, const Mat3& g) {
  const double p0 = char_poly(a, g, 0.0), p1 = char_poly(a, g, 1.0), pm = char_poly(a, g, -1.0),
               p2 = char_poly(a, g, 2.0);
  // p(l) = c3 l^3 + c2 l^2 + c1 l + c0
  const double c0 = p0;
  const double c2 = 0.5 * (p1 + pm) - c0;
  const double odd1 = 0.5 * (p1 - pm);  // c3 + c1
  const double c3 = (p2 - c0 - 4.0 * c2 - 2.0 * odd1) / 6.0;
  const double c1 = odd1 - c3;

  const double b = c2 / c3, c = c1 / c3, d = c0 / c3;
  const double q = (3.0 * c - b * b) / 9.0;
  const double r = (9.0 * b * c - 27.0 * d - 2.0 * b * b * b) / 54.0;
  std::array<double, 3> roots{};
  if (q >= 0.0) {
    roots.fill(-b / 3.0);
  } else {
    const double s = std::sqrt(-q);
    const double theta = std::acos(std::clamp(r / (s * s * s), -1.0, 1.0));
    for (int k = 0; k < 3; ++k)
      roots[k] = 2.0 * s * std::cos((theta + 2.0 * std::numbers::pi * k) / 3.0) - b / 3.0;
  }
  for (double& x : roots) {
    for (int it = 0; it < 8; ++it) {
      const double f = ((c3 * x + c2) * x + c1) * x + c0;
      const double df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
      if (df == 0.0) break;
      const double step = f / df;
      if (!std::isfinite(step) || std::abs(step) > 1e-3) break;  // near a double root Newton is unreliable
      x -= step;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// sigma_k by summing products over all k-subsets.
inline double sigma_k(const std::vector<double>& lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double prod = 1.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) prod *= lambda[static_cast<std::size_t>(i)];
    total += prod;
  }
  return total;
}

/// Smallest sum over k-subsets.
inline double min_k_sum(std::vector<double> lambda, int k) {
  std::sort(lambda.begin(), lambda.end());
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += lambda[static_cast<std::size_t>(i)];
  return s;
}

using Point = std::vector<double>;
using MetricFn = std::function<std::vector<std::vector<double>>(const Point&)>;

/// Curvature by nested central differences on a metric given in doubles:
/// Christoffel symbols from dg, then Ricci from dGamma + Gamma Gamma.
class FdCurvature {
 public:
  FdCurvature(MetricFn g, int n, double h = 1e-4) : g_(std::move(g)), n_(n), h_(h) {}

  // Gamma^k_ij at x.
  std::vector<double> christoffel(const Point& x) const {
    const int n = n_;
    std::vector<std::vector<std::vector<double>>> dg(n);  // dg[c][i][j] = d_c g_ij
    for (int c = 0; c < n; ++c) {
      Point xp = x, xm = x;
      xp[c] += h_;
      xm[c] -= h_;
      const auto gp = g_(xp), gm = g_(xm);
      dg[c].assign(n, std::vector<double>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dg[c][i][j] = (gp[i][j] - gm[i][j]) / (2.0 * h_);
    }
    const auto ginv = inverse(g_(x));
    std::vector<double> gamma(static_cast<std::size_t>(n * n * n), 0.0);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
          gamma[idx(k, i, j)] = 0.5 * s;
        }
    return gamma;
  }

  /// R^l_{ijk} = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik,
  /// so that R(d_i, d_j) d_k = R^l_{ijk} d_l.
  double scalar_curvature(const Point& x) const {
    const int n = n_;
    const double h = 10.0 * h_;
    std::vector<std::vector<double>> dgamma(n);
    for (int c = 0; c < n; ++c) {
      Point xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      const auto gp = christoffel(xp), gm = christoffel(xm);
      dgamma[c].resize(gp.size());
      for (std::size_t a = 0; a < gp.size(); ++a) dgamma[c][a] = (gp[a] - gm[a]) / (2.0 * h);
    }
    const auto gamma = christoffel(x);
    const auto ginv = inverse(g_(x));
    // Ric_jk = R^i_{ijk}
    double scalar = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double ric = 0.0;
        for (int i = 0; i < n; ++i) {
          double r = dgamma[i][idx(i, j, k)] - dgamma[j][idx(i, i, k)];
          for (int m = 0; m < n; ++m) r += gamma[idx(i, i, m)] * gamma[idx(m, j, k)] - gamma[idx(i, j, m)] * gamma[idx(m, i, k)];
          ric += r;
        }
        scalar += ginv[j][k] * ric;
      }
    return scalar;
  }

 private:
  std::size_t idx(int k, int i, int j) const { return static_cast<std::size_t>((k * n_ + i) * n_ + j); }

  static std::vector<std::vector<double>> inverse(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (int c = 0; c < n; ++c) {
      int p = c;
      for (int r = c + 1; r < n; ++r)
        if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
      std::swap(a[c], a[p]);
      std::swap(inv[c], inv[p]);
      const double d = a[c][c];
      for (int j = 0; j < n; ++j) {
        a[c][j] /= d;
        inv[c][j] /= d;
      }
      for (int r = 0; r < n; ++r) {
        if (r == c) continue;
        const double f = a[r][c];
        for (int j = 0; j < n; ++j) {
          a[r][j] -= f * a[c][j];
          inv[r][j] -= f * inv[c][j];
        }
      }
    }
    return inv;
  }

  MetricFn g_;
  int n_;
  double h_;
};

}  // namespace oracle
