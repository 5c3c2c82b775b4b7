#pragma once

// Pointwise multilinear algebra: symmetric bilinear forms, metric-relative
// eigenvalues, elementary symmetric polynomials and the Kulkarni-Nomizu
// product. Dimensions are small (n <= 6), so every matrix lives in
// fixed-capacity storage.

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

namespace curvcone {

inline constexpr int kMaxDim = 6;

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

/// Symmetric (0,2)-tensor value at a point, in chart components.
///
/// Construction symmetrizes the input. Inputs whose asymmetry exceeds
/// 1e-12 relative to their magnitude, or that contain non-finite entries,
/// are rejected with InvalidInput.
class SymForm {
 public:
  SymForm() = default;
  explicit SymForm(const Matrix& m);

  static SymForm zero(int n);
  static SymForm identity(int n);
  /// a (x) b + b (x) a scaled by 1/2, i.e. the symmetric product of two covectors.
  static SymForm sym_product(const Vector& a, const Vector& b);
  static SymForm outer(const Vector& a) { return sym_product(a, a); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  double frobenius_norm() const { return m_.norm(); }
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }
  double trace_with(const Matrix& inverse_metric) const;

  SymForm& operator+=(const SymForm& o);
  SymForm& operator-=(const SymForm& o);
  SymForm& operator*=(double s);

  friend SymForm operator+(SymForm a, const SymForm& b) { return a += b; }
  friend SymForm operator-(SymForm a, const SymForm& b) { return a -= b; }
  friend SymForm operator-(SymForm a) { return a *= -1.0; }
  friend SymForm operator*(SymForm a, double s) { return a *= s; }
  friend SymForm operator*(double s, SymForm a) { return a *= s; }

 private:
  struct Trusted {};
  SymForm(const Matrix& m, Trusted) : m_(m) {}

  Matrix m_;
};

/// Relative Frobenius distance ||a - b|| / max(||b||, floor).
double relative_error(const SymForm& a, const SymForm& b, double floor = 1.0);

/// Positive-definite metric value. Construction performs the Cholesky
/// factorization; failure raises MetricNotSPD.
class MetricValue {
 public:
  explicit MetricValue(const SymForm& g);

  int dim() const { return form_.dim(); }
  const SymForm& form() const { return form_; }
  const Matrix& matrix() const { return form_.matrix(); }
  /// Lower Cholesky factor L with g = L L^T.
  const Matrix& cholesky_factor() const { return chol_; }
  const Matrix& inverse() const { return inverse_; }

  double inner(const Vector& x, const Vector& y) const { return x.dot(form_.matrix() * y); }
  /// |p|^2 for a covector p, i.e. g^{ij} p_i p_j.
  double covector_norm2(const Vector& p) const { return p.dot(inverse_ * p); }

 private:
  SymForm form_;
  Matrix chol_;
  Matrix inverse_;
};

/// Generalized eigenvalues, sorted non-decreasing.
class EigenList {
 public:
  EigenList() = default;
  explicit EigenList(std::vector<double> values);

  int dim() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct EigenSystem {
  EigenList values;
  /// Columns are eigenvectors, orthonormal with respect to g.
  Matrix vectors;
};

/// Roots of det(A - lambda g) = 0 via whitening by the Cholesky factor of g.
EigenList generalized_eigenvalues(const SymForm& a, const MetricValue& g);
EigenSystem generalized_eigensystem(const SymForm& a, const MetricValue& g);

/// Fully covariant 4-tensor R_{ijkl}, dense n^4 storage.
class Curv4Tensor {
 public:
  Curv4Tensor() = default;
  explicit Curv4Tensor(int n) : n_(n) {}

  int dim() const { return n_; }
  double& operator()(int i, int j, int k, int l) { return r_[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return r_[index(i, j, k, l)]; }

  double norm() const;
  /// Largest violation of antisymmetry, pair symmetry and the first Bianchi identity.
  double symmetry_residual() const;

  Curv4Tensor& operator-=(const Curv4Tensor& o);
  Curv4Tensor& operator+=(const Curv4Tensor& o);
  friend Curv4Tensor operator-(Curv4Tensor a, const Curv4Tensor& b) { return a -= b; }
  friend Curv4Tensor operator+(Curv4Tensor a, const Curv4Tensor& b) { return a += b; }

 private:
  static int index(int i, int j, int k, int l) {
    return ((i * kMaxDim + j) * kMaxDim + k) * kMaxDim + l;
  }

  alignas(16) std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> r_{};
  int n_ = 0;
};

/// (A o B)_{ijkl} = A_ik B_jl + A_jl B_ik - A_il B_jk - A_jk B_il
Curv4Tensor kulkarni_nomizu(const SymForm& a, const SymForm& b);

/// k-th elementary symmetric polynomial, 1 <= k <= size.
double sigma_k(std::span<const double> lambda, int k);
inline double sigma_k(const EigenList& lambda, int k) { return sigma_k(lambda.values(), k); }

}  // namespace curvcone
