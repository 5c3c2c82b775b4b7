#include "curvcone/lintensor.hpp"

#include "curvcone/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvcone {

namespace {

constexpr double kAsymmetryTolerance = 1e-12;

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

SymForm::SymForm(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > kMaxDim) {
    throw Error(ErrorCode::InvalidInput, "SymForm needs a square matrix of size 1..6");
  }
  if (!m.allFinite()) throw Error(ErrorCode::InvalidInput, "SymForm entry is not finite");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kAsymmetryTolerance * std::max(scale, 1e-300)) {
    throw Error(ErrorCode::InvalidInput, "SymForm asymmetry " + std::to_string(asym));
  }
  m_ = 0.5 * (m + m.transpose());
}

SymForm SymForm::zero(int n) { return SymForm(Matrix::Zero(n, n), Trusted{}); }
SymForm SymForm::identity(int n) { return SymForm(Matrix::Identity(n, n), Trusted{}); }

SymForm SymForm::sym_product(const Vector& a, const Vector& b) {
  require_same_dim(static_cast<int>(a.size()), static_cast<int>(b.size()), "sym_product");
  Matrix m = 0.5 * (a * b.transpose() + b * a.transpose());
  return SymForm(m, Trusted{});
}

double SymForm::trace_with(const Matrix& inverse_metric) const {
  return (inverse_metric.cwiseProduct(m_)).sum();
}

SymForm& SymForm::operator+=(const SymForm& o) {
  require_same_dim(dim(), o.dim(), "SymForm +");
  m_ += o.m_;
  return *this;
}

SymForm& SymForm::operator-=(const SymForm& o) {
  require_same_dim(dim(), o.dim(), "SymForm -");
  m_ -= o.m_;
  return *this;
}

SymForm& SymForm::operator*=(double s) {
  m_ *= s;
  return *this;
}

double relative_error(const SymForm& a, const SymForm& b, double floor) {
  return (a.matrix() - b.matrix()).norm() / std::max(b.frobenius_norm(), floor);
}

MetricValue::MetricValue(const SymForm& g) : form_(g) {
  Eigen::LLT<Matrix> llt(g.matrix());
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::MetricNotSPD, "Cholesky factorization failed");
  chol_ = llt.matrixL();
  if ((chol_.diagonal().array() <= 0.0).any()) {
    throw Error(ErrorCode::MetricNotSPD, "non-positive pivot");
  }
  inverse_ = llt.solve(Matrix::Identity(g.dim(), g.dim()));
  inverse_ = 0.5 * (inverse_ + inverse_.transpose()).eval();
}

EigenList::EigenList(std::vector<double> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
}

EigenSystem generalized_eigensystem(const SymForm& a, const MetricValue& g) {
  require_same_dim(a.dim(), g.dim(), "generalized_eigenvalues");
  // L^{-1} A L^{-T} shares the eigenvalues of g^{-1} A.
  const auto lower = g.cholesky_factor().triangularView<Eigen::Lower>();
  Matrix whitened = lower.solve(a.matrix());
  whitened = lower.solve(whitened.transpose()).transpose();
  whitened = 0.5 * (whitened + whitened.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(whitened);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidInput, "eigen solve failed");

  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  // SelfAdjointEigenSolver already sorts ascending; vectors map back via L^{-T}.
  Matrix vectors = g.cholesky_factor().transpose().triangularView<Eigen::Upper>().solve(solver.eigenvectors());
  return EigenSystem{EigenList(std::move(values)), vectors};
}

EigenList generalized_eigenvalues(const SymForm& a, const MetricValue& g) {
  require_same_dim(a.dim(), g.dim(), "generalized_eigenvalues");
  const auto lower = g.cholesky_factor().triangularView<Eigen::Lower>();
  Matrix whitened = lower.solve(a.matrix());
  whitened = lower.solve(whitened.transpose()).transpose();
  whitened = 0.5 * (whitened + whitened.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(whitened, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidInput, "eigen solve failed");
  return EigenList(std::vector<double>(solver.eigenvalues().data(),
                                       solver.eigenvalues().data() + solver.eigenvalues().size()));
}

double Curv4Tensor::norm() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) s += (*this)(i, j, k, l) * (*this)(i, j, k, l);
  return std::sqrt(s);
}

double Curv4Tensor::symmetry_residual() const {
  double worst = 0.0;
  const auto& r = *this;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          worst = std::max(worst, std::abs(r(i, j, k, l) + r(j, i, k, l)));
          worst = std::max(worst, std::abs(r(i, j, k, l) + r(i, j, l, k)));
          worst = std::max(worst, std::abs(r(i, j, k, l) - r(k, l, i, j)));
          worst = std::max(worst, std::abs(r(i, j, k, l) + r(i, k, l, j) + r(i, l, j, k)));
        }
  return worst;
}

Curv4Tensor& Curv4Tensor::operator-=(const Curv4Tensor& o) {
  require_same_dim(n_, o.n_, "Curv4Tensor -");
  for (std::size_t i = 0; i < r_.size(); ++i) r_[i] -= o.r_[i];
  return *this;
}

Curv4Tensor& Curv4Tensor::operator+=(const Curv4Tensor& o) {
  require_same_dim(n_, o.n_, "Curv4Tensor +");
  for (std::size_t i = 0; i < r_.size(); ++i) r_[i] += o.r_[i];
  return *this;
}

Curv4Tensor kulkarni_nomizu(const SymForm& a, const SymForm& b) {
  require_same_dim(a.dim(), b.dim(), "kulkarni_nomizu");
  const int n = a.dim();
  Curv4Tensor out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = a(i, k) * b(j, l) + a(j, l) * b(i, k) - a(i, l) * b(j, k) - a(j, k) * b(i, l);
  return out;
}

double sigma_k(std::span<const double> lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  if (k < 1 || k > n) {
    throw Error(ErrorCode::InvalidInput, "sigma_k: k=" + std::to_string(k) + " outside [1," + std::to_string(n) + "]");
  }
  // e[j] holds sigma_j of the prefix processed so far.
  std::array<double, kMaxDim + 1> e{};
  std::vector<double> big;
  double* s = e.data();
  if (n > kMaxDim) {
    big.assign(static_cast<std::size_t>(n) + 1, 0.0);
    s = big.data();
  }
  s[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = std::min(i + 1, k); j >= 1; --j) s[j] += lambda[static_cast<std::size_t>(i)] * s[j - 1];
  }
  return s[k];
}

}  // namespace curvcone
