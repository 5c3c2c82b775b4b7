#pragma once

// Chart-based curvature engine.
//
// Conventions (anchored on the unit round sphere, K = +1):
//   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   Riem_{ijkl} = g(R(d_i, d_j) d_l, d_k)
// so that Riem = A o g on conformally flat metrics with the Kulkarni-Nomizu
// product of lintensor.hpp, sectional curvature is
//   K(X,Y) = Riem(X,Y,X,Y) / (|X|^2 |Y|^2 - <X,Y>^2),
// and Ric_{jk} = g^{il} Riem_{ijlk}, which is (n-1) g on the unit sphere.

#include "curvcone/fields.hpp"
#include "curvcone/lintensor.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curvcone {

/// Spherical shell {inner <= |x| <= outer} cut out of the chart box.
struct Shell {
  double inner = 0.0;
  double outer = 0.0;
};

class ChartMetric {
 public:
  ChartMetric(std::string name, int dim, std::vector<double> lower, std::vector<double> upper,
              std::vector<bool> boundary_faces, MetricField metric, std::optional<Shell> shell = std::nullopt);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  /// Face 2i is x_i = lower_i, face 2i+1 is x_i = upper_i.
  const std::vector<bool>& boundary_faces() const { return boundary_faces_; }
  const std::optional<Shell>& shell() const { return shell_; }
  const MetricField& metric() const { return metric_; }

  bool in_box(std::span<const double> x, double tol = 1e-12) const;
  bool in_domain(std::span<const double> x, double tol = 1e-12) const;

 private:
  std::string name_;
  int dim_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<bool> boundary_faces_;
  MetricField metric_;
  std::optional<Shell> shell_;
};

struct DerivativeProvider {
  enum class Kind { ForwardTaylor, FiniteDifference };

  Kind kind = Kind::ForwardTaylor;
  int order = 4;       // finite differences: 2 or 4
  double step = 1e-3;  // finite differences: h

  static DerivativeProvider taylor() { return {}; }
  static DerivativeProvider finite_difference(int order = 4, double step = 1e-3) {
    return {Kind::FiniteDifference, order, step};
  }
  std::string name() const;
};

/// Metric components with first and second partial derivatives at a point.
struct MetricJet {
  int n = 0;
  Matrix g;
  std::array<Matrix, kMaxDim> dg;               // dg[k](i,j) = d_k g_ij
  std::array<Matrix, kMaxDim * kMaxDim> ddg;    // ddg[k*kMaxDim+l](i,j) = d_k d_l g_ij

  const Matrix& d2(int k, int l) const { return ddg[static_cast<std::size_t>(k * kMaxDim + l)]; }
};

/// Value, partial gradient and partial Hessian of a scalar field.
struct ScalarJet {
  double value = 0.0;
  Vector grad;
  Matrix hess;
};

MetricJet metric_jet(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x);
ScalarJet scalar_jet(const ScalarField& f, const ChartMetric& chart, const DerivativeProvider& provider,
                     std::span<const double> x);

/// Christoffel symbols of the second kind, Gamma^k_ij.
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(int n) : n_(n) {}
  int dim() const { return n_; }
  double& operator()(int k, int i, int j) { return c_[static_cast<std::size_t>((k * kMaxDim + i) * kMaxDim + j)]; }
  double operator()(int k, int i, int j) const { return c_[static_cast<std::size_t>((k * kMaxDim + i) * kMaxDim + j)]; }

 private:
  alignas(16) std::array<double, kMaxDim * kMaxDim * kMaxDim> c_{};
  int n_ = 0;
};

/// All curvature quantities at one point, computed once from a MetricJet.
class LocalGeometry {
 public:
  explicit LocalGeometry(const MetricJet& jet);
  static LocalGeometry at(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x);

  int dim() const { return metric_.dim(); }
  const MetricValue& metric() const { return metric_; }
  const Christoffel& christoffel() const { return christoffel_; }
  const Curv4Tensor& riemann() const { return riemann_; }
  const SymForm& ricci() const { return ricci_; }
  double scalar_curvature() const { return scalar_; }

  SymForm schouten() const;
  SymForm einstein() const;
  SymForm modified_schouten(double tau, double zeta) const;
  Curv4Tensor weyl() const;
  double sectional(const Vector& x, const Vector& y) const;

  /// Covariant Hessian d_i d_j f - Gamma^k_ij d_k f.
  SymForm hessian(const ScalarJet& f) const;
  double laplacian(const ScalarJet& f) const;
  /// Ric + Hess(phi) - dphi (x) dphi / (n_dim - n).
  SymForm bakry_emery(const ScalarJet& phi, double n_dim) const;

 private:
  MetricValue metric_;
  Christoffel christoffel_;
  Curv4Tensor riemann_;
  SymForm ricci_;
  double scalar_ = 0.0;
};

Christoffel christoffel(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x);
Curv4Tensor riemann(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x);
SymForm ricci(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x);
double scalar_curv(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x);
SymForm schouten(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x);
SymForm einstein(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x);
SymForm modified_schouten(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                          double tau, double zeta);
SymForm bakry_emery(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                    const ScalarField& phi, double n_dim);
SymForm hessian_of_scalar(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                          const ScalarField& f);
double laplacian(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                 const ScalarField& f);
Curv4Tensor weyl(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x);
double sectional(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                 const Vector& x_dir, const Vector& y_dir);

/// The chart with metric e^{2u} g; same box, shell and boundary faces.
ChartMetric conformal_metric(const ChartMetric& chart, const ScalarField& u);

/// Weyl residual ||W|| / (||Riem|| + 1).
double weyl_residual(const LocalGeometry& geom);

}  // namespace curvcone
