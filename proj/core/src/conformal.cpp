#include "curvcone/conformal.hpp"

#include "curvcone/error.hpp"

#include <cmath>

namespace curvcone {

namespace {

void require_dims(const SymForm& base, const ConformalJet& jet, const MetricValue& g) {
  if (base.dim() != g.dim() || jet.hess.dim() != g.dim() || jet.grad.size() != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "conformal formula inputs disagree on dimension");
  }
}

}  // namespace

ConformalJet ConformalJet::zero(int n) {
  ConformalJet jet;
  jet.grad = Vector::Zero(n);
  jet.hess = SymForm::zero(n);
  return jet;
}

ConformalJet ConformalJet::from(const ScalarJet& partials, const LocalGeometry& geom) {
  ConformalJet jet;
  jet.u = partials.value;
  jet.grad = partials.grad;
  jet.hess = geom.hessian(partials);
  jet.norm2_grad = geom.metric().covector_norm2(partials.grad);
  return jet;
}

SymForm minus_schouten_conformal(const SymForm& schouten_g, const ConformalJet& jet, const MetricValue& g) {
  require_dims(schouten_g, jet, g);
  return -schouten_g + jet.hess + g.form() * (0.5 * jet.norm2_grad) - SymForm::outer(jet.grad);
}

SymForm modified_schouten_conformal(const SymForm& modified_g, const ConformalJet& jet, const MetricValue& g,
                                    double tau, double zeta) {
  require_dims(modified_g, jet, g);
  const int n = g.dim();
  if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "modified Schouten tensor needs n >= 3");
  const double trace_coeff = zeta * (tau - 1.0) / (n - 2) * jet.laplacian(g) + zeta * (tau - 2.0) / 2.0 * jet.norm2_grad;
  return modified_g + g.form() * trace_coeff - jet.hess * zeta + SymForm::outer(jet.grad) * zeta;
}

SymForm bakry_emery_conformal(const SymForm& ric_n_mu_g, const ConformalJet& jet, const MetricValue& g,
                              const Vector& grad_phi) {
  require_dims(ric_n_mu_g, jet, g);
  if (grad_phi.size() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "grad_phi size");
  const int n = g.dim();
  const double cross = jet.grad.dot(g.inverse() * grad_phi);
  const double trace_coeff = jet.laplacian(g) + (n - 2) * jet.norm2_grad - cross;
  return g.form() * trace_coeff + jet.hess * static_cast<double>(n - 2) -
         SymForm::outer(jet.grad) * static_cast<double>(n - 2) + SymForm::sym_product(jet.grad, grad_phi) * 2.0 -
         ric_n_mu_g;
}

std::pair<bool, bool> cone_membership_conformal_invariance(const SymForm& a, double u, const MetricValue& g,
                                                           const ConeSpec& cone) {
  const MetricValue g_u(g.form() * std::exp(2.0 * u));
  return {contains(cone, generalized_eigenvalues(a, g)), contains(cone, generalized_eigenvalues(a, g_u))};
}

}  // namespace curvcone
