#pragma once

// Pointwise conformal transformation laws for g_u = e^{2u} g. Every input
// and output is expressed with respect to the background metric g.

#include "curvcone/cones.hpp"
#include "curvcone/geometry.hpp"
#include "curvcone/lintensor.hpp"

#include <utility>

namespace curvcone {

/// Derivatives of the conformal factor u at a point.
struct ConformalJet {
  double u = 0.0;
  Vector grad;        // d_i u
  SymForm hess;       // covariant Hessian with respect to g
  double norm2_grad = 0.0;  // g^{ij} d_i u d_j u

  static ConformalJet zero(int n);
  /// Builds the jet from partial derivatives and the background geometry.
  static ConformalJet from(const ScalarJet& partials, const LocalGeometry& geom);

  double laplacian(const MetricValue& g) const { return hess.trace_with(g.inverse()); }
};

/// -A_{g_u} = -A_g + Hess u + |du|^2 g / 2 - du (x) du
SymForm minus_schouten_conformal(const SymForm& schouten_g, const ConformalJet& jet, const MetricValue& g);

/// A^{tau,zeta}_{g_u} = A^{tau,zeta}_g + zeta(tau-1)/(n-2) Lap u g - zeta Hess u
///                       + zeta(tau-2)/2 |du|^2 g + zeta du (x) du
SymForm modified_schouten_conformal(const SymForm& modified_g, const ConformalJet& jet, const MetricValue& g,
                                    double tau, double zeta);

/// -Ric_{N,mu}(g_u) = Lap u g + (n-2) Hess u + (n-2)(|du|^2 g - du (x) du)
///                    + du (x) dphi + dphi (x) du - <du, dphi> g - Ric_{N,mu}(g)
SymForm bakry_emery_conformal(const SymForm& ric_n_mu_g, const ConformalJet& jet, const MetricValue& g,
                              const Vector& grad_phi);

/// Cone membership of lambda(g^{-1} A) and of lambda(g_u^{-1} A), g_u = e^{2u} g.
std::pair<bool, bool> cone_membership_conformal_invariance(const SymForm& a, double u, const MetricValue& g,
                                                           const ConeSpec& cone);

}  // namespace curvcone
