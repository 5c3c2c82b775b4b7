#pragma once

// Admissible-function construction u = e^{N v}.
//
// For a Morse function v without critical points (v >= 1), the operators
//   V[u] = Hess u + alpha |du|^2 g - beta du (x) du + R(x, du) + U(x)
//   W[u] = Lap u g - rho Hess u + alpha |du|^2 g - beta du (x) du + R(x, du) + U(x)
// are evaluated on u = e^{N v} and N is searched until the eigenvalues of
// g^{-1} V (or W) lie in the target cone at every grid point.

#include "curvcone/catalog.hpp"
#include "curvcone/cones.hpp"
#include "curvcone/conformal.hpp"
#include "curvcone/geometry.hpp"
#include "curvcone/report.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curvcone {

/// Guard on N * max(v); e^{2 N v} beyond this is not representable in practice.
inline constexpr double kMaxExponent = 300.0;

enum class AnsatzForm { V, W };
enum class GrowthClass { Subquadratic, Linear };

/// Symmetric tensor field depending on the point and its background geometry.
using TensorField = std::function<SymForm(std::span<const double> x, const LocalGeometry& geom)>;

TensorField zero_tensor_field();
/// -A_g.
TensorField minus_schouten_field();
/// A^{n-1,1}_g = G_g / (n-2).
TensorField einstein_schouten_field();

/// The lower-order term R(x, p) together with its declared growth class.
/// Linear growth C(1+|p|) implies subquadratic growth gamma(p)(1+|p|^2).
class LowerOrderTerm {
 public:
  enum class Kind { Zero, ConstantTensor, MinusSchouten, Custom };
  using CustomFn = std::function<SymForm(std::span<const double> x, const Vector& p)>;
  using GammaFn = std::function<double(std::span<const double> x, double p_norm)>;

  static LowerOrderTerm zero();
  static LowerOrderTerm constant_tensor(TensorField field);
  static LowerOrderTerm minus_schouten();
  static LowerOrderTerm custom_linear(CustomFn fn, double constant);
  static LowerOrderTerm custom_subquadratic(CustomFn fn, GammaFn gamma);

  Kind kind() const { return kind_; }
  GrowthClass growth() const { return growth_; }
  bool subquadratic() const { return true; }
  bool linear() const { return growth_ == GrowthClass::Linear; }

  /// True when R does not depend on p (Zero, ConstantTensor, MinusSchouten).
  bool independent_of_p() const { return kind_ != Kind::Custom; }
  /// R(x, .) for p-independent kinds; `schouten` is A_g at x.
  SymForm fixed_value(std::span<const double> x, const LocalGeometry& geom, const SymForm& schouten) const;
  /// R(x, p) for any kind; p-independent kinds need geometry, so only Custom is valid here.
  SymForm evaluate(std::span<const double> x, const Vector& p) const;

  double linear_constant() const { return linear_constant_; }
  const GammaFn& gamma() const { return gamma_; }

 private:
  Kind kind_ = Kind::Zero;
  GrowthClass growth_ = GrowthClass::Linear;
  TensorField constant_;
  CustomFn custom_;
  GammaFn gamma_;
  double linear_constant_ = 0.0;
};

struct GrowthCheck {
  double worst_ratio = 0.0;  // max |R| / bound over the samples
  bool ok = false;
};

/// Finite-sample check of the declared growth bound at the grid points, with
/// |p| swept geometrically up to 1e6 along random directions.
GrowthCheck check_growth(const LowerOrderTerm& term, const ChartMetric& chart, const Grid& grid,
                         const DerivativeProvider& provider, std::uint64_t seed);

struct AnsatzConfig {
  AnsatzForm form = AnsatzForm::V;
  double alpha = 0.0;
  double beta = 0.0;
  double rho = 0.0;  // W only
  LowerOrderTerm lower_order = LowerOrderTerm::zero();
  TensorField u_term = zero_tensor_field();
  ConeSpec cone = ConeSpec::positive_orthant(3);
  ScalarField v;
  /// Affine rescaling of v onto [1, 1 + band] over the grid; nullopt leaves v alone.
  std::optional<double> normalize_band = 0.5;
};

enum class CaseKind { Case_i, Case_ii, Case_i_prime, Case_ii_prime, Case_iii_prime, NoCase };

struct CaseTag {
  CaseKind kind = CaseKind::NoCase;
  std::string detail;  // failed condition for NoCase
};

std::string to_string(CaseKind kind);

/// Which structural case of the ansatz the configuration satisfies,
/// judged on the test vector (alpha, ..., alpha, alpha - beta).
CaseTag classify_case(const AnsatzConfig& config);

struct MorseCheck {
  double min_abs_dv = 0.0;
  double min_v = 0.0;
  bool ok = false;
};

MorseCheck verify_morse(const ScalarField& v, const ChartMetric& chart, const Grid& grid,
                        const DerivativeProvider& provider = DerivativeProvider::taylor(), double threshold = 1e-6);

/// 1 + band (v - min v) / (max v - min v), extremes taken over the grid.
ScalarField normalize_to_band(const ScalarField& v, const Grid& grid, double band);

/// Derivatives of u = e^{N v} from those of v (v's jet is passed as a ConformalJet).
ConformalJet exponential_ansatz(const ConformalJet& v_jet, double n);

/// Everything about a grid point that does not depend on N.
struct AnsatzPoint {
  std::vector<double> x;
  MetricValue g;
  SymForm schouten;
  SymForm u_term;
  std::optional<SymForm> r_fixed;  // set when R does not depend on p
  ConformalJet v;
};

AnsatzPoint prepare_point(const AnsatzConfig& config, const ScalarField& v, const ChartMetric& chart,
                          const DerivativeProvider& provider, std::span<const double> x);

SymForm build_V(const AnsatzConfig& config, const ConformalJet& jet, const AnsatzPoint& point);
SymForm build_W(const AnsatzConfig& config, const ConformalJet& jet, const AnsatzPoint& point);
SymForm build_form(const AnsatzConfig& config, const ConformalJet& jet, const AnsatzPoint& point);

/// Cone margin of lambda(g^{-1} T) with T normalized by its max-norm.
double point_margin(const AnsatzConfig& config, const AnsatzPoint& point, double n, double* min_eigenvalue = nullptr);

struct NSearchResult {
  std::optional<double> n_found;
  std::vector<MarginRow> profile;
  CaseTag case_tag;
  MorseCheck morse;
  std::string diagnostic;
  bool overflow = false;
  std::optional<bool> dominance_ok;
  /// v after normalization, as used for every probe.
  ScalarField v_used;
  double v_max = 0.0;
  /// Smallest normalized eigenvalue per grid point at n_found.
  std::vector<double> point_min_eigenvalues;
};

/// Doubling N = 1, 2, 4, ... up to n_max, then bisection on [N0/2, N0] to
/// relative width 1e-3 when the first success N0 follows a failed probe.
NSearchResult find_min_N(const AnsatzConfig& config, const ChartMetric& chart, const Grid& grid, double n_max,
                         double margin_req, const DerivativeProvider& provider = DerivativeProvider::taylor());

struct PipelineOptions {
  DerivativeProvider provider = DerivativeProvider::taylor();
  double margin_req = 1e-6;
  std::optional<double> normalize_band = 0.5;
  std::uint64_t seed = 20240601;
  std::size_t sample_points = 50;
  std::size_t planes_per_point = 100;
};

/// Builds g_u = e^{2u} g with u = e^{N v}, targeting lambda(-g^{-1} A_{g_u}) in PK(2),
/// then samples sectional curvatures of g_u directly. Throws
/// NotLocallyConformallyFlat when the Weyl residual gate fails on the grid.
VerificationReport construct_negative_sectional(const ChartMetric& chart, const ScalarField& v, const Grid& grid,
                                                double n_max, const PipelineOptions& options = {});

/// Builds g_u with G_{g_u} > 0 via the W-form with rho = 1, alpha = (n-3)/2,
/// beta = -1, U = A^{n-1,1}_g and the positive orthant, then checks the
/// Einstein tensor of g_u directly at every grid point.
VerificationReport construct_positive_einstein(const ChartMetric& chart, const ScalarField& v, const Grid& grid,
                                               double n_max, const PipelineOptions& options = {});

/// Shared configurations of the two pipelines.
AnsatzConfig negative_sectional_config(int n, const ScalarField& v, std::optional<double> band);
AnsatzConfig positive_einstein_config(int n, const ScalarField& v, std::optional<double> band);

/// e^{N v} - e^{N v(x0)}: the conformal exponent shifted to vanish at x0.
ScalarField shifted_exponential(const ScalarField& v, double n, std::span<const double> x0);

}  // namespace curvcone
