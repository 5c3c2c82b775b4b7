#include "curvcone/ansatz.hpp"

#include "curvcone/error.hpp"
#include "curvcone/parallel.hpp"
#include "curvcone/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace curvcone {

namespace {

constexpr double kCaseTolerance = 1e-9;
constexpr double kWeylGate = 1e-6;
constexpr double kMinSectional = 1e-10;

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double g_norm(const SymForm& a, const MetricValue& g) {
  const auto lower = g.cholesky_factor().triangularView<Eigen::Lower>();
  Matrix w = lower.solve(a.matrix());
  w = lower.solve(w.transpose()).transpose();
  return w.norm();
}

}  // namespace

TensorField zero_tensor_field() {
  return [](std::span<const double>, const LocalGeometry& geom) { return SymForm::zero(geom.dim()); };
}

TensorField minus_schouten_field() {
  return [](std::span<const double>, const LocalGeometry& geom) { return -geom.schouten(); };
}

TensorField einstein_schouten_field() {
  return [](std::span<const double>, const LocalGeometry& geom) {
    return geom.modified_schouten(geom.dim() - 1.0, 1.0);
  };
}

LowerOrderTerm LowerOrderTerm::zero() { return LowerOrderTerm{}; }

LowerOrderTerm LowerOrderTerm::constant_tensor(TensorField field) {
  LowerOrderTerm t;
  t.kind_ = Kind::ConstantTensor;
  t.constant_ = std::move(field);
  return t;
}

LowerOrderTerm LowerOrderTerm::minus_schouten() {
  LowerOrderTerm t;
  t.kind_ = Kind::MinusSchouten;
  return t;
}

LowerOrderTerm LowerOrderTerm::custom_linear(CustomFn fn, double constant) {
  LowerOrderTerm t;
  t.kind_ = Kind::Custom;
  t.growth_ = GrowthClass::Linear;
  t.custom_ = std::move(fn);
  t.linear_constant_ = constant;
  return t;
}

LowerOrderTerm LowerOrderTerm::custom_subquadratic(CustomFn fn, GammaFn gamma) {
  LowerOrderTerm t;
  t.kind_ = Kind::Custom;
  t.growth_ = GrowthClass::Subquadratic;
  t.custom_ = std::move(fn);
  t.gamma_ = std::move(gamma);
  return t;
}

SymForm LowerOrderTerm::fixed_value(std::span<const double> x, const LocalGeometry& geom,
                                    const SymForm& schouten) const {
  switch (kind_) {
    case Kind::Zero: return SymForm::zero(geom.dim());
    case Kind::ConstantTensor: return constant_(x, geom);
    case Kind::MinusSchouten: return -schouten;
    case Kind::Custom: break;
  }
  throw Error(ErrorCode::InvalidInput, "custom lower-order term depends on p");
}

SymForm LowerOrderTerm::evaluate(std::span<const double> x, const Vector& p) const {
  if (kind_ != Kind::Custom) throw Error(ErrorCode::InvalidInput, "p-independent term needs geometry; use fixed_value");
  return custom_(x, p);
}

GrowthCheck check_growth(const LowerOrderTerm& term, const ChartMetric& chart, const Grid& grid,
                         const DerivativeProvider& provider, std::uint64_t seed) {
  GrowthCheck out;
  Rng rng(seed);
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / 64);
  const int n = chart.dim();

  if (term.independent_of_p()) {
    // Bounded on the compact domain; the declared constant is the sampled sup.
    out.ok = true;
    for (std::size_t i = 0; i < grid.size(); i += stride) {
      const auto geom = LocalGeometry::at(chart, provider, grid.point(i));
      const SymForm schouten = n >= 3 ? geom.schouten() : SymForm::zero(n);
      const double r = g_norm(term.fixed_value(grid.point(i), geom, schouten), geom.metric());
      out.worst_ratio = std::max(out.worst_ratio, r > 0.0 ? 1.0 : 0.0);
    }
    return out;
  }

  out.ok = true;
  for (std::size_t i = 0; i < grid.size(); i += stride) {
    const auto x = grid.point(i);
    const MetricValue g(LocalGeometry::at(chart, provider, x).metric());
    Vector dir(n);
    for (int c = 0; c < n; ++c) dir(c) = rng.normal();
    dir /= std::sqrt(g.covector_norm2(dir));
    double gamma_mid = 0.0;
    for (double mag = 1.0; mag <= 1e6 * (1 + 1e-12); mag *= 10.0) {
      const Vector p = dir * mag;
      const double r = g_norm(term.evaluate(x, p), g);
      double bound = 0.0;
      if (term.linear()) {
        bound = term.linear_constant() * (1.0 + mag);
      } else {
        const double gamma = term.gamma()(x, mag);
        if (std::abs(mag - 1e3) < 1.0) gamma_mid = gamma;
        if (mag >= 1e6 && !(gamma < gamma_mid)) out.ok = false;  // gamma must keep decaying
        bound = gamma * (1.0 + mag * mag);
      }
      const double ratio = bound > 0.0 ? r / bound : (r > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      out.worst_ratio = std::max(out.worst_ratio, ratio);
    }
  }
  if (out.worst_ratio > 1.0) out.ok = false;
  return out;
}

std::string to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::Case_i: return "Case_i";
    case CaseKind::Case_ii: return "Case_ii";
    case CaseKind::Case_i_prime: return "Case_i_prime";
    case CaseKind::Case_ii_prime: return "Case_ii_prime";
    case CaseKind::Case_iii_prime: return "Case_iii_prime";
    case CaseKind::NoCase: return "NoCase";
  }
  return "?";
}

CaseTag classify_case(const AnsatzConfig& config) {
  const int n = config.cone.dim();
  std::vector<double> t(static_cast<std::size_t>(n), config.alpha);
  t.back() = config.alpha - config.beta;
  const double m = margin(config.cone, t);
  const bool interior = m > kCaseTolerance;
  const bool boundary = std::abs(m) <= kCaseTolerance;
  const auto& r = config.lower_order;

  if (config.form == AnsatzForm::V) {
    if (interior && r.subquadratic()) return {CaseKind::Case_i, {}};
    if (!(config.alpha > 0.0)) return {CaseKind::NoCase, "alpha <= 0 and test vector not interior"};
    if (!boundary) return {CaseKind::NoCase, "test vector outside the closed cone (margin " + format_double(m) + ")"};
    if (!r.linear()) return {CaseKind::NoCase, "boundary case needs linear growth of R"};
    return {CaseKind::Case_ii, {}};
  }

  if (interior && r.subquadratic()) return {CaseKind::Case_i_prime, {}};
  if (!boundary) return {CaseKind::NoCase, "test vector outside the closed cone (margin " + format_double(m) + ")"};
  if (!r.linear()) return {CaseKind::NoCase, "boundary case needs linear growth of R"};
  const double rho_cone = rho(config.cone);
  if (config.rho < rho_cone - kCaseTolerance) return {CaseKind::Case_ii_prime, {}};
  if (std::abs(config.rho - rho_cone) <= kCaseTolerance) {
    const double slack = config.alpha * rho_cone - config.beta;
    if (!(slack > 0.0)) return {CaseKind::NoCase, "rho = rho_cone but alpha rho_cone - beta <= 0"};
    // Consequences of the hypotheses; failing them means the inputs are inconsistent.
    if (!(config.beta < 0.0) || !(1.0 - config.alpha * rho_cone / config.beta > 0.0)) {
      throw Error(ErrorCode::InternalInconsistency,
                  "Case_iii_prime hypotheses hold but beta < 0 or 1 - alpha rho_cone / beta > 0 fails");
    }
    return {CaseKind::Case_iii_prime, {}};
  }
  return {CaseKind::NoCase, "rho > rho_cone"};
}

MorseCheck verify_morse(const ScalarField& v, const ChartMetric& chart, const Grid& grid,
                        const DerivativeProvider& provider, double threshold) {
  MorseCheck out;
  out.min_abs_dv = std::numeric_limits<double>::infinity();
  out.min_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.point(i);
    const ScalarJet jet = scalar_jet(v, chart, provider, x);
    const SymComponents<double> comps = chart.metric()(x);
    Matrix gm(chart.dim(), chart.dim());
    for (int a = 0; a < chart.dim(); ++a)
      for (int b = 0; b < chart.dim(); ++b) gm(a, b) = comps(a, b);
    const MetricValue g{SymForm(gm)};
    out.min_abs_dv = std::min(out.min_abs_dv, std::sqrt(g.covector_norm2(jet.grad)));
    out.min_v = std::min(out.min_v, jet.value);
  }
  out.ok = grid.size() > 0 && out.min_abs_dv > threshold && out.min_v >= 1.0 - 1e-12;
  return out;
}

ScalarField normalize_to_band(const ScalarField& v, const Grid& grid, double band) {
  if (!(band > 0.0)) throw Error(ErrorCode::InvalidInput, "normalization band must be positive");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double value = v(grid.point(i));
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  if (!(hi > lo)) throw Error(ErrorCode::InvalidInput, "v is constant on the grid");
  const double scale = band / (hi - lo);
  return [v, lo, scale](auto x) { return 1.0 + scale * (v(x) - lo); };
}

ConformalJet exponential_ansatz(const ConformalJet& v_jet, double n) {
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidInput, "ansatz exponent N must be positive");
  if (n * v_jet.u > kMaxExponent) {
    throw Error(ErrorCode::ExponentOverflow, "N v = " + format_double(n * v_jet.u) + " exceeds " +
                                                 format_double(kMaxExponent) + "; normalize v to a band");
  }
  const double e = std::exp(n * v_jet.u);
  ConformalJet jet;
  jet.u = e;
  jet.grad = v_jet.grad * (n * e);
  jet.hess = v_jet.hess * (n * e) + SymForm::outer(v_jet.grad) * (n * n * e);
  jet.norm2_grad = n * n * e * e * v_jet.norm2_grad;
  return jet;
}

AnsatzPoint prepare_point(const AnsatzConfig& config, const ScalarField& v, const ChartMetric& chart,
                          const DerivativeProvider& provider, std::span<const double> x) {
  const auto geom = LocalGeometry::at(chart, provider, x);
  if (geom.dim() < 3) throw Error(ErrorCode::DimensionTooSmall, "ansatz operators need n >= 3");
  SymForm schouten = geom.schouten();
  std::optional<SymForm> r_fixed;
  if (config.lower_order.independent_of_p()) r_fixed = config.lower_order.fixed_value(x, geom, schouten);
  return AnsatzPoint{std::vector<double>(x.begin(), x.end()),
                     geom.metric(),
                     schouten,
                     config.u_term(x, geom),
                     std::move(r_fixed),
                     ConformalJet::from(scalar_jet(v, chart, provider, x), geom)};
}

namespace {

SymForm common_terms(const AnsatzConfig& config, const ConformalJet& jet, const AnsatzPoint& point) {
  const SymForm r = point.r_fixed ? *point.r_fixed : config.lower_order.evaluate(point.x, jet.grad);
  return point.g.form() * (config.alpha * jet.norm2_grad) - SymForm::outer(jet.grad) * config.beta + r +
         point.u_term;
}

}  // namespace

SymForm build_V(const AnsatzConfig& config, const ConformalJet& jet, const AnsatzPoint& point) {
  if (config.form != AnsatzForm::V) throw Error(ErrorCode::InvalidInput, "build_V called on a W-form config");
  return jet.hess + common_terms(config, jet, point);
}

SymForm build_W(const AnsatzConfig& config, const ConformalJet& jet, const AnsatzPoint& point) {
  if (config.form != AnsatzForm::W) throw Error(ErrorCode::InvalidInput, "build_W called on a V-form config");
  return point.g.form() * jet.laplacian(point.g) - jet.hess * config.rho + common_terms(config, jet, point);
}

SymForm build_form(const AnsatzConfig& config, const ConformalJet& jet, const AnsatzPoint& point) {
  return config.form == AnsatzForm::V ? build_V(config, jet, point) : build_W(config, jet, point);
}

double point_margin(const AnsatzConfig& config, const AnsatzPoint& point, double n, double* min_eigenvalue) {
  const SymForm t = build_form(config, exponential_ansatz(point.v, n), point);
  const double scale = t.max_abs();
  if (scale == 0.0) {
    if (min_eigenvalue) *min_eigenvalue = 0.0;
    return 0.0;
  }
  const EigenList lambda = generalized_eigenvalues(t * (1.0 / scale), point.g);
  if (min_eigenvalue) *min_eigenvalue = lambda.min();
  return margin(config.cone, lambda);
}

NSearchResult find_min_N(const AnsatzConfig& config, const ChartMetric& chart, const Grid& grid, double n_max,
                         double margin_req, const DerivativeProvider& provider) {
  if (config.cone.dim() != chart.dim()) throw Error(ErrorCode::DimensionMismatch, "cone and chart dimensions differ");
  if (grid.size() == 0) throw Error(ErrorCode::InvalidInput, "empty grid");

  NSearchResult out;
  out.v_used = config.normalize_band ? normalize_to_band(config.v, grid, *config.normalize_band) : config.v;
  out.morse = verify_morse(out.v_used, chart, grid, provider);
  if (!out.morse.ok) {
    out.diagnostic = "warning: v fails the Morse check (min |dv| = " + format_double(out.morse.min_abs_dv) +
                     ", min v = " + format_double(out.morse.min_v) + "); ";
  }
  out.case_tag = classify_case(config);

  std::vector<std::optional<AnsatzPoint>> slots(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { slots[i] = prepare_point(config, out.v_used, chart, provider, grid.point(i)); });
  std::vector<AnsatzPoint> points;
  points.reserve(slots.size());
  for (auto& s : slots) points.push_back(std::move(*s));
  slots.clear();
  out.v_max = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) out.v_max = std::max(out.v_max, p.v.u);

  std::vector<double> margins(points.size());
  std::vector<double> min_eigs(points.size());
  auto guard_ok = [&](double n) { return n * out.v_max <= kMaxExponent; };
  auto probe = [&](double n) {
    parallel_for(points.size(), [&](std::size_t i) { margins[i] = point_margin(config, points[i], n, &min_eigs[i]); });
    const double worst = *std::min_element(margins.begin(), margins.end());
    const bool ok = worst >= margin_req;
    out.profile.push_back({n, worst, ok});
    return ok;
  };
  auto note_overflow = [&](double n) {
    out.overflow = true;
    out.diagnostic += "exponent guard tripped at N = " + format_double(n) + " (N max v = " +
                      format_double(n * out.v_max) + " > " + format_double(kMaxExponent) +
                      "); normalize v to a band or lower N_max";
  };

  std::optional<double> first_success;
  bool had_failure = false;
  for (double n = 1.0; n <= n_max; n *= 2.0) {
    if (!guard_ok(n)) {
      note_overflow(n);
      break;
    }
    if (probe(n)) {
      first_success = n;
      break;
    }
    had_failure = true;
  }

  if (first_success) {
    double best = *first_success;
    if (had_failure) {
      double lo = best / 2.0, hi = best;
      while ((hi - lo) / hi > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (probe(mid)) {
          hi = mid;
          best = std::min(best, mid);
        } else {
          lo = mid;
        }
      }
    }
    out.n_found = best;

    if (out.case_tag.kind == CaseKind::Case_i || out.case_tag.kind == CaseKind::Case_i_prime) {
      const double n0 = *first_success;
      if (guard_ok(2.0 * n0) && 2.0 * n0 <= n_max) {
        double m0 = 0.0;
        for (const auto& row : out.profile)
          if (row.n == n0) m0 = row.worst_margin;
        probe(2.0 * n0);
        out.dominance_ok = out.profile.back().worst_margin >= m0 && m0 > 0.0;
      }
    }

    parallel_for(points.size(), [&](std::size_t i) { point_margin(config, points[i], best, &min_eigs[i]); });
    out.point_min_eigenvalues = min_eigs;
  } else if (!out.overflow) {
    out.diagnostic += "no N <= " + format_double(n_max) + " reached margin " + format_double(margin_req);
  }

  std::stable_sort(out.profile.begin(), out.profile.end(),
                   [](const MarginRow& a, const MarginRow& b) { return a.n < b.n; });
  return out;
}

AnsatzConfig negative_sectional_config(int n, const ScalarField& v, std::optional<double> band) {
  AnsatzConfig c;
  c.form = AnsatzForm::V;
  c.alpha = 0.5;
  c.beta = 1.0;
  c.lower_order = LowerOrderTerm::zero();
  c.u_term = minus_schouten_field();
  c.cone = ConeSpec::p_k(n, 2);
  c.v = v;
  c.normalize_band = band;
  return c;
}

AnsatzConfig positive_einstein_config(int n, const ScalarField& v, std::optional<double> band) {
  AnsatzConfig c;
  c.form = AnsatzForm::W;
  c.rho = 1.0;
  c.alpha = (n - 3) / 2.0;
  c.beta = -1.0;
  c.lower_order = LowerOrderTerm::zero();
  c.u_term = einstein_schouten_field();
  c.cone = ConeSpec::positive_orthant(n);
  c.v = v;
  c.normalize_band = band;
  return c;
}

ScalarField shifted_exponential(const ScalarField& v, double n, std::span<const double> x0) {
  const double offset = std::exp(n * v(x0));
  return [v, n, offset](auto x) {
    using std::exp;
    return exp(n * v(x)) - offset;
  };
}

namespace {

using Clock = std::chrono::steady_clock;

void fill_search(VerificationReport& report, const NSearchResult& search) {
  report.case_tag = to_string(search.case_tag.kind);
  if (!search.case_tag.detail.empty()) report.notes.push_back("case: " + search.case_tag.detail);
  report.n_found = search.n_found;
  report.margin_profile = search.profile;
  report.point_min_eigenvalues = search.point_min_eigenvalues;
  report.eigen_extremes = summarize(search.point_min_eigenvalues);
  report.checks["morse"] = search.morse.ok;
  report.checks["n_search"] = search.n_found.has_value();
  report.metrics["min_abs_dv"] = search.morse.min_abs_dv;
  report.metrics["min_v"] = search.morse.min_v;
  report.metrics["v_max"] = search.v_max;
  if (search.n_found) {
    for (const auto& row : search.profile)
      if (row.n == *search.n_found) report.metrics["margin_at_n_found"] = row.worst_margin;
  }
  if (search.dominance_ok) {
    report.metrics["dominance_ok"] = *search.dominance_ok ? 1.0 : 0.0;
    if (!*search.dominance_ok) report.notes.push_back("dominance: margin did not grow from N0 to 2 N0");
  }
  if (!search.diagnostic.empty()) report.notes.push_back(search.diagnostic);
}

// Max Weyl residual over the grid; also checks U = G/(n-2) when asked.
double max_weyl_residual(const ChartMetric& chart, const Grid& grid, const DerivativeProvider& provider,
                         double* einstein_identity_error = nullptr) {
  std::vector<double> weyl(grid.size()), ident(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto geom = LocalGeometry::at(chart, provider, grid.point(i));
    weyl[i] = weyl_residual(geom);
    if (einstein_identity_error) {
      const SymForm u = einstein_schouten_field()(grid.point(i), geom);
      ident[i] = relative_error(u, geom.einstein() * (1.0 / (geom.dim() - 2)));
    }
  });
  if (einstein_identity_error) *einstein_identity_error = *std::max_element(ident.begin(), ident.end());
  return *std::max_element(weyl.begin(), weyl.end());
}

}  // namespace

VerificationReport construct_negative_sectional(const ChartMetric& chart, const ScalarField& v, const Grid& grid,
                                                double n_max, const PipelineOptions& options) {
  const auto start = Clock::now();
  const int n = chart.dim();
  if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "negative sectional construction needs n >= 3");

  VerificationReport report;
  report.task = "thm13";
  report.seed = options.seed;
  report.weyl_residual = max_weyl_residual(chart, grid, options.provider);
  if (!(report.weyl_residual < kWeylGate)) {
    throw Error(ErrorCode::NotLocallyConformallyFlat,
                chart.name() + " has Weyl residual " + format_double(report.weyl_residual));
  }
  report.checks["weyl_gate"] = true;

  const AnsatzConfig config = negative_sectional_config(n, v, options.normalize_band);
  const NSearchResult search = find_min_N(config, chart, grid, n_max, options.margin_req, options.provider);
  fill_search(report, search);

  if (search.n_found) {
    const double big_n = *search.n_found;
    Rng rng(options.seed);
    const Grid samples = sample_points(chart, options.sample_points, rng);
    std::vector<std::vector<Vector>> planes(samples.size());
    for (auto& per_point : planes) {
      for (std::size_t p = 0; p < options.planes_per_point; ++p) {
        Vector x(n), y(n);
        for (int c = 0; c < n; ++c) x(c) = rng.normal();
        for (int c = 0; c < n; ++c) y(c) = rng.normal();
        per_point.push_back(x);
        per_point.push_back(y);
      }
    }

    std::vector<std::vector<double>> curvatures(samples.size());
    std::vector<char> criterion(samples.size()), direct(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
      const auto x0 = samples.point(i);
      const ChartMetric scaled = conformal_metric(chart, shifted_exponential(search.v_used, big_n, x0));
      const auto geom = LocalGeometry::at(scaled, options.provider, x0);
      bool negative = true;
      for (std::size_t p = 0; p < options.planes_per_point; ++p) {
        const double k = geom.sectional(planes[i][2 * p], planes[i][2 * p + 1]);
        curvatures[i].push_back(k);
        if (!(k < 0.0 && std::abs(k) > kMinSectional)) negative = false;
      }
      direct[i] = negative ? 1 : 0;
      const AnsatzPoint point = prepare_point(config, search.v_used, chart, options.provider, x0);
      criterion[i] = point_margin(config, point, big_n) > kBoundaryMargin ? 1 : 0;
    });

    bool all_negative = true, agree = true;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      report.sectional_samples.insert(report.sectional_samples.end(), curvatures[i].begin(), curvatures[i].end());
      all_negative = all_negative && direct[i];
      if (criterion[i] != direct[i]) {
        agree = false;
        std::ostringstream os;
        os << "discrepancy at sample " << i << ": eigenvalue criterion " << (criterion[i] ? "in" : "out of")
           << " PK(2), direct sectional check " << (direct[i] ? "negative" : "not negative");
        report.notes.push_back(os.str());
      }
    }
    report.sectional_summary = summarize(report.sectional_samples);
    report.checks["sectional_negative"] = all_negative && !report.sectional_samples.empty();
    report.checks["pipeline_direct_agreement"] = agree;
  }

  report.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

VerificationReport construct_positive_einstein(const ChartMetric& chart, const ScalarField& v, const Grid& grid,
                                               double n_max, const PipelineOptions& options) {
  const auto start = Clock::now();
  const int n = chart.dim();
  if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "Einstein construction needs n >= 3");

  VerificationReport report;
  report.task = "thm12";
  report.seed = options.seed;
  double identity_error = 0.0;
  report.weyl_residual = max_weyl_residual(chart, grid, options.provider, &identity_error);
  report.metrics["einstein_identity_error"] = identity_error;
  report.checks["einstein_identity"] = identity_error <= 1e-8;

  const AnsatzConfig config = positive_einstein_config(n, v, options.normalize_band);
  const NSearchResult search = find_min_N(config, chart, grid, n_max, options.margin_req, options.provider);
  fill_search(report, search);

  if (search.n_found) {
    const double big_n = *search.n_found;
    std::vector<double> lowest(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
      const auto x0 = grid.point(i);
      const ChartMetric scaled = conformal_metric(chart, shifted_exponential(search.v_used, big_n, x0));
      const auto geom = LocalGeometry::at(scaled, options.provider, x0);
      lowest[i] = generalized_eigenvalues(geom.einstein(), geom.metric()).min();
    });
    const double worst = *std::min_element(lowest.begin(), lowest.end());
    report.metrics["min_einstein_eigenvalue"] = worst;
    report.checks["einstein_positive"] = worst > 0.0;
  }

  report.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

SampleSummary summarize(const std::vector<double>& values) {
  SampleSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

}  // namespace curvcone
