#include "curvcone/harness.hpp"

#include "curvcone/conformal.hpp"
#include "curvcone/error.hpp"
#include "curvcone/parallel.hpp"
#include "curvcone/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

namespace curvcone {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) config_error("missing key '" + where + key + "'");
  return obj.at(key);
}

template <class T>
T read(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    config_error("key '" + key + "' has the wrong type");
  }
}

template <class T>
void read_optional(const json& obj, const std::string& key, const std::string& where, T& out) {
  if (obj.contains(key)) out = read<T>(obj.at(key), where + key);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  if (!obj.is_object()) config_error("'" + (where.empty() ? std::string("config") : where) + "' must be an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) config_error("unknown key '" + where + key + "'");
}

bool is_shell(const std::string& name) {
  return name == "flat_shell" || name == "sphere_band" || name == "poincare_shell";
}

std::string family_name(ConeFamily family) {
  switch (family) {
    case ConeFamily::GammaK: return "gamma_k";
    case ConeFamily::PK: return "p_k";
    case ConeFamily::HalfSpaceSum: return "sum";
  }
  return "?";
}

std::string v_kind_name(VSpec::Kind kind) {
  switch (kind) {
    case VSpec::Kind::Radial: return "radial";
    case VSpec::Kind::Linear: return "linear";
    case VSpec::Kind::CustomPolynomial: return "custom_polynomial";
  }
  return "?";
}

ConeSpec make_cone(const std::string& family, int n, int k) {
  if (family == "gamma_k") return ConeSpec::gamma_k(n, k);
  if (family == "p_k") return ConeSpec::p_k(n, k);
  if (family == "sum") return ConeSpec::half_space_sum(n);
  config_error("cone.family must be gamma_k, p_k or sum");
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {"curvature", "cone", "thm12", "thm13", "formula_check"};
  return names;
}

ScalarField make_v(const VSpec& spec, int dim) {
  const auto n = static_cast<std::size_t>(dim);
  switch (spec.kind) {
    case VSpec::Kind::Radial: {
      std::vector<double> c = spec.center.empty() ? std::vector<double>(n, 0.0) : spec.center;
      if (c.size() != n) throw Error(ErrorCode::DimensionMismatch, "v.center needs one entry per coordinate");
      return [c](auto x) {
        using std::sqrt;
        using T = scalar_of<decltype(x)>;
        T s(0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
          const T d = x[i] - c[i];
          s = s + d * d;
        }
        return sqrt(s);
      };
    }
    case VSpec::Kind::Linear: {
      std::vector<double> a = spec.coefficients.empty() ? std::vector<double>(n, 1.0) : spec.coefficients;
      if (a.size() != n) throw Error(ErrorCode::DimensionMismatch, "v.coefficients needs one entry per coordinate");
      return [a](auto x) {
        using T = scalar_of<decltype(x)>;
        T s(0.0);
        for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * x[i];
        return s;
      };
    }
    case VSpec::Kind::CustomPolynomial: {
      if (spec.terms.empty()) throw Error(ErrorCode::InvalidInput, "v.terms is empty");
      for (const auto& t : spec.terms) {
        if (t.powers.size() != n) throw Error(ErrorCode::DimensionMismatch, "v.terms[].powers needs one entry per coordinate");
        for (int p : t.powers)
          if (p < 0) throw Error(ErrorCode::InvalidInput, "v.terms[].powers must be non-negative");
      }
      auto terms = std::make_shared<const std::vector<Monomial>>(spec.terms);
      return [terms](auto x) {
        using T = scalar_of<decltype(x)>;
        T s(0.0);
        for (const auto& t : *terms) {
          T m(t.coefficient);
          for (std::size_t i = 0; i < t.powers.size(); ++i)
            for (int p = 0; p < t.powers[i]; ++p) m = m * x[i];
          s = s + m;
        }
        return s;
      };
    }
  }
  throw Error(ErrorCode::InvalidInput, "unknown v kind");
}

DerivativeProvider parse_provider(const std::string& name) {
  if (name == "taylor") return DerivativeProvider::taylor();
  if (name == "fd" || name == "fd4") return DerivativeProvider::finite_difference(4);
  if (name == "fd2") return DerivativeProvider::finite_difference(2);
  config_error("provider must be taylor, fd, fd2 or fd4");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  reject_unknown(root,
                 {"schema_version", "manifold", "v", "task", "cone", "grid_resolution", "N_max", "margin_req",
                  "provider", "seed", "output_dir", "tolerance", "formula_check"},
                 "");

  ExperimentConfig c;
  c.schema_version = read<int>(require(root, "schema_version", ""), "schema_version");
  c.task = read<std::string>(require(root, "task", ""), "task");

  const json& m = require(root, "manifold", "");
  reject_unknown(m, {"name", "dim", "inner_radius", "outer_radius", "amplitude", "seed"}, "manifold.");
  c.manifold.name = read<std::string>(require(m, "name", "manifold."), "manifold.name");
  c.manifold.dim = read<int>(require(m, "dim", "manifold."), "manifold.dim");
  if (m.contains("inner_radius")) c.manifold.inner_radius = read<double>(m.at("inner_radius"), "manifold.inner_radius");
  if (m.contains("outer_radius")) c.manifold.outer_radius = read<double>(m.at("outer_radius"), "manifold.outer_radius");
  read_optional(m, "amplitude", "manifold.", c.manifold.amplitude);
  read_optional(m, "seed", "manifold.", c.manifold.seed);

  // Radial v is singular at the origin, which box charts contain.
  c.v.kind = is_shell(c.manifold.name) ? VSpec::Kind::Radial : VSpec::Kind::Linear;
  if (root.contains("v")) {
    const json& v = root.at("v");
    reject_unknown(v, {"kind", "center", "coefficients", "terms", "normalize_band"}, "v.");
    const auto kind = read<std::string>(require(v, "kind", "v."), "v.kind");
    if (kind == "radial") {
      c.v.kind = VSpec::Kind::Radial;
    } else if (kind == "linear") {
      c.v.kind = VSpec::Kind::Linear;
    } else if (kind == "custom_polynomial") {
      c.v.kind = VSpec::Kind::CustomPolynomial;
    } else {
      config_error("v.kind must be radial, linear or custom_polynomial");
    }
    read_optional(v, "center", "v.", c.v.center);
    read_optional(v, "coefficients", "v.", c.v.coefficients);
    if (v.contains("terms")) {
      const json& terms = v.at("terms");
      if (!terms.is_array()) config_error("key 'v.terms' must be an array");
      for (const auto& t : terms) {
        reject_unknown(t, {"coefficient", "powers"}, "v.terms[].");
        Monomial mono;
        mono.coefficient = read<double>(require(t, "coefficient", "v.terms[]."), "v.terms[].coefficient");
        mono.powers = read<std::vector<int>>(require(t, "powers", "v.terms[]."), "v.terms[].powers");
        c.v.terms.push_back(std::move(mono));
      }
    }
    if (v.contains("normalize_band")) {
      const json& band = v.at("normalize_band");
      if (band.is_null()) {
        c.v.normalize_band.reset();
      } else {
        c.v.normalize_band = read<double>(band, "v.normalize_band");
      }
    }
  }

  if (root.contains("cone")) {
    const json& cone = root.at("cone");
    reject_unknown(cone, {"family", "k"}, "cone.");
    const auto family = read<std::string>(require(cone, "family", "cone."), "cone.family");
    int k = 1;
    if (family != "sum") k = read<int>(require(cone, "k", "cone."), "cone.k");
    if (c.manifold.dim < 1 || c.manifold.dim > kMaxDim) config_error("manifold.dim must be in [3, 6]");
    if (k < 1 || k > c.manifold.dim) config_error("cone.k must be in [1, manifold.dim]");
    c.cone = make_cone(family, c.manifold.dim, k);
  }

  read_optional(root, "grid_resolution", "", c.grid_resolution);
  read_optional(root, "N_max", "", c.n_max);
  read_optional(root, "margin_req", "", c.margin_req);
  read_optional(root, "seed", "", c.seed);
  read_optional(root, "output_dir", "", c.output_dir);
  read_optional(root, "tolerance", "", c.tolerance);

  if (root.contains("provider")) {
    const json& p = root.at("provider");
    reject_unknown(p, {"kind", "order", "step"}, "provider.");
    const auto kind = read<std::string>(require(p, "kind", "provider."), "provider.kind");
    if (kind == "taylor") {
      c.provider = DerivativeProvider::taylor();
    } else if (kind == "fd") {
      c.provider = DerivativeProvider::finite_difference();
      read_optional(p, "order", "provider.", c.provider.order);
      read_optional(p, "step", "provider.", c.provider.step);
    } else {
      config_error("provider.kind must be taylor or fd");
    }
  }

  if (root.contains("formula_check")) {
    const json& f = root.at("formula_check");
    reject_unknown(f, {"fields", "points"}, "formula_check.");
    read_optional(f, "fields", "formula_check.", c.formula_fields);
    read_optional(f, "points", "formula_check.", c.formula_points);
  }

  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate(const ExperimentConfig& c) {
  if (c.schema_version != kSchemaVersion) config_error("schema_version must be 1");
  if (std::find(task_names().begin(), task_names().end(), c.task) == task_names().end())
    config_error("task must be one of curvature, cone, thm12, thm13, formula_check");
  if (c.manifold.dim < 3 || c.manifold.dim > kMaxDim) config_error("manifold.dim must be in [3, 6]");
  if (!(c.n_max >= 1.0)) config_error("N_max must be >= 1");
  if (!(c.margin_req > 0.0)) config_error("margin_req must be positive");
  if (!(c.tolerance > 0.0)) config_error("tolerance must be positive");
  if (c.grid_resolution < 2) config_error("grid_resolution must be >= 2");
  if (c.formula_fields < 1 || c.formula_points < 1) config_error("formula_check counts must be positive");
  if (c.v.normalize_band && !(*c.v.normalize_band > 0.0)) config_error("v.normalize_band must be positive");
  if (c.provider.kind == DerivativeProvider::Kind::FiniteDifference) {
    if (c.provider.order != 2 && c.provider.order != 4) config_error("provider.order must be 2 or 4");
    if (!(c.provider.step > 0.0)) config_error("provider.step must be positive");
  }
  if (c.task == "cone" && !c.cone) config_error("missing key 'cone' (required by task cone)");
  if (c.cone && c.cone->dim() != c.manifold.dim) config_error("cone dimension differs from manifold.dim");
  if ((c.manifold.inner_radius || c.manifold.outer_radius) && !is_shell(c.manifold.name))
    config_error("manifold radii apply to shell charts only");
  try {
    (void)make_chart(c.manifold);
    (void)make_v(c.v, c.manifold.dim);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(e.what());
  }
}

std::string to_json(const ExperimentConfig& c) {
  json m = {{"name", c.manifold.name}, {"dim", c.manifold.dim}};
  if (c.manifold.inner_radius) m["inner_radius"] = *c.manifold.inner_radius;
  if (c.manifold.outer_radius) m["outer_radius"] = *c.manifold.outer_radius;
  if (c.manifold.name == "perturbed_flat") {
    m["amplitude"] = c.manifold.amplitude;
    m["seed"] = c.manifold.seed;
  }

  json v = {{"kind", v_kind_name(c.v.kind)}};
  if (!c.v.center.empty()) v["center"] = c.v.center;
  if (!c.v.coefficients.empty()) v["coefficients"] = c.v.coefficients;
  if (!c.v.terms.empty()) {
    json terms = json::array();
    for (const auto& t : c.v.terms) terms.push_back({{"coefficient", t.coefficient}, {"powers", t.powers}});
    v["terms"] = terms;
  }
  v["normalize_band"] = c.v.normalize_band ? json(*c.v.normalize_band) : json(nullptr);

  json provider = {{"kind", c.provider.kind == DerivativeProvider::Kind::ForwardTaylor ? "taylor" : "fd"}};
  if (c.provider.kind == DerivativeProvider::Kind::FiniteDifference) {
    provider["order"] = c.provider.order;
    provider["step"] = c.provider.step;
  }

  json root = {{"schema_version", c.schema_version},
               {"task", c.task},
               {"manifold", m},
               {"v", v},
               {"grid_resolution", c.grid_resolution},
               {"N_max", c.n_max},
               {"margin_req", c.margin_req},
               {"provider", provider},
               {"seed", c.seed},
               {"output_dir", c.output_dir},
               {"tolerance", c.tolerance},
               {"formula_check", {{"fields", c.formula_fields}, {"points", c.formula_points}}}};
  if (c.cone) {
    json cone = {{"family", family_name(c.cone->family())}};
    if (c.cone->family() != ConeFamily::HalfSpaceSum) cone["k"] = c.cone->k();
    root["cone"] = cone;
  }
  return root.dump(2);
}

// ---------------------------------------------------------------------------
// Tasks

namespace {

using Clock = std::chrono::steady_clock;

double scale_error(double value, double target) { return std::abs(value - target) / std::max(std::abs(target), 1.0); }


// Random unit-free plane pairs drawn point-major from rng.
std::vector<Vector> draw_planes(Rng& rng, int n, std::size_t count) {
  std::vector<Vector> out;
  out.reserve(2 * count);
  for (std::size_t p = 0; p < 2 * count; ++p) {
    Vector x(n);
    for (int c = 0; c < n; ++c) x(c) = rng.normal();
    out.push_back(x);
  }
  return out;
}

VerificationReport curvature_task(const ExperimentConfig& config, const ChartMetric& chart, const Grid& grid) {
  VerificationReport report;
  const int n = chart.dim();
  const auto k = space_form_curvature(chart.name());
  const double tol = config.tolerance;

  struct PointResult {
    double symmetry = 0.0, weyl = 0.0, scalar = 0.0, schouten = 0.0, einstein = 0.0, frame = 0.0, min_a = 0.0;
  };
  std::vector<PointResult> results(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto geom = LocalGeometry::at(chart, config.provider, grid.point(i));
    PointResult& r = results[i];
    r.symmetry = geom.riemann().symmetry_residual() / (geom.riemann().norm() + 1.0);
    r.weyl = weyl_residual(geom);
    const SymForm a = geom.schouten();
    const EigenSystem frame = generalized_eigensystem(a, geom.metric());
    r.min_a = frame.values.min();
    // K on coordinate planes of the A-eigenframe against A_ii + A_jj.
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double kpq = geom.sectional(frame.vectors.col(p), frame.vectors.col(q));
        r.frame = std::max(r.frame, scale_error(kpq, frame.values[p] + frame.values[q]));
      }
    if (k) {
      const SymForm& g = geom.metric().form();
      r.scalar = scale_error(geom.scalar_curvature(), n * (n - 1) * *k);
      r.schouten = relative_error(a, g * (*k / 2.0));
      r.einstein = relative_error(geom.einstein(), g * ((n - 1) * (2.0 - n) * *k / 2.0));
    }
  });

  PointResult worst;
  for (const auto& r : results) {
    worst.symmetry = std::max(worst.symmetry, r.symmetry);
    worst.weyl = std::max(worst.weyl, r.weyl);
    worst.scalar = std::max(worst.scalar, r.scalar);
    worst.schouten = std::max(worst.schouten, r.schouten);
    worst.einstein = std::max(worst.einstein, r.einstein);
    worst.frame = std::max(worst.frame, r.frame);
    report.point_min_eigenvalues.push_back(r.min_a);
  }
  report.eigen_extremes = summarize(report.point_min_eigenvalues);
  report.weyl_residual = worst.weyl;
  report.metrics["riemann_symmetry_residual"] = worst.symmetry;
  report.metrics["weyl_residual"] = worst.weyl;
  report.checks["riemann_symmetries"] = worst.symmetry <= 1e-8;

  const bool lcf = worst.weyl <= tol;
  if (lcf) {
    report.metrics["eigenframe_sectional_error"] = worst.frame;
    report.checks["eigenframe_sectional"] = worst.frame <= tol;
  } else {
    report.notes.push_back("Weyl residual above tolerance; eigenframe sectional identity not expected");
  }

  Rng rng(config.seed);
  const Grid samples = sample_points(chart, 50, rng);
  const auto planes = draw_planes(rng, n, samples.size() * 100);
  std::vector<double> curv(samples.size() * 100);
  parallel_for(samples.size(), [&](std::size_t i) {
    const auto geom = LocalGeometry::at(chart, config.provider, samples.point(i));
    for (std::size_t p = 0; p < 100; ++p)
      curv[i * 100 + p] = geom.sectional(planes[2 * (i * 100 + p)], planes[2 * (i * 100 + p) + 1]);
  });
  report.sectional_samples = curv;
  report.sectional_summary = summarize(curv);

  if (k) {
    double sec = 0.0;
    for (double c : curv) sec = std::max(sec, scale_error(c, *k));
    report.metrics["space_form_curvature"] = *k;
    report.metrics["scalar_curvature_error"] = worst.scalar;
    report.metrics["schouten_error"] = worst.schouten;
    report.metrics["einstein_error"] = worst.einstein;
    report.metrics["sectional_error"] = sec;
    report.checks["scalar_curvature"] = worst.scalar <= tol;
    report.checks["schouten"] = worst.schouten <= tol;
    report.checks["einstein"] = worst.einstein <= tol;
    report.checks["sectional_constant"] = sec <= tol;
    report.checks["weyl"] = lcf;
  }
  return report;
}

struct RandomField {
  double a0 = 0.0, b = 0.0, c = 0.0, phase = 0.0;
  std::vector<double> a, k;
};

RandomField draw_field(Rng& rng, int n) {
  RandomField f;
  f.a0 = rng.uniform(-0.5, 0.5);
  f.b = rng.uniform(-0.5, 0.5);
  f.c = rng.uniform(-0.2, 0.2);
  f.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    f.a.push_back(rng.uniform(-0.5, 0.5));
    f.k.push_back(rng.uniform(-2.0, 2.0));
  }
  return f;
}

// a0 + a.x + b sin(k.x + phase) + c |x|^2
ScalarField make_field(const RandomField& f) {
  return [f](auto x) {
    using std::sin;
    using T = scalar_of<decltype(x)>;
    T lin(f.a0), arg(f.phase), r2(0.0);
    for (std::size_t i = 0; i < f.a.size(); ++i) {
      lin = lin + f.a[i] * x[i];
      arg = arg + f.k[i] * x[i];
      r2 = r2 + x[i] * x[i];
    }
    return lin + f.b * sin(arg) + f.c * r2;
  };
}

VerificationReport formula_check_task(const ExperimentConfig& config, const ChartMetric& chart) {
  VerificationReport report;
  const int n = chart.dim();
  Rng rng(config.seed);

  double e_schouten = 0.0, e_modified = 0.0, e_bakry = 0.0, e_fixed = 0.0;
  for (int field = 0; field < config.formula_fields; ++field) {
    const ScalarField u = make_field(draw_field(rng, n));
    const ScalarField phi = make_field(draw_field(rng, n));
    const double tau = rng.uniform(0.0, n);
    const double zeta = rng.uniform(0.5, 2.0);
    const double n_dim = n + 1.0 + 3.0 * rng.uniform();
    const ScalarField phi_fixed = [phi, u, n](auto x) { return phi(x) + static_cast<double>(n) * u(x); };
    const ChartMetric scaled = conformal_metric(chart, u);
    const Grid points = sample_points(chart, static_cast<std::size_t>(config.formula_points), rng);

    std::vector<std::array<double, 4>> errors(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      const auto x = points.point(i);
      const auto geom = LocalGeometry::at(chart, config.provider, x);
      const auto geom_u = LocalGeometry::at(scaled, config.provider, x);
      const ConformalJet jet = ConformalJet::from(scalar_jet(u, chart, config.provider, x), geom);
      const MetricValue& g = geom.metric();
      const ScalarJet phi_jet = scalar_jet(phi, chart, config.provider, x);

      const SymForm be = bakry_emery_conformal(geom.bakry_emery(phi_jet, n_dim), jet, g, phi_jet.grad);
      errors[i] = {
          relative_error(minus_schouten_conformal(geom.schouten(), jet, g), -geom_u.schouten()),
          relative_error(modified_schouten_conformal(geom.modified_schouten(tau, zeta), jet, g, tau, zeta),
                         geom_u.modified_schouten(tau, zeta)),
          relative_error(be, -geom_u.bakry_emery(phi_jet, n_dim)),
          relative_error(be, -geom_u.bakry_emery(scalar_jet(phi_fixed, chart, config.provider, x), n_dim)),
      };
    });
    for (const auto& e : errors) {
      e_schouten = std::max(e_schouten, e[0]);
      e_modified = std::max(e_modified, e[1]);
      e_bakry = std::max(e_bakry, e[2]);
      e_fixed = std::max(e_fixed, e[3]);
    }
  }

  report.metrics["schouten_formula_error"] = e_schouten;
  report.metrics["modified_schouten_formula_error"] = e_modified;
  report.metrics["bakry_emery_formula_error"] = e_bakry;
  report.metrics["bakry_emery_fixed_measure_error"] = e_fixed;
  report.checks["schouten_formula"] = e_schouten <= config.tolerance;
  report.checks["modified_schouten_formula"] = e_modified <= config.tolerance;
  report.checks["bakry_emery_formula"] = e_bakry <= config.tolerance;
  report.notes.push_back("N-Ricci formula compared with the same potential phi on g_u; "
                         "bakry_emery_fixed_measure_error uses phi + n u instead");
  return report;
}

VerificationReport cone_task(const ExperimentConfig& config, const ChartMetric& chart, const Grid& grid) {
  VerificationReport report;
  const int n = chart.dim();
  const ScalarField v = make_v(config.v, n);

  AnsatzConfig ansatz = negative_sectional_config(n, v, config.v.normalize_band);
  ansatz.cone = *config.cone;
  report.metrics["rho_cone"] = rho(ansatz.cone);

  const NSearchResult search = find_min_N(ansatz, chart, grid, config.n_max, config.margin_req, config.provider);
  report.case_tag = to_string(search.case_tag.kind);
  if (!search.case_tag.detail.empty()) report.notes.push_back("case: " + search.case_tag.detail);
  report.n_found = search.n_found;
  report.margin_profile = search.profile;
  report.point_min_eigenvalues = search.point_min_eigenvalues;
  report.eigen_extremes = summarize(search.point_min_eigenvalues);
  report.checks["morse"] = search.morse.ok;
  report.checks["n_search"] = search.n_found.has_value();
  if (!search.diagnostic.empty()) report.notes.push_back(search.diagnostic);

  if (search.n_found) {
    // lambda(-A_{g_u}) recomputed from the metric g_u itself.
    std::vector<char> direct(grid.size()), predicted(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
      const auto x0 = grid.point(i);
      const ChartMetric scaled = conformal_metric(chart, shifted_exponential(search.v_used, *search.n_found, x0));
      const auto geom = LocalGeometry::at(scaled, config.provider, x0);
      direct[i] = contains(ansatz.cone, generalized_eigenvalues(-geom.schouten(), geom.metric())) ? 1 : 0;
      const AnsatzPoint point = prepare_point(ansatz, search.v_used, chart, config.provider, x0);
      predicted[i] = point_margin(ansatz, point, *search.n_found) > kBoundaryMargin ? 1 : 0;
    });
    report.checks["direct_membership"] = std::all_of(direct.begin(), direct.end(), [](char c) { return c != 0; });
    report.checks["pipeline_direct_agreement"] = direct == predicted;
  }
  return report;
}

}  // namespace

RunOutcome run(const ExperimentConfig& config) {
  validate(config);
  const auto start = Clock::now();
  RunOutcome out;
  try {
    const ChartMetric chart = make_chart(config.manifold);
    const Grid grid = make_grid(chart, config.grid_resolution);
    PipelineOptions options;
    options.provider = config.provider;
    options.margin_req = config.margin_req;
    options.normalize_band = config.v.normalize_band;
    options.seed = config.seed;

    if (config.task == "thm13") {
      out.report = construct_negative_sectional(chart, make_v(config.v, chart.dim()), grid, config.n_max, options);
    } else if (config.task == "thm12") {
      out.report = construct_positive_einstein(chart, make_v(config.v, chart.dim()), grid, config.n_max, options);
    } else if (config.task == "curvature") {
      out.report = curvature_task(config, chart, grid);
    } else if (config.task == "formula_check") {
      out.report = formula_check_task(config, chart);
    } else {
      out.report = cone_task(config, chart, grid);
    }
  } catch (const Error& e) {
    out.report = VerificationReport{};
    out.report.notes.push_back(std::string("pipeline failure: ") + e.what());
    out.report.checks["pipeline"] = false;
  }
  out.report.task = config.task;
  out.report.seed = config.seed;
  out.report.config_echo = to_json(config);
  out.report.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.exit_code = out.report.passed() ? 0 : 1;
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

json summary_json(const SampleSummary& s) { return {{"min", s.min}, {"max", s.max}, {"count", s.count}}; }

SampleSummary summary_from(const json& j) {
  SampleSummary s;
  s.min = j.at("min").get<double>();
  s.max = j.at("max").get<double>();
  s.count = j.at("count").get<std::size_t>();
  return s;
}

// Non-finite doubles have no JSON literal; they are stored as strings.
json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string report_to_json(const VerificationReport& r) {
  json profile = json::array();
  for (const auto& row : r.margin_profile)
    profile.push_back({{"N", number(row.n)}, {"worst_margin", number(row.worst_margin)}, {"success", row.success}});
  json eig = json::array(), sec = json::array();
  for (double x : r.point_min_eigenvalues) eig.push_back(number(x));
  for (double x : r.sectional_samples) sec.push_back(number(x));
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = number(v);

  json root = {{"schema_version", kSchemaVersion},
               {"task", r.task},
               {"verdict", r.passed() ? "pass" : "fail"},
               {"config", r.config_echo.empty() ? json(nullptr) : json::parse(r.config_echo)},
               {"case_tag", r.case_tag},
               {"N_found", r.n_found ? number(*r.n_found) : json(nullptr)},
               {"margin_profile", profile},
               {"eigen_extremes", summary_json(r.eigen_extremes)},
               {"point_min_eigenvalues", eig},
               {"sectional_summary", summary_json(r.sectional_summary)},
               {"sectional_samples", sec},
               {"weyl_residual", number(r.weyl_residual)},
               {"checks", r.checks},
               {"metrics", metrics},
               {"notes", r.notes},
               {"seed", r.seed},
               {"wall_clock_seconds", r.wall_clock_seconds}};
  return root.dump(2);
}

VerificationReport report_from_json(const std::string& json_text) {
  VerificationReport r;
  try {
    const json root = json::parse(json_text);
    if (root.at("schema_version").get<int>() != kSchemaVersion) config_error("report schema_version must be 1");
    r.task = root.at("task").get<std::string>();
    if (!root.at("config").is_null()) r.config_echo = root.at("config").dump(2);
    r.case_tag = root.at("case_tag").get<std::string>();
    if (!root.at("N_found").is_null()) r.n_found = number_from(root.at("N_found"));
    for (const auto& row : root.at("margin_profile"))
      r.margin_profile.push_back({number_from(row.at("N")), number_from(row.at("worst_margin")), row.at("success").get<bool>()});
    r.eigen_extremes = summary_from(root.at("eigen_extremes"));
    for (const auto& x : root.at("point_min_eigenvalues")) r.point_min_eigenvalues.push_back(number_from(x));
    r.sectional_summary = summary_from(root.at("sectional_summary"));
    for (const auto& x : root.at("sectional_samples")) r.sectional_samples.push_back(number_from(x));
    r.weyl_residual = number_from(root.at("weyl_residual"));
    r.checks = root.at("checks").get<std::map<std::string, bool>>();
    for (const auto& [k, v] : root.at("metrics").items()) r.metrics[k] = number_from(v);
    r.notes = root.at("notes").get<std::vector<std::string>>();
    r.seed = root.at("seed").get<std::uint64_t>();
    r.wall_clock_seconds = root.at("wall_clock_seconds").get<double>();
  } catch (const json::exception& e) {
    config_error(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::filesystem::path write_report(const VerificationReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  const auto path = dir / "report.json";
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << report_to_json(report) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  return path;
}

VerificationReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read report " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return report_from_json(buffer.str());
}

namespace {

class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& path) : path_(path), f_(std::fopen(path.string().c_str(), "w")) {
    if (!f_) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  ~CsvFile() {
    if (f_) std::fclose(f_);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  void line(const std::string& text) { std::fprintf(f_, "%s\n", text.c_str()); }
  void row(double a, double b) { std::fprintf(f_, "%.17g,%.17g\n", a, b); }
  void row(std::size_t i, double b) { std::fprintf(f_, "%zu,%.17g\n", i, b); }
  void row(double a, double b, int c) { std::fprintf(f_, "%.17g,%.17g,%d\n", a, b, c); }

  void close() {
    const bool failed = std::ferror(f_) != 0;
    const bool close_failed = std::fclose(f_) != 0;
    f_ = nullptr;
    if (failed || close_failed) throw Error(ErrorCode::IoError, "write failed for " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::FILE* f_;
};

std::string eigen_column_doc(const std::string& task) {
  if (task == "curvature") return "smallest eigenvalue of the Schouten tensor relative to g at the grid point";
  return "smallest eigenvalue of the max-norm-normalized ansatz form relative to g at N_found";
}

}  // namespace

std::vector<std::filesystem::path> emit_plotdata(const VerificationReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths = {dir / "margin.csv", dir / "eigen.csv", dir / "sectional.csv"};

  CsvFile margin(paths[0]);
  margin.line("# N: ansatz exponent probed; worst_margin: smallest cone margin over the grid; "
              "success: 1 when worst_margin >= margin_req");
  margin.line("N,worst_margin,success");
  for (const auto& row : report.margin_profile) margin.row(row.n, row.worst_margin, row.success ? 1 : 0);
  margin.close();

  CsvFile eigen(paths[1]);
  eigen.line("# point_index: grid point index; min_eigenvalue: " + eigen_column_doc(report.task));
  eigen.line("point_index,min_eigenvalue");
  for (std::size_t i = 0; i < report.point_min_eigenvalues.size(); ++i) eigen.row(i, report.point_min_eigenvalues[i]);
  eigen.close();

  CsvFile sectional(paths[2]);
  sectional.line("# plane_index: random 2-plane index, point-major; K: sectional curvature "
                 "(constructions: of e^{-2u(x0)} g_u at the sample point x0)");
  sectional.line("plane_index,K");
  for (std::size_t i = 0; i < report.sectional_samples.size(); ++i) sectional.row(i, report.sectional_samples[i]);
  sectional.close();
  return paths;
}

}  // namespace curvcone
