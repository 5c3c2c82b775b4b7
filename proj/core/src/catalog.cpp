#include "curvcone/catalog.hpp"

#include "curvcone/error.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace curvcone {

namespace {

std::vector<bool> all_faces(int n, bool flag) { return std::vector<bool>(static_cast<std::size_t>(2 * n), flag); }

void check_dim(int n) {
  if (n < 2 || n > kMaxDim) throw Error(ErrorCode::InvalidInput, "catalog dimension must be in [2,6]");
}

void check_shell(double inner, double outer) {
  if (!(0.0 < inner && inner < outer)) throw Error(ErrorCode::InvalidInput, "shell radii must satisfy 0 < inner < outer");
}

// Conformally flat metric f(|x|^2) delta.
template <class Profile>
MetricField radial_conformal(int n, Profile profile) {
  return [n, profile](auto x) {
    using T = scalar_of<decltype(x)>;
    return SymComponents<T>::scaled_identity(n, profile(squared_norm(x)));
  };
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"euclidean_box", "flat_shell", "sphere_band", "poincare_shell",
                                                 "perturbed_flat"};
  return names;
}

ChartMetric euclidean_box(int n) {
  check_dim(n);
  return ChartMetric("euclidean_box", n, std::vector<double>(static_cast<std::size_t>(n), 0.0),
                     std::vector<double>(static_cast<std::size_t>(n), 1.0), all_faces(n, true),
                     radial_conformal(n, [](auto) { return 1.0; }));
}

ChartMetric flat_shell(int n, double inner, double outer) {
  check_dim(n);
  check_shell(inner, outer);
  return ChartMetric("flat_shell", n, std::vector<double>(static_cast<std::size_t>(n), -outer),
                     std::vector<double>(static_cast<std::size_t>(n), outer), all_faces(n, false),
                     radial_conformal(n, [](auto) { return 1.0; }), Shell{inner, outer});
}

ChartMetric sphere_band(int n, double inner, double outer) {
  check_dim(n);
  check_shell(inner, outer);
  auto profile = [](const auto& r2) {
    const auto d = 1.0 + r2;
    return 4.0 / (d * d);
  };
  return ChartMetric("sphere_band", n, std::vector<double>(static_cast<std::size_t>(n), -outer),
                     std::vector<double>(static_cast<std::size_t>(n), outer), all_faces(n, false),
                     radial_conformal(n, profile), Shell{inner, outer});
}

ChartMetric poincare_shell(int n, double inner, double outer) {
  check_dim(n);
  check_shell(inner, outer);
  if (outer >= 1.0) throw Error(ErrorCode::InvalidInput, "poincare_shell must stay inside the unit ball");
  auto profile = [](const auto& r2) {
    const auto d = 1.0 - r2;
    return 4.0 / (d * d);
  };
  return ChartMetric("poincare_shell", n, std::vector<double>(static_cast<std::size_t>(n), -outer),
                     std::vector<double>(static_cast<std::size_t>(n), outer), all_faces(n, false),
                     radial_conformal(n, profile), Shell{inner, outer});
}

ChartMetric perturbed_flat(int n, double amplitude, std::uint64_t seed) {
  check_dim(n);
  if (!(std::abs(amplitude) <= 0.05)) throw Error(ErrorCode::InvalidInput, "perturbation amplitude must be <= 0.05");

  struct Wave {
    std::array<double, kMaxDim> k{}, q{};
    double p = 0.0, s = 0.0;
  };
  auto waves = std::make_shared<std::vector<Wave>>(static_cast<std::size_t>(n * n));
  Rng rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Wave& w = (*waves)[static_cast<std::size_t>(i * n + j)];
      for (int c = 0; c < n; ++c) {
        w.k[static_cast<std::size_t>(c)] = rng.uniform(1.0, 4.0);
        w.q[static_cast<std::size_t>(c)] = rng.uniform(1.0, 4.0);
      }
      w.p = rng.uniform(0.0, 6.283185307179586);
      w.s = rng.uniform(0.0, 6.283185307179586);
    }

  MetricField metric = [n, amplitude, waves](auto x) {
    using T = scalar_of<decltype(x)>;
    using std::sin;
    SymComponents<T> g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const Wave& w = (*waves)[static_cast<std::size_t>(i * n + j)];
        T a(w.p), b(w.s);
        for (int c = 0; c < n; ++c) {
          a += w.k[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
          b += w.q[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
        }
        T value = amplitude * sin(a) * sin(b);
        if (i == j) value += 1.0;
        g.set(i, j, value);
      }
    return g;
  };
  return ChartMetric("perturbed_flat", n, std::vector<double>(static_cast<std::size_t>(n), 0.0),
                     std::vector<double>(static_cast<std::size_t>(n), 1.0), all_faces(n, true), std::move(metric));
}

ChartMetric make_chart(const ManifoldSpec& spec) {
  const auto& name = spec.name;
  if (name == "euclidean_box") return euclidean_box(spec.dim);
  if (name == "flat_shell") return flat_shell(spec.dim, spec.inner_radius.value_or(1.0), spec.outer_radius.value_or(2.0));
  if (name == "sphere_band") return sphere_band(spec.dim, spec.inner_radius.value_or(0.5), spec.outer_radius.value_or(1.5));
  if (name == "poincare_shell")
    return poincare_shell(spec.dim, spec.inner_radius.value_or(0.25), spec.outer_radius.value_or(0.5));
  if (name == "perturbed_flat") return perturbed_flat(spec.dim, spec.amplitude, spec.seed);
  throw Error(ErrorCode::ConfigError, "unknown catalog manifold '" + name + "'");
}

std::optional<double> space_form_curvature(const std::string& catalog_name) {
  if (catalog_name == "euclidean_box" || catalog_name == "flat_shell") return 0.0;
  if (catalog_name == "sphere_band") return 1.0;
  if (catalog_name == "poincare_shell") return -1.0;
  return std::nullopt;
}

void Grid::add(std::span<const double> x, bool on_boundary) {
  if (static_cast<int>(x.size()) != dim_) throw Error(ErrorCode::DimensionMismatch, "grid point size");
  coords_.insert(coords_.end(), x.begin(), x.end());
  boundary_.push_back(on_boundary ? 1 : 0);
}

std::size_t Grid::boundary_count() const {
  return static_cast<std::size_t>(std::count(boundary_.begin(), boundary_.end(), char{1}));
}

namespace {

// Calls visit(index) for every multi-index in {0..res-1}^n.
template <class Visit>
void for_each_index(int n, int res, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(idx);
    int axis = 0;
    while (axis < n && ++idx[static_cast<std::size_t>(axis)] == res) {
      idx[static_cast<std::size_t>(axis)] = 0;
      ++axis;
    }
    if (axis == n) return;
  }
}

}  // namespace

Grid make_grid(const ChartMetric& chart, int resolution) {
  if (resolution < 2) throw Error(ErrorCode::InvalidInput, "grid resolution must be >= 2");
  const int n = chart.dim();
  Grid grid(n);
  std::vector<double> x(static_cast<std::size_t>(n));

  for_each_index(n, resolution, [&](const std::vector<int>& idx) {
    bool boundary = false;
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const double t = static_cast<double>(idx[ui]) / (resolution - 1);
      x[ui] = chart.lower()[ui] + t * (chart.upper()[ui] - chart.lower()[ui]);
      if (idx[ui] == 0 && chart.boundary_faces()[2 * ui]) boundary = true;
      if (idx[ui] == resolution - 1 && chart.boundary_faces()[2 * ui + 1]) boundary = true;
      if (idx[ui] == 0) x[ui] = chart.lower()[ui];
      if (idx[ui] == resolution - 1) x[ui] = chart.upper()[ui];
    }
    if (chart.in_domain(x)) grid.add(x, boundary);
  });

  if (const auto& shell = chart.shell()) {
    // The spheres get a coarser cube-surface grid; at full resolution the
    // (n-1)-dimensional boundary would outnumber the interior points.
    const int surface_res = std::max(3, (resolution + 1) / 2);
    for_each_index(n, surface_res, [&](const std::vector<int>& idx) {
      bool on_surface = false;
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (idx[ui] == 0 || idx[ui] == surface_res - 1) on_surface = true;
        x[ui] = -1.0 + 2.0 * static_cast<double>(idx[ui]) / (surface_res - 1);
        r2 += x[ui] * x[ui];
      }
      if (!on_surface) return;
      const double r = std::sqrt(r2);
      for (double radius : {shell->inner, shell->outer}) {
        std::vector<double> y(x);
        for (double& c : y) c *= radius / r;
        if (chart.in_box(y)) grid.add(y, true);
      }
    });
  }
  return grid;
}

Grid sample_points(const ChartMetric& chart, std::size_t count, Rng& rng, double boundary_fraction) {
  const int n = chart.dim();
  Grid out(n);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<int> faces;
  for (int f = 0; f < 2 * n; ++f)
    if (chart.boundary_faces()[static_cast<std::size_t>(f)]) faces.push_back(f);

  const auto boundary_target = static_cast<std::size_t>(std::lround(boundary_fraction * static_cast<double>(count)));
  const bool has_boundary = chart.shell().has_value() || !faces.empty();
  while (out.size() < count) {
    const bool want_boundary = has_boundary && out.size() < boundary_target;
    if (want_boundary && chart.shell()) {
      double r2 = 0.0;
      for (double& c : x) {
        c = rng.normal();
        r2 += c * c;
      }
      const double radius = rng.uniform() < 0.5 ? chart.shell()->inner : chart.shell()->outer;
      for (double& c : x) c *= radius / std::sqrt(r2);
      if (chart.in_box(x)) out.add(x, true);
      continue;
    }
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      x[ui] = rng.uniform(chart.lower()[ui], chart.upper()[ui]);
    }
    if (want_boundary) {
      const int f = faces[static_cast<std::size_t>(rng.index(static_cast<int>(faces.size())))];
      const auto axis = static_cast<std::size_t>(f / 2);
      x[axis] = (f % 2 == 0) ? chart.lower()[axis] : chart.upper()[axis];
    }
    if (chart.in_domain(x)) out.add(x, want_boundary);
  }
  return out;
}

}  // namespace curvcone
