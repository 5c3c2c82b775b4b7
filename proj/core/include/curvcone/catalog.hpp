#pragma once

// Closed-form chart metrics used by the experiments, plus sampling grids.

#include "curvcone/geometry.hpp"
#include "curvcone/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curvcone {

struct ManifoldSpec {
  std::string name;
  int dim = 3;
  std::optional<double> inner_radius;
  std::optional<double> outer_radius;
  double amplitude = 0.05;
  std::uint64_t seed = 1;
};

/// Names accepted by make_chart.
const std::vector<std::string>& catalog_names();

ChartMetric euclidean_box(int n);
ChartMetric flat_shell(int n, double inner = 1.0, double outer = 2.0);
/// Stereographic chart of the unit sphere, 4 (1+|x|^2)^-2 delta, on an annulus.
ChartMetric sphere_band(int n, double inner = 0.5, double outer = 1.5);
/// Poincare ball metric 4 (1-|x|^2)^-2 delta on a shell.
ChartMetric poincare_shell(int n, double inner = 0.25, double outer = 0.5);
/// delta_ij + a * sin(k.x + p) sin(q.x + s) on [0,1]^n, wave data drawn from the seed.
ChartMetric perturbed_flat(int n, double amplitude = 0.05, std::uint64_t seed = 1);

ChartMetric make_chart(const ManifoldSpec& spec);

/// Constant sectional curvature of a catalog chart, when it is a space form.
std::optional<double> space_form_curvature(const std::string& catalog_name);

class Grid {
 public:
  Grid() = default;
  explicit Grid(int dim) : dim_(dim) {}

  void add(std::span<const double> x, bool on_boundary);

  int dim() const { return dim_; }
  std::size_t size() const { return boundary_.size(); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  bool on_boundary(std::size_t i) const { return boundary_[i] != 0; }
  std::size_t boundary_count() const;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
  std::vector<char> boundary_;
};

/// Uniform tensor grid over the chart box (resolution points per axis, faces
/// included) restricted to the domain. Shell charts additionally get both
/// bounding spheres sampled by radially projecting the cube-surface grid.
Grid make_grid(const ChartMetric& chart, int resolution);

/// Random domain points; about boundary_fraction of them lie on the boundary.
Grid sample_points(const ChartMetric& chart, std::size_t count, Rng& rng, double boundary_fraction = 0.2);

}  // namespace curvcone
