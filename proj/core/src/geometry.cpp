#include "curvcone/geometry.hpp"

#include "curvcone/error.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace curvcone {

ChartMetric::ChartMetric(std::string name, int dim, std::vector<double> lower, std::vector<double> upper,
                         std::vector<bool> boundary_faces, MetricField metric, std::optional<Shell> shell)
    : name_(std::move(name)),
      dim_(dim),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      boundary_faces_(std::move(boundary_faces)),
      metric_(std::move(metric)),
      shell_(shell) {
  if (dim_ < 2 || dim_ > kMaxDim) throw Error(ErrorCode::InvalidInput, "chart dimension must be in [2,6]");
  if (static_cast<int>(lower_.size()) != dim_ || static_cast<int>(upper_.size()) != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "chart box bounds");
  }
  if (static_cast<int>(boundary_faces_.size()) != 2 * dim_) {
    throw Error(ErrorCode::DimensionMismatch, "chart needs 2n boundary face flags");
  }
  for (int i = 0; i < dim_; ++i) {
    if (!(lower_[static_cast<std::size_t>(i)] < upper_[static_cast<std::size_t>(i)])) {
      throw Error(ErrorCode::InvalidInput, "chart box is empty along axis " + std::to_string(i));
    }
  }
  if (shell_ && !(0.0 < shell_->inner && shell_->inner < shell_->outer)) {
    throw Error(ErrorCode::InvalidInput, "shell radii must satisfy 0 < inner < outer");
  }
}

bool ChartMetric::in_box(std::span<const double> x, double tol) const {
  for (int i = 0; i < dim_; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (x[ui] < lower_[ui] - tol || x[ui] > upper_[ui] + tol) return false;
  }
  return true;
}

bool ChartMetric::in_domain(std::span<const double> x, double tol) const {
  if (!in_box(x, tol)) return false;
  if (!shell_) return true;
  const double r = std::sqrt(squared_norm(x));
  return r >= shell_->inner - tol && r <= shell_->outer + tol;
}

std::string DerivativeProvider::name() const {
  if (kind == Kind::ForwardTaylor) return "taylor";
  return "fd" + std::to_string(order);
}

namespace {

void check_point(const ChartMetric& chart, std::span<const double> x) {
  if (static_cast<int>(x.size()) != chart.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(x.size()) + " coordinates, chart " +
                                                  chart.name() + " has " + std::to_string(chart.dim()));
  }
}

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;  // integer numerators, applied before the single division
  double denom = 1.0;
};

// 1D stencils for one axis, central when the box allows it, one-sided otherwise.
struct AxisStencils {
  Stencil d1;
  Stencil d2;
};

AxisStencils axis_stencils(int order, double x, double lo, double hi, double h) {
  const int half = order == 4 ? 2 : 1;
  const bool fits_below = x - half * h >= lo - 1e-15;
  const bool fits_above = x + half * h <= hi + 1e-15;
  AxisStencils s;
  if (fits_below && fits_above) {
    if (order == 4) {
      s.d1 = {{-2, -1, 1, 2}, {1, -8, 8, -1}, 12};
      s.d2 = {{-2, -1, 0, 1, 2}, {-1, 16, -30, 16, -1}, 12};
    } else {
      s.d1 = {{-1, 1}, {-1, 1}, 2};
      s.d2 = {{-1, 0, 1}, {1, -2, 1}, 1};
    }
    return s;
  }
  const int reach = order == 4 ? 5 : 3;
  int dir = 0;
  if (x + reach * h <= hi + 1e-15) {
    dir = 1;
  } else if (x - reach * h >= lo - 1e-15) {
    dir = -1;
  } else {
    throw Error(ErrorCode::InvalidInput, "finite-difference stencil does not fit in the chart box");
  }
  if (order == 4) {
    s.d1 = {{0, 1, 2, 3, 4}, {-25, 48, -36, 16, -3}, 12};
    s.d2 = {{0, 1, 2, 3, 4, 5}, {45, -154, 214, -156, 61, -10}, 12};
  } else {
    s.d1 = {{0, 1, 2}, {-3, 4, -1}, 2};
    s.d2 = {{0, 1, 2, 3}, {2, -5, 4, -1}, 1};
  }
  if (dir < 0) {
    for (int& o : s.d1.offsets) o = -o;
    for (int& o : s.d2.offsets) o = -o;
    for (double& w : s.d1.weights) w = -w;
  }
  return s;
}

// Generic finite-difference jet of a vector-valued map evaluated on doubles.
// `eval` writes the value into an Out accumulator via `acc(out, weight, x)`.
template <class Eval, class Acc, class Out>
void fd_jet(const ChartMetric& chart, const DerivativeProvider& p, std::span<const double> x, Eval&& eval, Acc&& acc,
            Out& value, std::array<Out, kMaxDim>& d1, std::array<Out, kMaxDim * kMaxDim>& d2) {
  if (p.order != 2 && p.order != 4) throw Error(ErrorCode::InvalidInput, "finite-difference order must be 2 or 4");
  if (!(p.step > 0.0)) throw Error(ErrorCode::InvalidInput, "finite-difference step must be positive");
  const int n = chart.dim();
  const double h = p.step;
  std::vector<double> y(x.begin(), x.end());
  std::vector<AxisStencils> st;
  st.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    st.push_back(axis_stencils(p.order, x[uk], chart.lower()[uk], chart.upper()[uk], h));
  }

  acc(value, 1.0, eval(y));
  for (int k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const auto& s1 = st[uk].d1;
    for (std::size_t a = 0; a < s1.offsets.size(); ++a) {
      y[uk] = x[uk] + s1.offsets[a] * h;
      acc(d1[uk], s1.weights[a], eval(y));
    }
    d1[uk] *= 1.0 / (s1.denom * h);
    const auto& s2 = st[uk].d2;
    auto& dkk = d2[static_cast<std::size_t>(k * kMaxDim + k)];
    for (std::size_t a = 0; a < s2.offsets.size(); ++a) {
      y[uk] = x[uk] + s2.offsets[a] * h;
      acc(dkk, s2.weights[a], eval(y));
    }
    dkk *= 1.0 / (s2.denom * h * h);
    y[uk] = x[uk];
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const auto uk = static_cast<std::size_t>(k), ul = static_cast<std::size_t>(l);
      const auto& sk = st[uk].d1;
      const auto& sl = st[ul].d1;
      auto& dkl = d2[static_cast<std::size_t>(k * kMaxDim + l)];
      for (std::size_t a = 0; a < sk.offsets.size(); ++a) {
        for (std::size_t b = 0; b < sl.offsets.size(); ++b) {
          y[uk] = x[uk] + sk.offsets[a] * h;
          y[ul] = x[ul] + sl.offsets[b] * h;
          acc(dkl, sk.weights[a] * sl.weights[b], eval(y));
        }
      }
      dkl *= 1.0 / (sk.denom * sl.denom * h * h);
      y[uk] = x[uk];
      y[ul] = x[ul];
      d2[static_cast<std::size_t>(l * kMaxDim + k)] = dkl;
    }
  }
}

std::vector<Jet2> seeded(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<Jet2> s;
  s.reserve(x.size());
  for (int i = 0; i < n; ++i) s.push_back(Jet2::variable(n, i, x[static_cast<std::size_t>(i)]));
  return s;
}

}  // namespace

MetricJet metric_jet(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x) {
  check_point(chart, x);
  const int n = chart.dim();
  MetricJet jet;
  jet.n = n;
  jet.g = Matrix::Zero(n, n);
  for (auto& m : jet.dg) m = Matrix::Zero(n, n);
  for (auto& m : jet.ddg) m = Matrix::Zero(n, n);

  if (provider.kind == DerivativeProvider::Kind::ForwardTaylor) {
    const auto vars = seeded(x);
    const SymComponents<Jet2> comps = chart.metric()(std::span<const Jet2>(vars));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Jet2& c = comps(i, j);
        jet.g(i, j) = c.value();
        for (int k = 0; k < n; ++k) {
          jet.dg[static_cast<std::size_t>(k)](i, j) = c.d(k);
          for (int l = 0; l < n; ++l) jet.ddg[static_cast<std::size_t>(k * kMaxDim + l)](i, j) = c.dd(k, l);
        }
      }
    return jet;
  }

  auto eval = [&](const std::vector<double>& y) { return chart.metric()(std::span<const double>(y)); };
  auto acc = [n](Matrix& out, double w, const SymComponents<double>& c) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) += w * c(i, j);
  };
  fd_jet(chart, provider, x, eval, acc, jet.g, jet.dg, jet.ddg);
  return jet;
}

ScalarJet scalar_jet(const ScalarField& f, const ChartMetric& chart, const DerivativeProvider& provider,
                     std::span<const double> x) {
  check_point(chart, x);
  const int n = chart.dim();
  ScalarJet out;
  out.grad = Vector::Zero(n);
  out.hess = Matrix::Zero(n, n);

  if (provider.kind == DerivativeProvider::Kind::ForwardTaylor) {
    const auto vars = seeded(x);
    const Jet2 v = f(std::span<const Jet2>(vars));
    out.value = v.value();
    for (int i = 0; i < n; ++i) {
      out.grad(i) = v.d(i);
      for (int j = 0; j < n; ++j) out.hess(i, j) = v.dd(i, j);
    }
    return out;
  }

  double value = 0.0;
  std::array<double, kMaxDim> d1{};
  std::array<double, kMaxDim * kMaxDim> d2{};
  auto eval = [&](const std::vector<double>& y) { return f(std::span<const double>(y)); };
  auto acc = [](double& o, double w, double v) { o += w * v; };
  fd_jet(chart, provider, x, eval, acc, value, d1, d2);
  out.value = value;
  for (int i = 0; i < n; ++i) {
    out.grad(i) = d1[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) out.hess(i, j) = d2[static_cast<std::size_t>(i * kMaxDim + j)];
  }
  return out;
}

LocalGeometry::LocalGeometry(const MetricJet& jet)
    : metric_(SymForm(jet.g)), christoffel_(jet.n), riemann_(jet.n), ricci_(SymForm::zero(jet.n)) {
  const int n = jet.n;
  const Matrix& ginv = metric_.inverse();

  // First kind: lowered(k,i,j) = 1/2 (d_i g_jk + d_j g_ik - d_k g_ij).
  std::array<double, kMaxDim * kMaxDim * kMaxDim> lowered{};
  auto low = [&](int k, int i, int j) -> double& {
    return lowered[static_cast<std::size_t>((k * kMaxDim + i) * kMaxDim + j)];
  };
  auto dg = [&](int k, int i, int j) { return jet.dg[static_cast<std::size_t>(k)](i, j); };
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) low(k, i, j) = 0.5 * (dg(i, j, k) + dg(j, i, k) - dg(k, i, j));

  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += ginv(k, m) * low(m, i, j);
        christoffel_(k, i, j) = s;
      }

  // d_i of the first-kind symbol lowered(k,j,l).
  auto d_low = [&](int i, int k, int j, int l) {
    return 0.5 * (jet.d2(i, j)(l, k) + jet.d2(i, l)(j, k) - jet.d2(i, k)(j, l));
  };

  // Riem_{ijkl} = g_{km} R^m_{ijl},
  // R^m_{ijl} = d_i G^m_{jl} - d_j G^m_{il} + G^m_{ip} G^p_{jl} - G^m_{jp} G^p_{il}.
  const Christoffel& gam = christoffel_;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double r = d_low(i, k, j, l) - d_low(j, k, i, l);
          for (int m = 0; m < n; ++m) {
            r -= dg(i, k, m) * gam(m, j, l);
            r += dg(j, k, m) * gam(m, i, l);
          }
          for (int p = 0; p < n; ++p) {
            r += low(k, i, p) * gam(p, j, l);
            r -= low(k, j, p) * gam(p, i, l);
          }
          riemann_(i, j, k, l) = r;
        }

  Matrix ric = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) s += ginv(i, l) * riemann_(i, j, l, k);
      ric(j, k) = s;
    }
  ricci_ = SymForm(0.5 * (ric + ric.transpose()));
  scalar_ = ricci_.trace_with(ginv);
}

LocalGeometry LocalGeometry::at(const ChartMetric& chart, const DerivativeProvider& provider,
                                std::span<const double> x) {
  return LocalGeometry(metric_jet(chart, provider, x));
}

SymForm LocalGeometry::schouten() const { return modified_schouten(1.0, 1.0); }

SymForm LocalGeometry::einstein() const { return ricci_ - metric_.form() * (0.5 * scalar_); }

SymForm LocalGeometry::modified_schouten(double tau, double zeta) const {
  const int n = dim();
  if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "Schouten tensors need n >= 3");
  return (ricci_ - metric_.form() * (tau * scalar_ / (2.0 * (n - 1)))) * (zeta / (n - 2));
}

Curv4Tensor LocalGeometry::weyl() const {
  if (dim() < 3) throw Error(ErrorCode::DimensionTooSmall, "Weyl tensor needs n >= 3");
  return riemann_ - kulkarni_nomizu(schouten(), metric_.form());
}

double LocalGeometry::sectional(const Vector& x, const Vector& y) const {
  const int n = dim();
  if (x.size() != n || y.size() != n) throw Error(ErrorCode::DimensionMismatch, "sectional direction size");
  const double xx = metric_.inner(x, x), yy = metric_.inner(y, y), xy = metric_.inner(x, y);
  const double denom = xx * yy - xy * xy;
  const double scale = x.squaredNorm() * y.squaredNorm();
  if (!(denom > 1e-14 * scale)) throw Error(ErrorCode::DegeneratePlane, "directions are (nearly) parallel");
  double num = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) num += riemann_(i, j, k, l) * x(i) * y(j) * x(k) * y(l);
  return num / denom;
}

SymForm LocalGeometry::hessian(const ScalarJet& f) const {
  const int n = dim();
  Matrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = f.hess(i, j);
      for (int k = 0; k < n; ++k) s -= christoffel_(k, i, j) * f.grad(k);
      h(i, j) = s;
    }
  return SymForm(0.5 * (h + h.transpose()));
}

double LocalGeometry::laplacian(const ScalarJet& f) const { return hessian(f).trace_with(metric_.inverse()); }

SymForm LocalGeometry::bakry_emery(const ScalarJet& phi, double n_dim) const {
  const double gap = n_dim - dim();
  if (gap == 0.0) throw Error(ErrorCode::DegenerateParameter, "N-Ricci curvature needs N != n");
  return ricci_ + hessian(phi) - SymForm::outer(phi.grad) * (1.0 / gap);
}

Christoffel christoffel(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x) {
  return LocalGeometry::at(chart, provider, x).christoffel();
}

Curv4Tensor riemann(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x) {
  return LocalGeometry::at(chart, provider, x).riemann();
}

SymForm ricci(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x) {
  return LocalGeometry::at(chart, provider, x).ricci();
}

double scalar_curv(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x) {
  return LocalGeometry::at(chart, provider, x).scalar_curvature();
}

SymForm schouten(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x) {
  return LocalGeometry::at(chart, provider, x).schouten();
}

SymForm einstein(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x) {
  return LocalGeometry::at(chart, provider, x).einstein();
}

SymForm modified_schouten(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                          double tau, double zeta) {
  return LocalGeometry::at(chart, provider, x).modified_schouten(tau, zeta);
}

SymForm bakry_emery(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                    const ScalarField& phi, double n_dim) {
  const auto geom = LocalGeometry::at(chart, provider, x);
  return geom.bakry_emery(scalar_jet(phi, chart, provider, x), n_dim);
}

SymForm hessian_of_scalar(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                          const ScalarField& f) {
  const auto geom = LocalGeometry::at(chart, provider, x);
  return geom.hessian(scalar_jet(f, chart, provider, x));
}

double laplacian(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                 const ScalarField& f) {
  const auto geom = LocalGeometry::at(chart, provider, x);
  return geom.laplacian(scalar_jet(f, chart, provider, x));
}

Curv4Tensor weyl(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x) {
  return LocalGeometry::at(chart, provider, x).weyl();
}

double sectional(const ChartMetric& chart, const DerivativeProvider& provider, std::span<const double> x,
                 const Vector& x_dir, const Vector& y_dir) {
  return LocalGeometry::at(chart, provider, x).sectional(x_dir, y_dir);
}

ChartMetric conformal_metric(const ChartMetric& chart, const ScalarField& u) {
  MetricField base = chart.metric();
  MetricField scaled = [base, u](auto x) {
    using T = scalar_of<decltype(x)>;
    using std::exp;
    auto g = base(x);
    const T factor = exp(2.0 * u(x));
    SymComponents<T> out(g.dim());
    for (int i = 0; i < g.dim(); ++i)
      for (int j = i; j < g.dim(); ++j) out.set(i, j, factor * g(i, j));
    return out;
  };
  return ChartMetric(chart.name() + "+conformal", chart.dim(), chart.lower(), chart.upper(), chart.boundary_faces(),
                     std::move(scaled), chart.shell());
}

double weyl_residual(const LocalGeometry& geom) { return geom.weyl().norm() / (geom.riemann().norm() + 1.0); }

}  // namespace curvcone
