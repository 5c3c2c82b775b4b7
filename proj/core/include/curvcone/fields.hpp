#pragma once

// Scalar-generic smooth fields. A field is written once as a generic callable
// over std::span<const T>; the wrapper keeps a double and a Jet2 instantiation
// so both derivative providers evaluate the same closed form.

#include "curvcone/jet.hpp"
#include "curvcone/lintensor.hpp"

#include <array>
#include <functional>
#include <span>
#include <type_traits>
#include <utility>

namespace curvcone {

/// Scalar type of a std::span<const T> argument inside a generic lambda.
template <class Span>
using scalar_of = std::remove_cv_t<typename std::remove_cvref_t<Span>::element_type>;

/// Symmetric n x n array of T used for metric components.
template <class T>
class SymComponents {
 public:
  SymComponents() = default;
  explicit SymComponents(int n) : n_(n) {}

  static SymComponents scaled_identity(int n, const T& s) {
    SymComponents c(n);
    for (int i = 0; i < n; ++i) c.set(i, i, s);
    return c;
  }

  int dim() const { return n_; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * kMaxDim + j)]; }
  void set(int i, int j, const T& value) {
    a_[static_cast<std::size_t>(i * kMaxDim + j)] = value;
    a_[static_cast<std::size_t>(j * kMaxDim + i)] = value;
  }

 private:
  int n_ = 0;
  std::array<T, kMaxDim * kMaxDim> a_{};
};

class ScalarField {
 public:
  ScalarField() : ScalarField([](auto x) { return scalar_of<decltype(x)>(0.0); }) {}

  template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, ScalarField>>>
  ScalarField(F f)  // NOLINT: generic callables convert implicitly
      : real_(f), jet_(std::move(f)) {}

  double operator()(std::span<const double> x) const { return real_(x); }
  Jet2 operator()(std::span<const Jet2> x) const { return jet_(x); }

 private:
  std::function<double(std::span<const double>)> real_;
  std::function<Jet2(std::span<const Jet2>)> jet_;
};

class MetricField {
 public:
  template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, MetricField>>>
  MetricField(F f)  // NOLINT
      : real_(f), jet_(std::move(f)) {}

  SymComponents<double> operator()(std::span<const double> x) const { return real_(x); }
  SymComponents<Jet2> operator()(std::span<const Jet2> x) const { return jet_(x); }

 private:
  std::function<SymComponents<double>(std::span<const double>)> real_;
  std::function<SymComponents<Jet2>(std::span<const Jet2>)> jet_;
};

/// |x|^2 for either scalar type.
template <class T>
T squared_norm(std::span<const T> x) {
  T s(0.0);
  for (const T& xi : x) s += xi * xi;
  return s;
}

}  // namespace curvcone
