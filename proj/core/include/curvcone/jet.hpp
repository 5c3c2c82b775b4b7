#pragma once

// Second-order forward-mode Taylor arithmetic in up to kMaxDim variables.
//
// A Jet2 carries f(x0), the gradient and the (symmetric) Hessian of f at x0.
// Arithmetic propagates all three exactly, so evaluating a closed-form field
// on seeded coordinates yields its derivatives to round-off. A Jet2 built
// from a plain double has dim() == 0 and behaves as a constant.

#include <array>
#include <cmath>

namespace curvcone {

class Jet2 {
 public:
  static constexpr int kMaxDim = 6;

  Jet2() = default;
  Jet2(double value) : v_(value) {}  // NOLINT: implicit constant promotion

  /// Coordinate x_i seeded at value x in an n-variable jet.
  static Jet2 variable(int n, int i, double x) {
    Jet2 j(x);
    j.n_ = n;
    j.d_[i] = 1.0;
    return j;
  }

  int dim() const { return n_; }
  double value() const { return v_; }
  double d(int i) const { return d_[i]; }
  double dd(int i, int j) const { return dd_[i * kMaxDim + j]; }

  Jet2& operator+=(const Jet2& o) {
    widen(o.n_);
    v_ += o.v_;
    for (int i = 0; i < n_; ++i) d_[i] += o.d_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) dd_[i * kMaxDim + j] += o.dd_[i * kMaxDim + j];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    widen(o.n_);
    v_ -= o.v_;
    for (int i = 0; i < n_; ++i) d_[i] -= o.d_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) dd_[i * kMaxDim + j] -= o.dd_[i * kMaxDim + j];
    return *this;
  }
  Jet2& operator*=(double s) {
    v_ *= s;
    for (int i = 0; i < n_; ++i) d_[i] *= s;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) dd_[i * kMaxDim + j] *= s;
    return *this;
  }
  Jet2& operator*=(const Jet2& o) {
    *this = *this * o;
    return *this;
  }
  Jet2& operator/=(const Jet2& o) {
    *this = *this / o;
    return *this;
  }

  friend Jet2 operator-(Jet2 a) {
    a *= -1.0;
    return a;
  }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator+(Jet2 a, double b) {
    a.v_ += b;
    return a;
  }
  friend Jet2 operator+(double a, Jet2 b) { return b + a; }
  friend Jet2 operator-(Jet2 a, double b) {
    a.v_ -= b;
    return a;
  }
  friend Jet2 operator-(double a, const Jet2& b) { return -b + a; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, double s) { return a *= (1.0 / s); }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.n_ = a.n_ > b.n_ ? a.n_ : b.n_;
    r.v_ = a.v_ * b.v_;
    for (int i = 0; i < r.n_; ++i) r.d_[i] = a.v_ * b.d_[i] + b.v_ * a.d_[i];
    for (int i = 0; i < r.n_; ++i)
      for (int j = 0; j < r.n_; ++j) {
        const int ij = i * kMaxDim + j;
        r.dd_[ij] = (a.v_ * b.dd_[ij] + b.v_ * a.dd_[ij]) + (a.d_[i] * b.d_[j] + a.d_[j] * b.d_[i]);
      }
    return r;
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
  friend Jet2 operator/(double a, const Jet2& b) { return reciprocal(b) * a; }

  friend bool operator<(const Jet2& a, const Jet2& b) { return a.v_ < b.v_; }
  friend bool operator>(const Jet2& a, const Jet2& b) { return a.v_ > b.v_; }

  friend Jet2 reciprocal(const Jet2& a) {
    const double inv = 1.0 / a.v_;
    return a.chain(inv, -inv * inv, 2.0 * inv * inv * inv);
  }
  friend Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.v_);
    return a.chain(e, e, e);
  }
  friend Jet2 log(const Jet2& a) {
    const double inv = 1.0 / a.v_;
    return a.chain(std::log(a.v_), inv, -inv * inv);
  }
  friend Jet2 sqrt(const Jet2& a) {
    const double s = std::sqrt(a.v_);
    return a.chain(s, 0.5 / s, -0.25 / (s * a.v_));
  }
  friend Jet2 sin(const Jet2& a) {
    const double s = std::sin(a.v_), c = std::cos(a.v_);
    return a.chain(s, c, -s);
  }
  friend Jet2 cos(const Jet2& a) {
    const double s = std::sin(a.v_), c = std::cos(a.v_);
    return a.chain(c, -s, -c);
  }
  friend Jet2 pow(const Jet2& a, double p) {
    const double f = std::pow(a.v_, p);
    const double f1 = p * std::pow(a.v_, p - 1.0);
    const double f2 = p * (p - 1.0) * std::pow(a.v_, p - 2.0);
    return a.chain(f, f1, f2);
  }

 private:
  void widen(int m) {
    if (m > n_) n_ = m;
  }

  // h(a) given h(a0), h'(a0), h''(a0).
  Jet2 chain(double f0, double f1, double f2) const {
    Jet2 r;
    r.n_ = n_;
    r.v_ = f0;
    for (int i = 0; i < n_; ++i) r.d_[i] = f1 * d_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const int ij = i * kMaxDim + j;
        r.dd_[ij] = f1 * dd_[ij] + f2 * (d_[i] * d_[j]);
      }
    return r;
  }

  int n_ = 0;
  double v_ = 0.0;
  std::array<double, kMaxDim> d_{};
  std::array<double, kMaxDim * kMaxDim> dd_{};
};

}  // namespace curvcone
