#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>

#include "pinn/errors.hpp"

namespace pinn::ad {

inline constexpr int kMaxOrder = 3;

// Truncated Taylor value: d[k] holds the k-th derivative of the quantity with
// respect to one designated input variable, d[0] is the plain value.  All
// operands of an arithmetic op must carry the same order (and, by convention,
// the same active variable).
struct Jet {
  std::array<double, kMaxOrder + 1> d{0.0, 0.0, 0.0, 0.0};
  int order = 0;

  Jet() = default;
  explicit Jet(double value, int order_ = 0) : order(order_) { d[0] = value; }

  double value() const { return d[0]; }
  double deriv(int k) const { return d[static_cast<std::size_t>(k)]; }
};

inline Jet lift_input(double x, bool active, int order) {
  if (order < 0 || order > kMaxOrder) {
    throw UnsupportedOrderError("lift_input: order " + std::to_string(order) +
                                " exceeds supported maximum " +
                                std::to_string(kMaxOrder));
  }
  Jet j(x, order);
  if (active && order >= 1) j.d[1] = 1.0;
  return j;
}

namespace detail {

inline void check_same_order(const Jet& a, const Jet& b) {
  if (a.order != b.order) {
    throw UnsupportedOrderError("jet arithmetic on mismatched orders");
  }
}

// Branch-free e^x for |x| <= 708 (argument-reduced Taylor, ~1 ulp).  The
// sigmoid path funnels every evaluation through this one routine so the
// batched layer kernel and the scalar jet arithmetic agree bit for bit,
// and the loop body vectorizes.
inline double exp_pm708(double x) {
  constexpr double inv_ln2 = 1.4426950408889634074;
  constexpr double ln2_hi = 6.93147180369123816490e-01;
  constexpr double ln2_lo = 1.90821492927058770002e-10;
  const double nf = std::floor(x * inv_ln2 + 0.5);
  const double r = (x - nf * ln2_hi) - nf * ln2_lo;
  double p = 1.0 / 6227020800.0;  // 1/13!
  p = p * r + 1.0 / 479001600.0;
  p = p * r + 1.0 / 39916800.0;
  p = p * r + 1.0 / 3628800.0;
  p = p * r + 1.0 / 362880.0;
  p = p * r + 1.0 / 40320.0;
  p = p * r + 1.0 / 5040.0;
  p = p * r + 1.0 / 720.0;
  p = p * r + 1.0 / 120.0;
  p = p * r + 1.0 / 24.0;
  p = p * r + 1.0 / 6.0;
  p = p * r + 0.5;
  p = p * r + 1.0;
  p = p * r + 1.0;
  const auto n = static_cast<std::int64_t>(nf);
  const double scale = std::bit_cast<double>(static_cast<std::uint64_t>(n + 1023) << 52);
  return p * scale;
}

inline double sigmoid_value(double x) {
  const double ax = std::min(std::abs(x), 708.0);
  const double t = exp_pm708(-ax);
  const double num = x >= 0.0 ? 1.0 : t;
  return num / (1.0 + t);
}

// Derivatives f^(0..n) of the elementary function at x, n <= 4.  The extra
// order beyond kMaxOrder feeds the reverse sweep through compositions.
inline void exp_derivs(double x, int n, double* f) {
  const double e = std::exp(x);
  for (int k = 0; k <= n; ++k) f[k] = e;
}

// Chains expressed in the function value itself, so a reverse sweep can
// rebuild them from the stored output without re-evaluating exp.
inline void sigmoid_derivs_from_value(double s, int n, double* f) {
  const double s1 = s * (1.0 - s);
  f[0] = s;
  if (n >= 1) f[1] = s1;
  if (n >= 2) f[2] = s1 * (1.0 - 2.0 * s);
  if (n >= 3) f[3] = s1 * (1.0 - 6.0 * s + 6.0 * s * s);
  if (n >= 4) f[4] = s1 * (1.0 - 14.0 * s + 36.0 * s * s - 24.0 * s * s * s);
}

inline void tanh_derivs_from_value(double t, int n, double* f) {
  const double t1 = 1.0 - t * t;
  f[0] = t;
  if (n >= 1) f[1] = t1;
  if (n >= 2) f[2] = -2.0 * t * t1;
  if (n >= 3) f[3] = t1 * (6.0 * t * t - 2.0);
  if (n >= 4) f[4] = t1 * (16.0 * t - 24.0 * t * t * t);
}

inline void sigmoid_derivs(double x, int n, double* f) {
  sigmoid_derivs_from_value(sigmoid_value(x), n, f);
}

inline void tanh_derivs(double x, int n, double* f) {
  tanh_derivs_from_value(std::tanh(x), n, f);
}

inline void relu_derivs(double x, int n, double* f) {
  f[0] = x > 0.0 ? x : 0.0;
  if (n >= 1) f[1] = x > 0.0 ? 1.0 : 0.0;
  for (int k = 2; k <= n; ++k) f[k] = 0.0;
}

inline void recip_derivs(double x, int n, double* f) {
  if (x == 0.0) throw SingularityError("division by zero-valued jet");
  const double r = 1.0 / x;
  double acc = r;
  f[0] = acc;
  for (int k = 1; k <= n; ++k) {
    acc *= -static_cast<double>(k) * r;
    f[k] = acc;
  }
}

inline void pown_derivs(double x, int e, int n, double* f) {
  for (int k = 0; k <= n; ++k) {
    double coef = 1.0;
    for (int j = 0; j < k; ++j) coef *= static_cast<double>(e - j);
    f[k] = (k > e) ? 0.0 : coef * std::pow(x, e - k);
  }
}

// Faa di Bruno up to order 3 in derivative coefficients:
//   c1 = f1 a1
//   c2 = f1 a2 + f2 a1^2
//   c3 = f1 a3 + 3 f2 a1 a2 + f3 a1^3
inline Jet compose(const double* f, const Jet& a) {
  Jet c(f[0], a.order);
  const double a1 = a.d[1], a2 = a.d[2], a3 = a.d[3];
  if (a.order >= 1) c.d[1] = f[1] * a1;
  if (a.order >= 2) c.d[2] = f[1] * a2 + f[2] * a1 * a1;
  if (a.order >= 3) c.d[3] = f[1] * a3 + 3.0 * f[2] * a1 * a2 + f[3] * a1 * a1 * a1;
  return c;
}

}  // namespace detail

inline Jet operator+(const Jet& a, const Jet& b) {
  detail::check_same_order(a, b);
  Jet c(0.0, a.order);
  for (int k = 0; k <= a.order; ++k) c.d[k] = a.d[k] + b.d[k];
  return c;
}

inline Jet operator-(const Jet& a, const Jet& b) {
  detail::check_same_order(a, b);
  Jet c(0.0, a.order);
  for (int k = 0; k <= a.order; ++k) c.d[k] = a.d[k] - b.d[k];
  return c;
}

inline Jet operator-(const Jet& a) {
  Jet c(0.0, a.order);
  for (int k = 0; k <= a.order; ++k) c.d[k] = -a.d[k];
  return c;
}

// Leibniz rule in derivative coefficients (binomial weights).
inline Jet operator*(const Jet& a, const Jet& b) {
  detail::check_same_order(a, b);
  Jet c(a.d[0] * b.d[0], a.order);
  if (a.order >= 1) c.d[1] = a.d[1] * b.d[0] + a.d[0] * b.d[1];
  if (a.order >= 2) c.d[2] = a.d[2] * b.d[0] + 2.0 * a.d[1] * b.d[1] + a.d[0] * b.d[2];
  if (a.order >= 3)
    c.d[3] = a.d[3] * b.d[0] + 3.0 * a.d[2] * b.d[1] + 3.0 * a.d[1] * b.d[2] +
             a.d[0] * b.d[3];
  return c;
}

inline Jet operator/(const Jet& a, const Jet& b) {
  detail::check_same_order(a, b);
  if (b.d[0] == 0.0) throw SingularityError("division by zero-valued jet");
  Jet c(a.d[0] / b.d[0], a.order);
  const double inv = 1.0 / b.d[0];
  if (a.order >= 1) c.d[1] = (a.d[1] - c.d[0] * b.d[1]) * inv;
  if (a.order >= 2) c.d[2] = (a.d[2] - 2.0 * c.d[1] * b.d[1] - c.d[0] * b.d[2]) * inv;
  if (a.order >= 3)
    c.d[3] = (a.d[3] - 3.0 * c.d[2] * b.d[1] - 3.0 * c.d[1] * b.d[2] -
              c.d[0] * b.d[3]) * inv;
  return c;
}

inline Jet operator+(const Jet& a, double s) { Jet c = a; c.d[0] += s; return c; }
inline Jet operator+(double s, const Jet& a) { return a + s; }
inline Jet operator-(const Jet& a, double s) { Jet c = a; c.d[0] -= s; return c; }
inline Jet operator-(double s, const Jet& a) { return (-a) + s; }
inline Jet operator*(const Jet& a, double s) {
  Jet c(0.0, a.order);
  for (int k = 0; k <= a.order; ++k) c.d[k] = a.d[k] * s;
  return c;
}
inline Jet operator*(double s, const Jet& a) { return a * s; }
inline Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
inline Jet operator/(double s, const Jet& b) {
  double f[kMaxOrder + 1];
  detail::recip_derivs(b.d[0], b.order, f);
  return detail::compose(f, b) * s;
}

inline Jet exp(const Jet& a) {
  double f[kMaxOrder + 1];
  detail::exp_derivs(a.d[0], a.order, f);
  return detail::compose(f, a);
}

inline Jet sigmoid(const Jet& a) {
  double f[kMaxOrder + 1];
  detail::sigmoid_derivs(a.d[0], a.order, f);
  return detail::compose(f, a);
}

inline Jet tanh(const Jet& a) {
  double f[kMaxOrder + 1];
  detail::tanh_derivs(a.d[0], a.order, f);
  return detail::compose(f, a);
}

inline Jet relu(const Jet& a) {
  double f[kMaxOrder + 1];
  detail::relu_derivs(a.d[0], a.order, f);
  return detail::compose(f, a);
}

inline Jet pow_int(const Jet& a, int e) {
  double f[kMaxOrder + 1];
  detail::pown_derivs(a.d[0], e, a.order, f);
  return detail::compose(f, a);
}

enum class ElemFn : std::uint8_t { Add, Mul, Sub, Div, Exp, Tanh, Sigmoid, Power };

// Uniform entry point mirroring the elementary-function catalogue; Power reads
// its integer exponent from the second argument's value.
inline Jet jet_apply(ElemFn fn, std::span<const Jet> args) {
  switch (fn) {
    case ElemFn::Add: return args[0] + args[1];
    case ElemFn::Mul: return args[0] * args[1];
    case ElemFn::Sub: return args[0] - args[1];
    case ElemFn::Div: return args[0] / args[1];
    case ElemFn::Exp: return exp(args[0]);
    case ElemFn::Tanh: return tanh(args[0]);
    case ElemFn::Sigmoid: return sigmoid(args[0]);
    case ElemFn::Power: return pow_int(args[0], static_cast<int>(args[1].d[0]));
  }
  throw Error("jet_apply: unknown elementary function");
}

}  // namespace pinn::ad

namespace pinn {
enum class Act : std::uint8_t { Sigmoid, Tanh, Relu };
}
