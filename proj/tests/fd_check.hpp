#pragma once

// Central-difference probes used as the independent oracle for the autodiff
// engine.  One Richardson extrapolation step on top of the plain stencils.

#include <cmath>
#include <functional>

namespace fdcheck {

using Fn = std::function<double(double)>;

inline double d1(const Fn& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}
inline double d2(const Fn& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}
inline double d3(const Fn& f, double x, double h) {
  return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) /
         (2.0 * h * h * h);
}

inline double richardson(double coarse, double fine) {
  return (4.0 * fine - coarse) / 3.0;
}

// k-th derivative with one Richardson step; stencil errors are O(h^2), so the
// extrapolation removes the leading term.
inline double deriv(const Fn& f, double x, int k, double h) {
  switch (k) {
    case 1: return richardson(d1(f, x, h), d1(f, x, h / 2));
    case 2: return richardson(d2(f, x, h), d2(f, x, h / 2));
    default: return richardson(d3(f, x, h), d3(f, x, h / 2));
  }
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace fdcheck
