#pragma once

// Substitutes a closed-form solution into its PDE residual, with every
// derivative taken by central differences of the solution itself.  Shared by
// the unit tests and the acceptance suite.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "pinn/problems.hpp"

namespace oracheck {

using Field = std::function<double(std::span<const double>)>;  // full point -> value

inline double axis_deriv(const Field& f, std::span<const double> pt, int axis,
                         int order, double h) {
  std::vector<double> q(pt.begin(), pt.end());
  auto at = [&](double delta) {
    q[static_cast<std::size_t>(axis)] = pt[static_cast<std::size_t>(axis)] + delta;
    return f(q);
  };
  auto stencil = [&](double hh) {
    switch (order) {
      case 1: return (at(hh) - at(-hh)) / (2.0 * hh);
      case 2: return (at(hh) - 2.0 * at(0.0) + at(-hh)) / (hh * hh);
      default:
        return (at(2.0 * hh) - 2.0 * at(hh) + 2.0 * at(-hh) - at(-2.0 * hh)) /
               (2.0 * hh * hh * hh);
    }
  };
  // one Richardson step knocks out the O(h^2) term of every stencil above
  return (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0;
}

// Residual values of `p` at `pt`, fields supplied as callables.
inline std::vector<double> residual_at(const pinn::prob::Problem& p,
                                       std::span<const Field> fields,
                                       std::span<const double> pt, double h) {
  std::array<pinn::prob::FieldVals<double>, 2> fv;
  for (int f = 0; f < p.field_count; ++f) {
    auto& v = fv[static_cast<std::size_t>(f)];
    const auto& fn = fields[static_cast<std::size_t>(f)];
    v.value = fn(pt);
    for (int axis = 0; axis < p.input_dim(); ++axis) {
      for (int k = 1; k <= p.orders[static_cast<std::size_t>(axis)]; ++k) {
        v.deriv[static_cast<std::size_t>(axis)][static_cast<std::size_t>(k - 1)] =
            axis_deriv(fn, pt, axis, k, h);
      }
    }
  }
  std::vector<double> out(static_cast<std::size_t>(p.field_count), 0.0);
  p.residual<double>({fv.data(), static_cast<std::size_t>(p.field_count)},
                     out);
  return out;
}

// low-discrepancy interior points via the golden-ratio lattice
inline std::vector<std::vector<double>> lattice_points(const pinn::prob::Problem& p,
                                                       int count, double margin) {
  static constexpr double kAlpha[3] = {0.6180339887498949, 0.7548776662466927,
                                       0.8191725133961645};
  std::vector<std::vector<double>> pts;
  const int dim = p.input_dim();
  for (int i = 1; i <= count; ++i) {
    std::vector<double> pt(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
      const double frac = std::fmod(static_cast<double>(i) * kAlpha[a], 1.0);
      const double lo = (a < p.space_dims()) ? p.space(a).lo : p.domain.time.lo;
      const double hi = (a < p.space_dims()) ? p.space(a).hi : p.domain.time.hi;
      const double w = hi - lo;
      pt[static_cast<std::size_t>(a)] = lo + margin * w + frac * (1.0 - 2.0 * margin) * w;
    }
    pts.push_back(std::move(pt));
  }
  return pts;
}

}  // namespace oracheck
