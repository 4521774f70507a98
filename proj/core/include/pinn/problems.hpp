#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pinn/errors.hpp"
#include "pinn/tape.hpp"

namespace pinn::prob {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct DomainBox {
  std::vector<Interval> space;  // 0..2 axes
  Interval time{0.0, 1.0};

  void validate() const;
};

// ---- per-family parameter sets ----

struct ToyParams {
  double a = 1.0;
  double b = -2.0;
  double c = -1.0;
};

struct BurgersParams {
  double nu = 1.0;
};

struct HeatParams {
  double alpha = 2.0;
};

struct KdvParams {
  double a = -0.125;
  double b = -3.0;
  double lambda = 0.5;

  double omega() const { return -b / (8.0 * (4.0 * a + 1.0) * std::pow(lambda, 4)); }
  double phase() const { return 1.0 / (2.0 * std::log(omega())); }
};

struct FisherParams {
  double diffusivity = 1.0;
  double growth = 1.0;
};

struct Turing1Params {
  double r_b, r_c, d_b, d_c, b_i, f_b, a, s_b, f_e, theta, k;

  // epithelium porosity rate implied by the steady state
  double f_e_consistent() const {
    return a * theta * b_i / ((s_b + theta * b_i) * (1.0 - theta)) - r_b / k;
  }

  // physical values
  static Turing1Params table();
  // the 1-D solver's rescaled constants (r_c = 2 variant)
  static Turing1Params listing();
  // the rescaled constants used for network training (b_i = 1e7, s_b = 1e5)
  static Turing1Params training();
};

struct Turing2Params {
  double a = 2.8e-4;
  double b = 5e-3;
  double tau = 0.1;
  double c = -0.005;
};

struct OdeParams {
  double alpha = 1.0;
  double c = 1.0;
};

using ParamSet = std::variant<ToyParams, BurgersParams, HeatParams, KdvParams,
                              FisherParams, Turing1Params, Turing2Params, OdeParams>;

// ---- residuals (zero for an exact solution) ----
// Templated over the scalar type so the same formula runs on plain doubles
// (oracle substitution checks, solver tests) and on tape values (training).

template <class T>
T residual_toy(const T& u, const T& u_x, const T& u_t) {
  return u_x - 2.0 * u_t - u;
}

template <class T>
T residual_burgers(const T& u, const T& u_x, const T& u_t, const T& u_xx, double nu) {
  return u_t + u * u_x - nu * u_xx;
}

template <class T>
T residual_heat2d(const T& u_t, const T& u_xx, const T& u_yy, double alpha) {
  return u_t - alpha * (u_xx + u_yy);
}

// Sign convention pinned by substituting the closed-form soliton pair; the
// rejected variant is kept in the tests as the counterexample.
template <class T>
void residual_kdv(const T& u, const T& u_x, const T& u_xxx, const T& u_t,
                  const T& v, const T& v_x, const T& v_xxx, const T& v_t,
                  double a, double b, T& f, T& g) {
  f = u_t - 6.0 * a * (u * u_x) - 2.0 * b * (v * v_x) - a * u_xxx;
  g = v_t + 3.0 * (u * v_x) + v_xxx;
}

template <class T>
T residual_fisher(const T& u, const T& u_t, const T& u_xx, double D, double r) {
  return u_t - D * u_xx - r * (u * (1.0 - u));
}

template <class T>
void residual_turing1(const T& b_, const T& b_t, const T& b_xx,
                      const T& g_, const T& g_t, const T& g_xx,
                      const Turing1Params& p, T& f, T& g) {
  const T depletion = 1.0 - b_ / p.b_i;
  f = b_t - p.d_b * b_xx - p.r_b * (depletion * b_) +
      p.a * (b_ * g_) / (p.s_b + b_) - p.f_e * (depletion * g_);
  g = g_t - p.d_c * g_xx - p.f_b * b_ + p.r_c * g_;
}

template <class T>
void residual_turing2(const T& u, const T& u_t, const T& u_xx, const T& u_yy,
                      const T& v, const T& v_t, const T& v_xx, const T& v_yy,
                      const Turing2Params& p, T& f, T& g) {
  f = u_t - p.a * (u_xx + u_yy) - u + u * u * u + v - p.c;
  g = v_t - (p.b * (v_xx + v_yy) + u - v) / p.tau;
}

template <class T>
T residual_exp_ode(const T& z, const T& z_s, double alpha) {
  return z_s - alpha * z;
}

// ---- problem registry ----

enum class Pid : std::uint8_t {
  Toy, Burgers, Heat2d, Kdv, Fisher, Turing1, Turing2, ExpOde
};

// Values and input derivatives of one field at one point.  deriv[axis][k-1]
// is the k-th derivative along that axis; only the orders a problem declares
// are ever read.
template <class T>
struct FieldVals {
  T value{};
  std::array<std::array<T, 3>, 3> deriv{};

  const T& d(int axis, int order) const {
    return deriv[static_cast<std::size_t>(axis)][static_cast<std::size_t>(order - 1)];
  }
};

class Problem {
 public:
  Pid pid;
  std::string id;
  std::string description;
  DomainBox domain;
  int field_count = 1;
  ParamSet params;
  // highest derivative order consumed per input axis (space..., time)
  std::array<int, 3> orders{0, 0, 0};
  // listings sample boundary (and sometimes interior) times from a small
  // positive offset
  double boundary_time_lo = 0.0;
  double interior_time_lo = 0.0;
  // seed for problems whose initial data is a random field
  std::uint64_t ic_seed = 7;

  int space_dims() const { return static_cast<int>(domain.space.size()); }
  int input_dim() const { return space_dims() + 1; }
  int max_order() const;

  // PDE residual(s) from one point's field values/derivatives.
  template <class T>
  void residual(std::span<const FieldVals<T>> fields, std::span<T> out) const;

  // Initial-condition targets at spatial point `xs` (time = domain.time.lo).
  void ic(std::span<const double> xs, std::span<double> out) const;
  // Boundary targets on face `axis`/`side` at the given full coordinates.
  void bc(int axis, int side, std::span<const double> pt, std::span<double> out) const;

  const Interval& space(int axis) const { return domain.space[static_cast<std::size_t>(axis)]; }
};

// targets at a point that lies on the initial slice or a boundary face;
// DomainError if the point is on neither manifold
std::vector<double> ic_bc_values(const Problem& p, std::span<const double> pt);

const Problem& find(std::string_view id);
std::span<const Problem> all();

}  // namespace pinn::prob
