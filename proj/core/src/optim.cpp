#include "pinn/optim.hpp"

#include <cmath>
#include <string>

#include "pinn/errors.hpp"

namespace pinn::optim {

double adam_step(AdamState& state, std::vector<double>& params,
                 std::span<const double> grad) {
  const std::size_t n = params.size();
  if (state.m.size() != n || grad.size() != n) {
    throw ShapeError("adam_step: size mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(grad[i])) {
      throw NumericError("adam_step: non-finite gradient at index " +
                         std::to_string(i) + " (t=" + std::to_string(state.t) + ")");
    }
  }
  state.t += 1;
  const AdamConfig& c = state.cfg;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.t));
  double max_step = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * grad[i];
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    const double delta = c.lr * mhat / (std::sqrt(vhat) + c.eps);
    params[i] -= delta;
    max_step = std::max(max_step, std::abs(delta));
  }
  return max_step;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

void lbfgs_step(LbfgsState& state, std::vector<double>& params, const LossFn& fn) {
  const std::size_t n = params.size();
  if (!state.evaluated) {
    state.grad.assign(n, 0.0);
    state.fx = fn(params, state.grad);
    state.evaluated = true;
  }
  state.stalled = false;

  // two-loop recursion, newest pair first
  std::vector<double> q(state.grad);
  std::vector<double> alpha(state.history.size(), 0.0);
  for (std::size_t idx = state.history.size(); idx-- > 0;) {
    const auto& p = state.history[idx];
    alpha[idx] = p.rho * dot(p.s, q);
    for (std::size_t i = 0; i < n; ++i) q[i] -= alpha[idx] * p.y[i];
  }
  double gamma = 1.0;
  if (!state.history.empty()) {
    const auto& newest = state.history.back();
    gamma = dot(newest.s, newest.y) / dot(newest.y, newest.y);
  }
  for (double& qi : q) qi *= gamma;
  for (std::size_t idx = 0; idx < state.history.size(); ++idx) {
    const auto& p = state.history[idx];
    const double beta = p.rho * dot(p.y, q);
    for (std::size_t i = 0; i < n; ++i) q[i] += (alpha[idx] - beta) * p.s[i];
  }
  std::vector<double> dir(n);
  for (std::size_t i = 0; i < n; ++i) dir[i] = -q[i];

  double dg = dot(dir, state.grad);
  if (!(dg < 0.0)) {
    // not a descent direction: fall back to steepest descent
    state.history.clear();
    for (std::size_t i = 0; i < n; ++i) dir[i] = -state.grad[i];
    dg = dot(dir, state.grad);
    if (!(dg < 0.0)) {
      state.stalled = true;  // zero gradient
      return;
    }
  }

  // strong Wolfe by bracketing and bisection zoom; a pure halving search can
  // fail to meet the curvature condition at any power-of-two step
  std::vector<double> x1(n), g1(n);
  int budget = state.cfg.max_evals;
  bool accepted = false;
  double f1 = 0.0;
  const double c1 = state.cfg.c1, c2 = state.cfg.c2;

  auto probe = [&](double a) {
    for (std::size_t i = 0; i < n; ++i) x1[i] = params[i] + a * dir[i];
    std::fill(g1.begin(), g1.end(), 0.0);
    f1 = fn(x1, g1);
    --budget;
    return dot(g1, dir);
  };

  double a_prev = 0.0, f_prev = state.fx;
  double a = 1.0;
  double a_lo = 0.0, a_hi = 0.0, f_lo = state.fx;
  bool bracketed = false;
  for (int iter = 0; budget > 0; ++iter) {
    const double dphi = probe(a);
    if (!std::isfinite(f1) || f1 > state.fx + c1 * a * dg ||
        (iter > 0 && f1 >= f_prev)) {
      a_lo = a_prev;
      f_lo = f_prev;
      a_hi = a;
      bracketed = true;
      break;
    }
    if (std::abs(dphi) <= c2 * std::abs(dg)) {
      accepted = true;
      break;
    }
    if (dphi >= 0.0) {
      a_lo = a;
      f_lo = f1;
      a_hi = a_prev;
      bracketed = true;
      break;
    }
    a_prev = a;
    f_prev = f1;
    a *= 2.0;
  }
  while (!accepted && bracketed && budget > 0) {
    a = 0.5 * (a_lo + a_hi);
    const double dphi = probe(a);
    if (!std::isfinite(f1) || f1 > state.fx + c1 * a * dg || f1 >= f_lo) {
      a_hi = a;
    } else {
      if (std::abs(dphi) <= c2 * std::abs(dg)) {
        accepted = true;
        break;
      }
      if (dphi * (a_hi - a_lo) >= 0.0) a_hi = a_lo;
      a_lo = a;
      f_lo = f1;
    }
  }
  if (!accepted) {
    state.stalled = true;
    return;
  }

  LbfgsState::Pair pair;
  pair.s.resize(n);
  pair.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    pair.s[i] = x1[i] - params[i];
    pair.y[i] = g1[i] - state.grad[i];
  }
  const double sy = dot(pair.s, pair.y);
  if (sy > 0.0) {
    pair.rho = 1.0 / sy;
    state.history.push_back(std::move(pair));
    while (state.history.size() > static_cast<std::size_t>(state.cfg.memory)) {
      state.history.pop_front();
    }
  }
  params = x1;
  state.grad = g1;
  state.fx = f1;
  state.iter += 1;
}

}  // namespace pinn::optim
