#pragma once

#include <deque>
#include <functional>
#include <span>
#include <vector>

namespace pinn::optim {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long t = 0;
  AdamConfig cfg;

  explicit AdamState(std::size_t n, AdamConfig c = {})
      : m(n, 0.0), v(n, 0.0), cfg(c) {}
};

// Bias-corrected update with denominator sqrt(v_hat) + eps.  Throws
// NumericError with the offending index if the gradient is not finite.
// Returns the largest |delta theta| of the step.
double adam_step(AdamState& state, std::vector<double>& params,
                 std::span<const double> grad);

struct LbfgsConfig {
  int memory = 10;
  double c1 = 1e-4;      // Armijo
  double c2 = 0.9;       // curvature
  int max_evals = 40;    // line-search budget before flagging a stall
};

struct LbfgsState {
  struct Pair {
    std::vector<double> s;
    std::vector<double> y;
    double rho;
  };
  std::deque<Pair> history;
  std::vector<double> grad;   // gradient at the current point
  double fx = 0.0;
  bool evaluated = false;
  bool stalled = false;
  long iter = 0;
  LbfgsConfig cfg;

  explicit LbfgsState(LbfgsConfig c = {}) : cfg(c) {}
};

// Evaluates loss and gradient at a candidate point.
using LossFn = std::function<double(std::span<const double> params,
                                    std::span<double> grad_out)>;

// One quasi-Newton step: two-loop recursion over the stored (s, y) pairs,
// bracket-and-zoom line search against the strong Wolfe conditions.  If the
// search exhausts its evaluation budget the state is flagged stalled and the
// parameters are left unchanged.
void lbfgs_step(LbfgsState& state, std::vector<double>& params, const LossFn& fn);

}  // namespace pinn::optim
