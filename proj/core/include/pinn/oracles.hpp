#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinn/problems.hpp"

namespace pinn::oracle {

// u(x,t) = 6 e^{-3x - 2t}
double toy_exact(double x, double t);

// Fourier-series solution of viscous Burgers via the Cole-Hopf transform;
// coefficients come from adaptive quadrature of the initial heat profile.
class BurgersOracle {
 public:
  explicit BurgersOracle(double nu = 1.0, int n_terms = 100);

  double operator()(double x, double t) const;
  double a0() const { return a0_; }
  int n_terms() const { return static_cast<int>(an_.size()); }

 private:
  double nu_;
  double a0_;
  std::vector<double> an_;
};

// Heat kernel applied to the Gaussian initial profile:
//   u = exp(-(x^2+y^2)/(1+4 alpha t)) / (1+4 alpha t)
double heat2d_exact(double x, double y, double t, double alpha = 2.0);

// Soliton pair: u = 2 lambda^2 sech^2(xi), v = sech(xi)/(2 sqrt(omega)),
// xi = lambda (x - lambda^2 t) + 1/(2 ln omega)
void kdv_exact(double x, double t, const prob::KdvParams& p, double& u, double& v);

// z(s) = c e^{alpha s}
double exp_ode_exact(double s, double alpha, double c);

struct OracleFn {
  std::string problem_id;
  // full point (space..., time) -> field values
  std::function<void(std::span<const double>, std::span<double>)> eval;
  std::string note;
};

// nullptr when the problem has no closed form (fisher, turing1-1d, turing2-2d)
const OracleFn* find(std::string_view problem_id);

}  // namespace pinn::oracle
