#include <doctest.h>

#include <cmath>

#include "pinn/fdm.hpp"
#include "pinn/oracles.hpp"

using namespace pinn;

TEST_CASE("toy closed form") {
  CHECK(oracle::toy_exact(0.0, 0.0) == doctest::Approx(6.0));
  CHECK(oracle::toy_exact(2.0, 1.0) == doctest::Approx(2.0128e-3).epsilon(1e-4));
  CHECK(oracle::toy_exact(1.0, 0.0) == doctest::Approx(0.29872).epsilon(1e-4));
}

TEST_CASE("burgers Fourier coefficients and boundary zeros") {
  const oracle::BurgersOracle u(1.0, 100);
  // converged quadrature value; a 2-interval Simpson pass lands near 0.8566
  CHECK(u.a0() == doctest::Approx(0.85827).epsilon(2e-4));
  for (double t : {0.0, 0.02, 0.1}) {
    CHECK(std::abs(u(0.0, t)) <= 1e-12);
    CHECK(std::abs(u(1.0, t)) <= 1e-12);
  }
}

TEST_CASE("burgers truncation is settled at 100 terms") {
  const oracle::BurgersOracle u100(1.0, 100);
  const oracle::BurgersOracle u200(1.0, 200);
  for (double x : {0.1, 0.33, 0.5, 0.77, 0.9}) {
    for (double t : {0.0, 0.01, 0.05, 0.1}) {
      CHECK(std::abs(u100(x, t) - u200(x, t)) <= 1e-8);
    }
  }
}

TEST_CASE("burgers oracle agrees with the Cole-Hopf march") {
  const oracle::BurgersOracle u(1.0, 100);
  const auto fd = fdm::solve_burgers_fd({}, prob::BurgersParams{});
  // u(0.5, 0.05): x node (0.5 - 0.01)/0.01 = 49, t step 0.05/2.5e-5 = 2000
  const double got = fd.at(2000, 0, 49);
  CHECK(std::abs(got - u(0.5, 0.05)) <= 0.02);
}

TEST_CASE("heat kernel closed form") {
  CHECK(oracle::heat2d_exact(0.0, 0.0, 0.0) == doctest::Approx(1.0));
  CHECK(oracle::heat2d_exact(0.0, 0.0, 0.25, 2.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("kdv soliton shape constants") {
  prob::KdvParams p;
  CHECK(p.omega() == doctest::Approx(12.0));
  // peak of u over x is 2 lambda^2, peak of v is 1/(2 sqrt(omega))
  double umax = 0.0, vmax = 0.0;
  for (double x = -30.0; x <= 30.0; x += 0.001) {
    double u, v;
    oracle::kdv_exact(x, 3.0, p, u, v);
    umax = std::max(umax, u);
    vmax = std::max(vmax, v);
  }
  CHECK(umax == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(vmax == doctest::Approx(0.14434).epsilon(1e-4));
}

TEST_CASE("exp ode closed form") {
  CHECK(oracle::exp_ode_exact(0.0, 2.0, 3.0) == doctest::Approx(3.0));
  CHECK(oracle::exp_ode_exact(0.7, 0.0, 3.0) == doctest::Approx(3.0));
  CHECK(oracle::exp_ode_exact(1.0, 2.0, 3.0) == doctest::Approx(22.167).epsilon(1e-4));
}

TEST_CASE("oracle registry covers exactly the closed-form problems") {
  CHECK(oracle::find("toy") != nullptr);
  CHECK(oracle::find("burgers") != nullptr);
  CHECK(oracle::find("heat2d") != nullptr);
  CHECK(oracle::find("kdv") != nullptr);
  CHECK(oracle::find("exp-ode") != nullptr);
  CHECK(oracle::find("fisher") == nullptr);
  CHECK(oracle::find("turing1-1d") == nullptr);
  CHECK(oracle::find("turing2-2d") == nullptr);
}
