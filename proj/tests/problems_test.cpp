#include <doctest.h>

#include <cmath>

#include "oracle_residual.hpp"
#include "pinn/oracles.hpp"
#include "pinn/problems.hpp"

using namespace pinn;

TEST_CASE("toy residual on the exact solution and simple fields") {
  // u = 6 e^{-3x-2t}: u_x = -3u, u_t = -2u, so the residual cancels exactly
  for (double x : {0.0, 0.7, 1.9}) {
    for (double t : {0.0, 0.4, 1.0}) {
      const double u = oracle::toy_exact(x, t);
      CHECK(std::abs(prob::residual_toy(u, -3.0 * u, -2.0 * u)) <= 1e-10);
    }
  }
  CHECK(prob::residual_toy(1.0, 0.0, 0.0) == doctest::Approx(-1.0));
  CHECK(prob::residual_toy(0.0, 0.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("burgers residual on flat and sinusoidal fields") {
  CHECK(prob::residual_burgers(0.0, 0.0, 0.0, 0.0, 1.0) == doctest::Approx(0.0));
  CHECK(prob::residual_burgers(3.7, 0.0, 0.0, 0.0, 1.0) == doctest::Approx(0.0));
  // u = sin(pi x) frozen in time: residual = pi sin cos + nu pi^2 sin
  const double nu = 1.0;
  for (double x : {0.2, 0.5, 0.8}) {
    constexpr double pi = 3.14159265358979323846;
    const double u = std::sin(pi * x);
    const double ux = pi * std::cos(pi * x);
    const double uxx = -pi * pi * std::sin(pi * x);
    const double expected = pi * std::sin(pi * x) * std::cos(pi * x) +
                            nu * pi * pi * std::sin(pi * x);
    CHECK(prob::residual_burgers(u, ux, 0.0, uxx, nu) == doctest::Approx(expected));
  }
}

TEST_CASE("heat2d residual on polynomial fields") {
  CHECK(prob::residual_heat2d(0.0, 0.0, 0.0, 2.0) == doctest::Approx(0.0));
  // u = x^2 steady: u_xx = 2, alpha = 2 -> residual -4
  CHECK(prob::residual_heat2d(0.0, 2.0, 0.0, 2.0) == doctest::Approx(-4.0));
}

TEST_CASE("kdv sign convention is the one the soliton satisfies") {
  const prob::KdvParams kp;
  const auto& p = prob::find("kdv");
  oracheck::Field fu = [&](std::span<const double> pt) {
    double u, v;
    oracle::kdv_exact(pt[0], pt[1], kp, u, v);
    return u;
  };
  oracheck::Field fv = [&](std::span<const double> pt) {
    double u, v;
    oracle::kdv_exact(pt[0], pt[1], kp, u, v);
    return v;
  };
  const oracheck::Field fields[] = {fu, fv};

  // the rejected convention: the displayed system's signs
  auto rejected = [&](std::span<const double> pt) {
    const double h = 1e-3;
    const double u = fu(pt), v = fv(pt);
    const double ux = oracheck::axis_deriv(fu, pt, 0, 1, h);
    const double uxxx = oracheck::axis_deriv(fu, pt, 0, 3, h);
    const double ut = oracheck::axis_deriv(fu, pt, 1, 1, h);
    const double vx = oracheck::axis_deriv(fv, pt, 0, 1, h);
    const double vxxx = oracheck::axis_deriv(fv, pt, 0, 3, h);
    const double vt = oracheck::axis_deriv(fv, pt, 1, 1, h);
    const double f = ut - 6.0 * kp.a * u * ux + 2.0 * kp.b * v * vx + kp.a * uxxx;
    const double g = vt + 3.0 * kp.a * u * vx - vxxx;
    return std::max(std::abs(f), std::abs(g));
  };

  double accepted_max = 0.0, rejected_max = 0.0;
  // soliton support: sample near the travelling crest
  for (int i = 0; i < 100; ++i) {
    const double t = 10.0 * i / 99.0;
    const double x = 0.25 * t + 4.0 * std::sin(i * 0.7);
    const double pt[2] = {x, t};
    const auto res = oracheck::residual_at(p, fields, pt, 1e-3);
    accepted_max = std::max({accepted_max, std::abs(res[0]), std::abs(res[1])});
    rejected_max = std::max(rejected_max, rejected(pt));
  }
  CHECK(accepted_max <= 1e-6);
  CHECK(rejected_max >= 1e-3);
}

TEST_CASE("kdv residual trivial fields") {
  prob::KdvParams kp;
  double f, g;
  prob::residual_kdv(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, kp.a, kp.b, f, g);
  CHECK(f == 0.0);
  CHECK(g == 0.0);
  // constant u, zero v: every derivative vanishes
  prob::residual_kdv(2.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, kp.a, kp.b, f, g);
  CHECK(f == 0.0);
  CHECK(g == 0.0);
}

TEST_CASE("fisher residual equilibria and midpoint") {
  CHECK(prob::residual_fisher(0.0, 0.0, 0.0, 1.0, 1.0) == doctest::Approx(0.0));
  CHECK(prob::residual_fisher(1.0, 0.0, 0.0, 1.0, 1.0) == doctest::Approx(0.0));
  const double r = 1.0;
  CHECK(prob::residual_fisher(0.5, 0.0, 0.0, 1.0, r) == doctest::Approx(-r / 4.0));
}

TEST_CASE("turing1 porosity rate matches the published constant") {
  const auto training = prob::Turing1Params::training();
  CHECK(training.f_e == doctest::Approx(0.0856).epsilon(1e-3));
  const auto table = prob::Turing1Params::table();
  CHECK(table.f_e_consistent() == doctest::Approx(table.f_e).epsilon(1e-3));
}

TEST_CASE("turing1 uniform steady state zeroes both residuals") {
  auto p = prob::Turing1Params::table();
  p.f_e = p.f_e_consistent();
  const double beta = p.theta * p.b_i;
  const double gamma = p.k * beta;
  double f, g;
  prob::residual_turing1(beta, 0.0, 0.0, gamma, 0.0, 0.0, p, f, g);
  // the balanced terms are ~1e15, so compare against their scale
  const double scale = p.r_b * beta;
  CHECK(std::abs(f) <= 1e-9 * scale);
  CHECK(std::abs(g) <= 1e-9 * scale);
}

TEST_CASE("turing1 singular denominator is rejected on tape") {
  auto params = prob::Turing1Params::training();
  const std::vector<double> theta{0.0};
  ad::Tape tape(theta, 0);
  const ad::Value b = tape.constant(-params.s_b);  // value hits s_b + beta = 0
  const ad::Value zero = tape.constant(0.0);
  ad::Value f, g;
  CHECK_THROWS_AS(
      prob::residual_turing1(b, zero, zero, zero, zero, zero, params, f, g),
      SingularityError);
}

TEST_CASE("turing2 residual arithmetic") {
  prob::Turing2Params tp;
  double f, g;
  prob::residual_turing2(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, tp, f, g);
  CHECK(f == doctest::Approx(0.005));
  CHECK(g == doctest::Approx(0.0));

  prob::residual_turing2(0.1, 0.0, 0.0, 0.0, 0.1, 0.0, 0.0, 0.0, tp, f, g);
  CHECK(f == doctest::Approx(0.006));

  // uniform equilibrium: u = v = cbrt(c)
  const double ustar = std::cbrt(tp.c);
  prob::residual_turing2(ustar, 0.0, 0.0, 0.0, ustar, 0.0, 0.0, 0.0, tp, f, g);
  CHECK(std::abs(f) <= 1e-12);
  CHECK(std::abs(g) <= 1e-12);
}

TEST_CASE("exp ode residual") {
  const double alpha = 1.3, c = 2.0;
  for (double s : {0.0, 0.5, 1.0}) {
    const double z = oracle::exp_ode_exact(s, alpha, c);
    CHECK(std::abs(prob::residual_exp_ode(z, alpha * z, alpha)) <= 1e-12);
  }
  CHECK(prob::residual_exp_ode(0.0, 0.0, alpha) == doctest::Approx(0.0));
  CHECK(prob::residual_exp_ode(1.0, 1.0, 1.0) == doctest::Approx(0.0));  // z = s at s = 1
  CHECK(prob::residual_exp_ode(2.0, 1.0, 1.0) == doctest::Approx(-1.0)); // z = s at s = 2
}

TEST_CASE("residuals are pure functions") {
  const auto& p = prob::find("burgers");
  prob::FieldVals<double> fv;
  fv.value = 0.4;
  fv.deriv[0][0] = -0.3;
  fv.deriv[0][1] = 1.7;
  fv.deriv[1][0] = 0.9;
  double out1 = 0.0, out2 = 0.0;
  p.residual<double>({&fv, 1}, {&out1, 1});
  p.residual<double>({&fv, 1}, {&out2, 1});
  CHECK(out1 == out2);
}

TEST_CASE("ic_bc_values on and off the manifolds") {
  const auto& toy = prob::find("toy");
  const double p1[2] = {0.0, 0.0};
  CHECK(prob::ic_bc_values(toy, p1)[0] == doctest::Approx(6.0));

  const auto& burgers = prob::find("burgers");
  const double p2[2] = {0.5, 0.0};
  CHECK(prob::ic_bc_values(burgers, p2)[0] == doctest::Approx(1.0));

  const auto& fisher = prob::find("fisher");
  const double p3[2] = {-1.0, 0.0};
  const double p4[2] = {1.0, 0.0};
  CHECK(prob::ic_bc_values(fisher, p3)[0] == doctest::Approx(1.0));
  CHECK(prob::ic_bc_values(fisher, p4)[0] == doctest::Approx(0.0));

  const double off[2] = {0.5, 0.5};
  CHECK_THROWS_AS(prob::ic_bc_values(burgers, off), DomainError);
}

TEST_CASE("registry has the eight catalogued problems") {
  CHECK(prob::all().size() == 8);
  for (const char* id : {"toy", "burgers", "heat2d", "kdv", "fisher",
                         "turing1-1d", "turing2-2d", "exp-ode"}) {
    CHECK(prob::find(id).id == id);
  }
  CHECK_THROWS_AS(prob::find("foo"), ConfigError);
}

TEST_CASE("every closed-form oracle satisfies its residual at lattice points") {
  for (const char* id : {"toy", "burgers", "heat2d", "kdv", "exp-ode"}) {
    const auto& p = prob::find(id);
    const auto* ora = oracle::find(id);
    REQUIRE(ora != nullptr);
    std::vector<oracheck::Field> fields;
    for (int f = 0; f < p.field_count; ++f) {
      fields.push_back([&p, ora, f](std::span<const double> pt) {
        std::array<double, 2> out{};
        ora->eval(pt, {out.data(), static_cast<std::size_t>(p.field_count)});
        return out[static_cast<std::size_t>(f)];
      });
    }
    // kdv support is a narrow crest; sample it directly there
    std::vector<std::vector<double>> pts;
    if (p.pid == prob::Pid::Kdv) {
      for (int i = 0; i < 20; ++i) {
        const double t = 0.5 + 9.0 * i / 19.0;
        pts.push_back({0.25 * t + 4.0 * std::sin(0.9 * i), t});
      }
    } else {
      pts = oracheck::lattice_points(p, 20, 0.05);
    }
    const double h = (p.pid == prob::Pid::Burgers) ? 3e-4 : 1e-3;
    for (const auto& pt : pts) {
      const auto res = oracheck::residual_at(p, fields, pt, h);
      for (double rv : res) CHECK(std::abs(rv) <= 1e-6);
    }
  }
}
