#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pinn/oracles.hpp"
#include "pinn/sampling.hpp"

using namespace pinn;

TEST_CASE("burgers face split and stacking counts") {
  const auto& p = prob::find("burgers");
  const auto set = sampling::sample(p, 4000, 10000, 1);
  CHECK(set.boundary.size() == 2000);  // 1000 left + 1000 right
  CHECK(set.initial.size() == 2000);
  CHECK(set.interior.size() == 14000);
  int left = 0, right = 0;
  for (const auto& d : set.boundary) {
    if (d.pt[0] == 0.0) ++left;
    if (d.pt[0] == 1.0) ++right;
  }
  CHECK(left == 1000);
  CHECK(right == 1000);
}

TEST_CASE("same seed reproduces the set bit for bit") {
  const auto& p = prob::find("kdv");
  const auto a = sampling::sample(p, 1000, 2000, 17);
  const auto b = sampling::sample(p, 1000, 2000, 17);
  REQUIRE(a.initial.size() == b.initial.size());
  for (std::size_t i = 0; i < a.initial.size(); ++i) {
    CHECK(a.initial[i].pt == b.initial[i].pt);
    CHECK(a.initial[i].target == b.initial[i].target);
  }
  REQUIRE(a.interior.size() == b.interior.size());
  for (std::size_t i = 0; i < a.interior.size(); ++i) {
    CHECK(a.interior[i] == b.interior[i]);
  }
  const auto c = sampling::sample(p, 1000, 2000, 18);
  CHECK(c.interior[0] != a.interior[0]);
}

TEST_CASE("faces are exact and initial time is exactly zero") {
  const auto& p = prob::find("toy");
  const auto set = sampling::sample(p, 400, 500, 3);
  for (const auto& d : set.initial) CHECK(d.pt[1] == 0.0);
  for (const auto& d : set.boundary) {
    CHECK((d.pt[0] == 0.0 || d.pt[0] == 2.0));
  }
  // targets on the initial slice equal the closed form exactly
  for (const auto& d : set.initial) {
    CHECK(d.target[0] == oracle::toy_exact(d.pt[0], 0.0));
  }
}

TEST_CASE("two-dimensional problems use the eight-way split") {
  const auto& p = prob::find("turing2-2d");
  const auto set = sampling::sample(p, 400, 1000, 5);
  CHECK(set.boundary.size() == 200);
  CHECK(set.initial.size() == 200);
  CHECK(set.interior.size() == 1400);
  int on_edge = 0;
  for (const auto& d : set.boundary) {
    if (d.pt[0] == -1.0 || d.pt[0] == 1.0 || d.pt[1] == -1.0 || d.pt[1] == 1.0) ++on_edge;
  }
  CHECK(on_edge == 200);
  CHECK_THROWS_AS(sampling::sample(p, 401, 100, 5), ConfigError);
}

TEST_CASE("ode sampling puts every data point on the initial value") {
  const auto& p = prob::find("exp-ode");
  const auto set = sampling::sample(p, 64, 128, 9);
  CHECK(set.initial.size() == 64);
  CHECK(set.boundary.empty());
  for (const auto& d : set.initial) {
    CHECK(d.pt[0] == 0.0);
    CHECK(d.target[0] == std::get<prob::OdeParams>(p.params).c);
  }
  CHECK(set.interior.size() == 128 + 64);
}

TEST_CASE("interior sampling covers both halves of every axis") {
  const auto& p = prob::find("toy");
  const auto set = sampling::sample(p, 400, 1200, 11);
  const double mid_x = 1.0, mid_t = 0.5;
  int lx = 0, lt = 0;
  int n = 0;
  for (std::size_t i = 0; i < 1200; ++i) {  // raw interior, before stacking
    lx += set.interior[i][0] < mid_x;
    lt += set.interior[i][1] < mid_t;
    ++n;
  }
  CHECK(lx >= static_cast<int>(0.35 * n));
  CHECK(n - lx >= static_cast<int>(0.35 * n));
  CHECK(lt >= static_cast<int>(0.35 * n));
  CHECK(n - lt >= static_cast<int>(0.35 * n));
}

TEST_CASE("divisibility violations are configuration errors") {
  CHECK_THROWS_AS(sampling::sample(prob::find("toy"), 402, 100, 1), ConfigError);
  CHECK_THROWS_AS(sampling::sample(prob::find("toy"), 0, 100, 1), ConfigError);
}

TEST_CASE("collocation export lists one row per point") {
  const auto& p = prob::find("burgers");
  const auto set = sampling::sample(p, 40, 100, 2);
  const auto path = std::filesystem::temp_directory_path() / "pinn_colloc_test.csv";
  sampling::write_csv(set, p, path);
  std::ifstream f(path);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 1 + set.initial.size() + set.boundary.size() + set.interior.size());
  std::filesystem::remove(path);
}
