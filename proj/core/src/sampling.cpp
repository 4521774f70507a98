#include "pinn/sampling.hpp"

#include <cstdio>
#include <fstream>

#include "pinn/rng.hpp"

namespace pinn::sampling {

namespace {

DataPoint make_data_point(const prob::Problem& p, std::array<double, 3> pt,
                          bool initial, int axis = 0, int side = 0) {
  DataPoint d;
  d.pt = pt;
  std::array<double, 2> tgt{0.0, 0.0};
  std::span<double> out(tgt.data(), static_cast<std::size_t>(p.field_count));
  const std::span<const double> coords(pt.data(), static_cast<std::size_t>(p.input_dim()));
  if (initial) {
    p.ic(coords.first(coords.size() - 1), out);
  } else {
    p.bc(axis, side, coords, out);
  }
  d.target = tgt;
  return d;
}

}  // namespace

CollocationSet sample(const prob::Problem& p, int n_data, int n_interior,
                      std::uint64_t seed) {
  const int dims = p.space_dims();
  const int faces = dims == 0 ? 0 : (dims == 1 ? 4 : 8);
  if (faces > 0 && n_data % faces != 0) {
    throw ConfigError("n_data must be divisible by " + std::to_string(faces) +
                      " for " + p.id);
  }
  if (n_data < 1 || n_interior < 0) throw ConfigError("sample: bad counts");

  UniformRng rng(seed);
  const double t0 = p.domain.time.lo;
  const double t1 = p.domain.time.hi;
  const double bt_lo = std::max(t0, p.boundary_time_lo);

  CollocationSet set;

  if (dims == 0) {
    // ODE: every data point is the initial condition
    for (int i = 0; i < n_data; ++i) {
      set.initial.push_back(make_data_point(p, {t0, 0.0, 0.0}, true));
    }
  } else if (dims == 1) {
    const auto& sx = p.space(0);
    const int quarter = n_data / 4;
    for (int i = 0; i < quarter; ++i) {
      set.boundary.push_back(
          make_data_point(p, {sx.lo, rng.uniform(bt_lo, t1), 0.0}, false, 0, 0));
    }
    for (int i = 0; i < quarter; ++i) {
      set.boundary.push_back(
          make_data_point(p, {sx.hi, rng.uniform(bt_lo, t1), 0.0}, false, 0, 1));
    }
    for (int i = 0; i < n_data / 2; ++i) {
      set.initial.push_back(
          make_data_point(p, {rng.uniform(sx.lo, sx.hi), t0, 0.0}, true));
    }
  } else {
    const auto& sx = p.space(0);
    const auto& sy = p.space(1);
    const int eighth = n_data / 8;
    for (int i = 0; i < eighth; ++i) {
      set.boundary.push_back(make_data_point(
          p, {sx.lo, rng.uniform(sy.lo, sy.hi), rng.uniform(bt_lo, t1)}, false, 0, 0));
    }
    for (int i = 0; i < eighth; ++i) {
      set.boundary.push_back(make_data_point(
          p, {sx.hi, rng.uniform(sy.lo, sy.hi), rng.uniform(bt_lo, t1)}, false, 0, 1));
    }
    for (int i = 0; i < eighth; ++i) {
      set.boundary.push_back(make_data_point(
          p, {rng.uniform(sx.lo, sx.hi), sy.hi, rng.uniform(bt_lo, t1)}, false, 1, 1));
    }
    for (int i = 0; i < eighth; ++i) {
      set.boundary.push_back(make_data_point(
          p, {rng.uniform(sx.lo, sx.hi), sy.lo, rng.uniform(bt_lo, t1)}, false, 1, 0));
    }
    for (int i = 0; i < n_data / 2; ++i) {
      set.initial.push_back(make_data_point(
          p, {rng.uniform(sx.lo, sx.hi), rng.uniform(sy.lo, sy.hi), t0}, true));
    }
  }

  set.interior.reserve(static_cast<std::size_t>(n_interior) + set.initial.size() +
                       set.boundary.size());
  const double it_lo = std::max(t0, p.interior_time_lo);
  for (int i = 0; i < n_interior; ++i) {
    std::array<double, 3> pt{0.0, 0.0, 0.0};
    for (int a = 0; a < dims; ++a) {
      pt[static_cast<std::size_t>(a)] = rng.uniform(p.space(a).lo, p.space(a).hi);
    }
    pt[static_cast<std::size_t>(dims)] = rng.uniform(it_lo, t1);
    set.interior.push_back(pt);
  }
  // the listings fold every conditioned point into the residual set as well
  for (const auto& d : set.initial) set.interior.push_back(d.pt);
  for (const auto& d : set.boundary) set.interior.push_back(d.pt);
  return set;
}

void write_csv(const CollocationSet& set, const prob::Problem& p,
               const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw Error("write_csv: cannot open " + path.string());
  const int dims = p.space_dims();
  f << "role";
  for (int a = 0; a < dims; ++a) f << ",x" << a;
  f << ",t";
  for (int i = 0; i < p.field_count; ++i) f << ",target" << i;
  f << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    f << buf;
  };
  auto row = [&](const char* role, const std::array<double, 3>& pt,
                 const std::array<double, 2>* tgt) {
    f << role;
    for (int c = 0; c < p.input_dim(); ++c) {
      f << ',';
      put(pt[static_cast<std::size_t>(c)]);
    }
    for (int i = 0; i < p.field_count; ++i) {
      f << ',';
      if (tgt) {
        put((*tgt)[static_cast<std::size_t>(i)]);
      }
    }
    f << '\n';
  };
  for (const auto& d : set.initial) row("initial", d.pt, &d.target);
  for (const auto& d : set.boundary) row("boundary", d.pt, &d.target);
  for (const auto& q : set.interior) row("interior", q, nullptr);
}

}  // namespace pinn::sampling
