#include "pinn/fdm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "pinn/oracles.hpp"
#include "pinn/rng.hpp"

namespace pinn::fdm {

FieldGrid::FieldGrid(std::vector<Axis> space, std::vector<double> times, int field_count)
    : space_(std::move(space)), times_(std::move(times)), field_count_(field_count) {
  for (const Axis& a : space_) {
    if (a.step <= 0.0 || a.count < 3) throw ConfigError("bad spatial axis");
  }
  data_.assign(times_.size() * slice_stride(), 0.0);
}

std::size_t FieldGrid::spatial_size() const {
  std::size_t n = 1;
  for (const Axis& a : space_) n *= static_cast<std::size_t>(a.count);
  return n;
}

double& FieldGrid::at(int it, int field, int ix, int iy) {
  return data_[(static_cast<std::size_t>(it) * field_count_ + field) * spatial_size() +
               static_cast<std::size_t>(iy) * nx() + ix];
}

double FieldGrid::at(int it, int field, int ix, int iy) const {
  return data_[(static_cast<std::size_t>(it) * field_count_ + field) * spatial_size() +
               static_cast<std::size_t>(iy) * nx() + ix];
}

std::span<double> FieldGrid::slice(int it, int field) {
  return {data_.data() +
              (static_cast<std::size_t>(it) * field_count_ + field) * spatial_size(),
          spatial_size()};
}

std::span<const double> FieldGrid::slice(int it, int field) const {
  return {data_.data() +
              (static_cast<std::size_t>(it) * field_count_ + field) * spatial_size(),
          spatial_size()};
}

bool FieldGrid::same_grid(const FieldGrid& other) const {
  return space_ == other.space_ && times_ == other.times_ &&
         field_count_ == other.field_count_;
}

std::vector<double> thomas_solve(std::span<const double> lower,
                                 std::span<const double> diag,
                                 std::span<const double> upper,
                                 std::span<const double> rhs) {
  const std::size_t n = rhs.size();
  if (lower.size() != n || diag.size() != n || upper.size() != n) {
    throw ShapeError("thomas_solve: band length mismatch");
  }
  std::vector<double> c(n, 0.0), d(n, 0.0), x(n, 0.0);
  c[0] = upper[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - lower[i] * c[i - 1];
    c[i] = (i + 1 < n) ? upper[i] / m : 0.0;
    d[i] = (rhs[i] - lower[i] * d[i - 1]) / m;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

namespace {

// Step indices to keep, plus the stored-time coordinates.
struct StorePlan {
  std::vector<int> steps;
  std::vector<double> times;
  std::vector<int> slot_of_step;  // -1 when not stored

  StorePlan(const Snapshots& snap, int n_steps, double t0, double dt) {
    std::vector<int> idx;
    if (snap.full_history) {
      idx.resize(static_cast<std::size_t>(n_steps));
      for (int i = 0; i < n_steps; ++i) idx[static_cast<std::size_t>(i)] = i;
    } else {
      for (double t : snap.times) {
        int i = static_cast<int>(std::lround((t - t0) / dt));
        i = std::clamp(i, 0, n_steps - 1);
        idx.push_back(i);
      }
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    }
    steps = idx;
    times.reserve(idx.size());
    for (int i : idx) times.push_back(t0 + dt * i);
    slot_of_step.assign(static_cast<std::size_t>(n_steps), -1);
    for (std::size_t s = 0; s < idx.size(); ++s) {
      slot_of_step[static_cast<std::size_t>(idx[s])] = static_cast<int>(s);
    }
  }

  int slot(int step) const { return slot_of_step[static_cast<std::size_t>(step)]; }
};

bool all_finite_bounded(std::span<const double> v, double bound) {
  for (double x : v) {
    if (!std::isfinite(x) || std::abs(x) > bound) return false;
  }
  return true;
}

}  // namespace

FieldGrid solve_toy_fd(const ToyFdOptions& opt, const prob::ToyParams&) {
  if (opt.dt > opt.dx) {
    throw StabilityError("toy scheme needs dt <= dx; try dt = " +
                         std::to_string(opt.dx));
  }
  const int n = static_cast<int>(std::lround(2.0 / opt.dx)) + 1;
  const int m = static_cast<int>(std::lround(1.0 / opt.dt)) + 1;
  StorePlan plan(opt.snapshots, m, 0.0, opt.dt);
  FieldGrid g({{0.0, opt.dx, n}}, plan.times, 1);

  std::vector<double> u(static_cast<std::size_t>(n)), un(u.size());
  for (int i = 0; i < n; ++i) {
    const double x = opt.dx * i;
    u[static_cast<std::size_t>(i)] = 6.0 * std::exp(-3.0 * x);
  }
  if (plan.slot(0) >= 0) std::copy(u.begin(), u.end(), g.slice(plan.slot(0), 0).begin());

  // rewritten as u_t = (u_x - u)/2: information flows from larger x, so the
  // one-sided stencil looks right
  for (int j = 1; j < m; ++j) {
    const double t = opt.dt * j;
    for (int i = 0; i + 1 < n; ++i) {
      const double ux = (u[static_cast<std::size_t>(i + 1)] - u[static_cast<std::size_t>(i)]) / opt.dx;
      un[static_cast<std::size_t>(i)] =
          u[static_cast<std::size_t>(i)] + opt.dt * 0.5 * (ux - u[static_cast<std::size_t>(i)]);
    }
    un[0] = 6.0 * std::exp(-2.0 * t);
    un[static_cast<std::size_t>(n - 1)] = 6.0 * std::exp(-6.0 - 2.0 * t);
    u.swap(un);
    if (plan.slot(j) >= 0) std::copy(u.begin(), u.end(), g.slice(plan.slot(j), 0).begin());
  }
  return g;
}

FieldGrid solve_burgers_fd(const BurgersFdOptions& opt, const prob::BurgersParams& p) {
  if (opt.r > 0.5) {
    throw StabilityError("burgers heat march needs r <= 1/2; got r = " +
                         std::to_string(opt.r));
  }
  const double dt = opt.r * opt.dx * opt.dx / p.nu;
  const int n = static_cast<int>(std::lround(1.0 / opt.dx));
  const int m = static_cast<int>(std::lround(opt.t_final / dt));
  StorePlan plan(opt.snapshots, m, 0.0, dt);
  // the transform is defined on interior theta nodes only
  FieldGrid g({{opt.dx, opt.dx, n - 2}}, plan.times, 1);

  std::vector<double> th(static_cast<std::size_t>(n)), thn(th.size());
  constexpr double pi = std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    const double x = opt.dx * i;
    th[static_cast<std::size_t>(i)] = std::exp((std::cos(pi * x) - 1.0) / (2.0 * pi * p.nu));
  }
  const double r = opt.r;

  auto transform = [&](int slot) {
    auto out = g.slice(slot, 0);
    for (int i = 1; i <= n - 2; ++i) {
      const double th_i = th[static_cast<std::size_t>(i)];
      if (!(th_i > 0.0)) {
        throw SingularityError("Cole-Hopf transform hit theta <= 0 at node " +
                               std::to_string(i));
      }
      out[static_cast<std::size_t>(i - 1)] =
          -(p.nu / opt.dx) *
          (th[static_cast<std::size_t>(i + 1)] - th[static_cast<std::size_t>(i - 1)]) / th_i;
    }
  };
  if (plan.slot(0) >= 0) transform(plan.slot(0));

  for (int j = 1; j < m; ++j) {
    thn[0] = (1.0 - 2.0 * r) * th[0] + 2.0 * r * th[1];
    for (int i = 1; i < n - 1; ++i) {
      thn[static_cast<std::size_t>(i)] = r * th[static_cast<std::size_t>(i - 1)] +
                                         (1.0 - 2.0 * r) * th[static_cast<std::size_t>(i)] +
                                         r * th[static_cast<std::size_t>(i + 1)];
    }
    thn[static_cast<std::size_t>(n - 1)] =
        2.0 * r * th[static_cast<std::size_t>(n - 2)] +
        (1.0 - 2.0 * r) * th[static_cast<std::size_t>(n - 1)];
    th.swap(thn);
    if (plan.slot(j) >= 0) transform(plan.slot(j));
  }
  return g;
}

FieldGrid solve_heat2d_fd(const Heat2dFdOptions& opt, const prob::HeatParams& p) {
  const double bound = p.alpha * opt.dt * 2.0 / (opt.dx * opt.dx);
  if (bound > 0.5) {
    throw StabilityError("heat2d explicit march needs alpha dt (1/dx^2 + 1/dy^2) <= 1/2; try dt = " +
                         std::to_string(0.25 * opt.dx * opt.dx / p.alpha));
  }
  const int n = static_cast<int>(std::lround(2.0 * opt.half_width / opt.dx)) + 1;
  const int m = static_cast<int>(std::lround(opt.t_final / opt.dt)) + 1;
  StorePlan plan(opt.snapshots, m, 0.0, opt.dt);
  FieldGrid g({{-opt.half_width, opt.dx, n}, {-opt.half_width, opt.dx, n}}, plan.times, 1);

  const auto xc = [&](int i) { return -opt.half_width + opt.dx * i; };
  auto ic = opt.ic ? opt.ic
                   : [](double x, double y) { return std::exp(-x * x - y * y); };
  auto bc = opt.bc ? opt.bc : [&p](double x, double y, double t) {
    return oracle::heat2d_exact(x, y, t, p.alpha);
  };
  std::vector<double> u(static_cast<std::size_t>(n) * n), un(u.size());
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      u[static_cast<std::size_t>(iy) * n + ix] = ic(xc(ix), xc(iy));
    }
  }
  if (plan.slot(0) >= 0) std::copy(u.begin(), u.end(), g.slice(plan.slot(0), 0).begin());

  const double c = p.alpha * opt.dt / (opt.dx * opt.dx);
  for (int j = 1; j < m; ++j) {
    const double t = opt.dt * j;
    for (int iy = 1; iy < n - 1; ++iy) {
      for (int ix = 1; ix < n - 1; ++ix) {
        const std::size_t k = static_cast<std::size_t>(iy) * n + ix;
        un[k] = u[k] + c * (u[k + 1] - 2.0 * u[k] + u[k - 1]) +
                c * (u[k + static_cast<std::size_t>(n)] - 2.0 * u[k] + u[k - static_cast<std::size_t>(n)]);
      }
    }
    // boundary ring carries the far-field values
    for (int i = 0; i < n; ++i) {
      un[static_cast<std::size_t>(i)] = bc(xc(i), xc(0), t);
      un[static_cast<std::size_t>(n - 1) * n + i] = bc(xc(i), xc(n - 1), t);
      un[static_cast<std::size_t>(i) * n] = bc(xc(0), xc(i), t);
      un[static_cast<std::size_t>(i) * n + n - 1] = bc(xc(n - 1), xc(i), t);
    }
    u.swap(un);
    if (plan.slot(j) >= 0) std::copy(u.begin(), u.end(), g.slice(plan.slot(j), 0).begin());
  }
  return g;
}

FieldGrid solve_kdv_fd(const KdvFdOptions& opt, const prob::KdvParams& p) {
  const int n = static_cast<int>(std::lround(500.0 / opt.dx));
  const int m = static_cast<int>(std::lround(opt.t_final / opt.dt));
  StorePlan plan(opt.snapshots, m, 0.0, opt.dt);
  FieldGrid g({{-250.0, opt.dx, n}}, plan.times, 2);

  std::vector<double> u(static_cast<std::size_t>(n)), v(u.size()), un(u.size()), vn(u.size());
  if (!opt.zero_ic) {
    for (int i = 0; i < n; ++i) {
      oracle::kdv_exact(-250.0 + opt.dx * i, 0.0, p, u[static_cast<std::size_t>(i)],
                        v[static_cast<std::size_t>(i)]);
    }
  }
  auto store = [&](int slot) {
    std::copy(u.begin(), u.end(), g.slice(slot, 0).begin());
    std::copy(v.begin(), v.end(), g.slice(slot, 1).begin());
  };
  if (plan.slot(0) >= 0) store(plan.slot(0));

  const double al = opt.dt / opt.dx;
  const double be = opt.dt / (opt.dx * opt.dx * opt.dx);
  for (int k = 1; k < m; ++k) {
    std::fill(un.begin(), un.end(), 0.0);
    std::fill(vn.begin(), vn.end(), 0.0);
    for (int i = 2; i < n - 3; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      un[s] = u[s] + 6.0 * p.a * al * u[s] * (u[s] - u[s - 1]) -
              2.0 * p.b * al * v[s] * (v[s] - v[s - 1]) -
              0.5 * p.a * be * (u[s + 2] - 2.0 * u[s + 1] + 2.0 * u[s - 1] - u[s - 2]);
      vn[s] = v[s] - 3.0 * al * u[s] * (v[s] - v[s - 1]) +
              0.5 * be * (v[s + 2] - 2.0 * v[s + 1] + 2.0 * v[s - 1] - v[s - 2]);
    }
    u.swap(un);
    v.swap(vn);
    if (!all_finite_bounded(u, 1e8) || !all_finite_bounded(v, 1e8)) {
      g.diverged = true;
      g.diverged_step = k;
      return g;
    }
    if (plan.slot(k) >= 0) store(plan.slot(k));
  }
  return g;
}

FieldGrid solve_fisher_fd(const FisherFdOptions& opt, const prob::FisherParams& p) {
  const double r = p.diffusivity * opt.dt / (opt.dx * opt.dx);
  if (r > 0.5) {
    throw StabilityError("fisher explicit march needs D dt / dx^2 <= 1/2; try dt = " +
                         std::to_string(0.5 * opt.dx * opt.dx / p.diffusivity));
  }
  const int n = static_cast<int>(std::lround((opt.x_hi - opt.x_lo) / opt.dx));
  const int m = static_cast<int>(std::lround(opt.t_final / opt.dt));
  StorePlan plan(opt.snapshots, m, 0.0, opt.dt);
  FieldGrid g({{opt.x_lo, opt.dx, n}}, plan.times, 1);

  auto ic = opt.ic ? opt.ic : [](double x) { return x <= 0.0 ? 1.0 : 0.0; };
  std::vector<double> u(static_cast<std::size_t>(n)), un(u.size());
  for (int i = 0; i < n; ++i) {
    u[static_cast<std::size_t>(i)] = ic(opt.x_lo + opt.dx * i);
  }
  u[0] = opt.bc_left;
  u[static_cast<std::size_t>(n - 1)] = opt.bc_right;
  if (plan.slot(0) >= 0) std::copy(u.begin(), u.end(), g.slice(plan.slot(0), 0).begin());

  const double beta = p.growth * opt.dt;
  for (int k = 1; k < m; ++k) {
    un = u;
    for (int i = 1; i < n - 2; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      un[s] = u[s] + r * (u[s + 1] - 2.0 * u[s] + u[s - 1]) + beta * u[s] * (1.0 - u[s]);
    }
    un[0] = opt.bc_left;
    un[static_cast<std::size_t>(n - 1)] = opt.bc_right;
    u.swap(un);
    if (plan.slot(k) >= 0) std::copy(u.begin(), u.end(), g.slice(plan.slot(k), 0).begin());
  }
  return g;
}

FieldGrid solve_turing1_fd(const Turing1FdOptions& opt, const prob::Turing1Params& p) {
  const int n = opt.n;
  const double dx = opt.length / (n - 1);
  const int m = static_cast<int>(std::lround(opt.t_final / opt.dt)) + 1;
  StorePlan plan(opt.snapshots, m, 0.0, opt.dt);
  FieldGrid g({{0.0, dx, n}}, plan.times, 2);

  const double kb = opt.dt / (dx * dx) * p.d_b;
  const double kc = opt.dt / (dx * dx) * p.d_c;
  std::vector<double> lob(static_cast<std::size_t>(n), -kb), upb(lob), dib(lob.size(), 1.0 + 2.0 * kb);
  std::vector<double> loc(static_cast<std::size_t>(n), -kc), upc(loc), dic(loc.size(), 1.0 + 2.0 * kc + opt.dt * p.r_c);
  // zero-flux ends: the missing neighbour folds into the corner diagonal
  dib.front() = dib.back() = 1.0 + kb;
  dic.front() = dic.back() = 1.0 + kc + opt.dt * p.r_c;

  std::vector<double> B(static_cast<std::size_t>(n), 0.0), C(B.size(), 0.0), rhs(B.size());
  for (int i = 0; i < n; ++i) {
    const double x = dx * i;
    B[static_cast<std::size_t>(i)] =
        (x > opt.pulse_lo && x < opt.pulse_hi) ? opt.pulse_height : 0.0;
  }
  auto store = [&](int slot) {
    std::copy(B.begin(), B.end(), g.slice(slot, 0).begin());
    std::copy(C.begin(), C.end(), g.slice(slot, 1).begin());
  };
  if (plan.slot(0) >= 0) store(plan.slot(0));

  for (int j = 1; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      const double depletion = 1.0 - B[s] / p.b_i;
      rhs[s] = B[s] + opt.dt * p.f_e * C[s] * depletion + opt.dt * p.r_b * depletion * B[s] -
               opt.dt * p.a * B[s] * C[s] / (p.s_b + B[s]);
    }
    B = thomas_solve(lob, dib, upb, rhs);
    for (int i = 0; i < n; ++i) {
      rhs[static_cast<std::size_t>(i)] = C[static_cast<std::size_t>(i)] +
                                         opt.dt * p.f_b * B[static_cast<std::size_t>(i)];
    }
    C = thomas_solve(loc, dic, upc, rhs);
    if (!all_finite_bounded(B, 1e30) || !all_finite_bounded(C, 1e30)) {
      g.diverged = true;
      g.diverged_step = j;
      return g;
    }
    if (plan.slot(j) >= 0) store(plan.slot(j));
  }
  return g;
}

FieldGrid solve_turing2_fd(const Turing2FdOptions& opt, const prob::Turing2Params& p,
                           std::uint64_t seed) {
  const int n = opt.size;
  const double dx = 2.0 / n;
  const double diff_bound = std::max(p.a, p.b) * opt.dt * 2.0 / (dx * dx);
  if (diff_bound > 0.5) {
    throw StabilityError("turing2 explicit march needs max(a,b) dt (2/dx^2) <= 1/2");
  }
  const int m = static_cast<int>(std::lround(opt.t_final / opt.dt)) + 1;
  StorePlan plan(opt.snapshots, m, 0.0, opt.dt);
  FieldGrid g({{-1.0 + dx / 2.0, dx, n}, {-1.0 + dx / 2.0, dx, n}}, plan.times, 2);

  std::vector<double> U(static_cast<std::size_t>(n) * n), V(U.size());
  if (opt.uniform_ic) {
    std::fill(U.begin(), U.end(), *opt.uniform_ic);
    std::fill(V.begin(), V.end(), *opt.uniform_ic);
  } else {
    UniformRng rng(seed);
    for (double& x : U) x = rng.next();
    for (double& x : V) x = rng.next();
  }

  auto store = [&](int slot) {
    std::copy(U.begin(), U.end(), g.slice(slot, 0).begin());
    std::copy(V.begin(), V.end(), g.slice(slot, 1).begin());
  };
  if (plan.slot(0) >= 0) store(plan.slot(0));

  std::vector<double> Un(U.size()), Vn(V.size());
  const double inv_dx2 = 1.0 / (dx * dx);
  for (int k = 1; k < m; ++k) {
    for (int iy = 1; iy < n - 1; ++iy) {
      for (int ix = 1; ix < n - 1; ++ix) {
        const std::size_t s = static_cast<std::size_t>(iy) * n + ix;
        const double lu = (U[s - 1] + U[s + 1] + U[s - static_cast<std::size_t>(n)] +
                           U[s + static_cast<std::size_t>(n)] - 4.0 * U[s]) * inv_dx2;
        const double lv = (V[s - 1] + V[s + 1] + V[s - static_cast<std::size_t>(n)] +
                           V[s + static_cast<std::size_t>(n)] - 4.0 * V[s]) * inv_dx2;
        Un[s] = U[s] + opt.dt * (p.a * lu + U[s] - U[s] * U[s] * U[s] - V[s] + p.c);
        Vn[s] = V[s] + opt.dt * (p.b * lv + U[s] - V[s]) / p.tau;
      }
    }
    // zero-flux edges by ghost copy
    for (auto* Z : {&Un, &Vn}) {
      auto& z = *Z;
      for (int ix = 0; ix < n; ++ix) {
        z[static_cast<std::size_t>(ix)] = z[static_cast<std::size_t>(n) + ix];
        z[static_cast<std::size_t>(n - 1) * n + ix] = z[static_cast<std::size_t>(n - 2) * n + ix];
      }
      for (int iy = 0; iy < n; ++iy) {
        z[static_cast<std::size_t>(iy) * n] = z[static_cast<std::size_t>(iy) * n + 1];
        z[static_cast<std::size_t>(iy) * n + n - 1] = z[static_cast<std::size_t>(iy) * n + n - 2];
      }
    }
    U.swap(Un);
    V.swap(Vn);
    if (!all_finite_bounded(U, 1e6) || !all_finite_bounded(V, 1e6)) {
      g.diverged = true;
      g.diverged_step = k;
      return g;
    }
    if (plan.slot(k) >= 0) store(plan.slot(k));
  }
  return g;
}

FieldGrid downsample(const FieldGrid& g, int space_stride, int time_stride) {
  std::vector<Axis> axes = g.space();
  for (Axis& a : axes) {
    a.count = (a.count - 1) / space_stride + 1;
    a.step *= space_stride;
  }
  std::vector<double> times;
  for (std::size_t i = 0; i < g.times().size(); i += static_cast<std::size_t>(time_stride)) {
    times.push_back(g.times()[i]);
  }
  FieldGrid out(axes, times, g.field_count());
  const int ny = g.space().size() > 1 ? axes[1].count : 1;
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (int f = 0; f < g.field_count(); ++f) {
      for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < axes[0].count; ++ix) {
          out.at(static_cast<int>(it), f, ix, iy) =
              g.at(static_cast<int>(it) * time_stride, f, ix * space_stride,
                   iy * space_stride);
        }
      }
    }
  }
  out.diverged = g.diverged;
  out.diverged_step = g.diverged_step;
  return out;
}

void write_csv(const FieldGrid& g, const std::filesystem::path& path,
               std::span<const std::string> field_names) {
  std::ofstream f(path);
  if (!f) throw Error("write_csv: cannot open " + path.string());
  const bool two_d = g.space().size() > 1;
  f << (two_d ? "x,y,t" : "x,t");
  for (int i = 0; i < g.field_count(); ++i) {
    f << ',' << (i < static_cast<int>(field_names.size()) ? field_names[static_cast<std::size_t>(i)]
                                                          : "f" + std::to_string(i));
  }
  f << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    f << buf;
  };
  for (std::size_t it = 0; it < g.times().size(); ++it) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      for (int ix = 0; ix < g.nx(); ++ix) {
        put(g.space()[0].coord(ix));
        if (two_d) {
          f << ',';
          put(g.space()[1].coord(iy));
        }
        f << ',';
        put(g.times()[it]);
        for (int field = 0; field < g.field_count(); ++field) {
          f << ',';
          put(g.at(static_cast<int>(it), field, ix, iy));
        }
        f << '\n';
      }
    }
  }
}

namespace {
constexpr char kGridMagic[8] = {'P', 'I', 'N', 'N', 'F', 'G', '0', '1'};
}

void write_binary(const FieldGrid& g, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("write_binary: cannot open " + path.string());
  f.write(kGridMagic, 8);
  auto put_u32 = [&](std::uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); };
  auto put_f64 = [&](double v) { f.write(reinterpret_cast<const char*>(&v), 8); };
  put_u32(1);
  put_u32(static_cast<std::uint32_t>(g.field_count()));
  put_u32(static_cast<std::uint32_t>(g.space().size()));
  for (const Axis& a : g.space()) {
    put_f64(a.origin);
    put_f64(a.step);
    put_u32(static_cast<std::uint32_t>(a.count));
  }
  put_u32(static_cast<std::uint32_t>(g.times().size()));
  for (double t : g.times()) put_f64(t);
  put_u32(g.diverged ? 1u : 0u);
  put_u32(static_cast<std::uint32_t>(g.diverged_step + 1));
  f.write(reinterpret_cast<const char*>(g.raw().data()),
          static_cast<std::streamsize>(g.raw().size() * sizeof(double)));
  if (!f) throw Error("write_binary: write failed for " + path.string());
}

FieldGrid read_binary(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("read_binary: cannot open " + path.string());
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, kGridMagic, 8) != 0) {
    throw Error("read_binary: bad magic in " + path.string());
  }
  auto get_u32 = [&]() {
    std::uint32_t v = 0;
    f.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  auto get_f64 = [&]() {
    double v = 0;
    f.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  if (get_u32() != 1) throw Error("read_binary: unsupported version");
  const int fields = static_cast<int>(get_u32());
  const std::uint32_t ndims = get_u32();
  std::vector<Axis> axes(ndims);
  for (Axis& a : axes) {
    a.origin = get_f64();
    a.step = get_f64();
    a.count = static_cast<int>(get_u32());
  }
  const std::uint32_t ntimes = get_u32();
  std::vector<double> times(ntimes);
  for (double& t : times) t = get_f64();
  const std::uint32_t diverged = get_u32();
  const std::uint32_t dstep = get_u32();
  FieldGrid g(std::move(axes), std::move(times), fields);
  g.diverged = diverged != 0;
  g.diverged_step = static_cast<int>(dstep) - 1;
  f.read(reinterpret_cast<char*>(g.raw().data()),
         static_cast<std::streamsize>(g.raw().size() * sizeof(double)));
  if (!f) throw Error("read_binary: truncated file " + path.string());
  return g;
}

}  // namespace pinn::fdm
