#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinn/errors.hpp"
#include "pinn/problems.hpp"

namespace pinn::fdm {

struct Axis {
  double origin = 0.0;
  double step = 1.0;
  int count = 0;

  double coord(int i) const { return origin + step * i; }
  bool operator==(const Axis&) const = default;
};

// Discretized solution: stored time slices over a regular spatial grid.
// Layout: time-major, then field, then row-major space (y outer, x inner).
class FieldGrid {
 public:
  FieldGrid() = default;
  FieldGrid(std::vector<Axis> space, std::vector<double> times, int field_count);

  int field_count() const { return field_count_; }
  const std::vector<Axis>& space() const { return space_; }
  const std::vector<double>& times() const { return times_; }
  int nx() const { return space_[0].count; }
  int ny() const { return space_.size() > 1 ? space_[1].count : 1; }
  std::size_t spatial_size() const;
  std::size_t slice_stride() const { return spatial_size() * static_cast<std::size_t>(field_count_); }

  double& at(int it, int field, int ix, int iy = 0);
  double at(int it, int field, int ix, int iy = 0) const;
  std::span<double> slice(int it, int field);
  std::span<const double> slice(int it, int field) const;
  std::span<const double> raw() const { return data_; }
  std::span<double> raw() { return data_; }

  bool same_grid(const FieldGrid& other) const;

  bool diverged = false;
  int diverged_step = -1;

 private:
  std::vector<Axis> space_;
  std::vector<double> times_;
  int field_count_ = 1;
  std::vector<double> data_;
};

// Keep every step, or only the slices nearest the requested times.
struct Snapshots {
  bool full_history = true;
  std::vector<double> times;  // used when full_history is false

  static Snapshots full() { return {}; }
  static Snapshots at(std::vector<double> ts) { return {false, std::move(ts)}; }
};

// linear-time tridiagonal solve (lower/diag/upper bands), no pivoting;
// callers guarantee diagonal dominance
std::vector<double> thomas_solve(std::span<const double> lower,
                                 std::span<const double> diag,
                                 std::span<const double> upper,
                                 std::span<const double> rhs);

struct ToyFdOptions {
  double dx = 0.005;
  double dt = 0.0005;
  Snapshots snapshots = Snapshots::full();
};
FieldGrid solve_toy_fd(const ToyFdOptions& opt, const prob::ToyParams& p);

struct BurgersFdOptions {
  double dx = 0.01;
  double r = 0.25;  // nu dt / dx^2
  double t_final = 0.1;
  Snapshots snapshots = Snapshots::full();
};
FieldGrid solve_burgers_fd(const BurgersFdOptions& opt, const prob::BurgersParams& p);

struct Heat2dFdOptions {
  double half_width = 10.0;  // box [-h, h]^2
  double dx = 0.2;
  double dt = 0.0025;
  double t_final = 0.25;
  Snapshots snapshots = Snapshots::at({0.0, 0.25});
  // defaults: Gaussian pulse data, closed-form boundary ring
  std::function<double(double, double)> ic;
  std::function<double(double, double, double)> bc;
};
FieldGrid solve_heat2d_fd(const Heat2dFdOptions& opt, const prob::HeatParams& p);

struct KdvFdOptions {
  double dx = 1.0;
  double dt = 0.02;
  double t_final = 10.0;
  Snapshots snapshots = Snapshots::full();
  bool zero_ic = false;  // replace the soliton data with the rest state
};
FieldGrid solve_kdv_fd(const KdvFdOptions& opt, const prob::KdvParams& p);

struct FisherFdOptions {
  double x_lo = -50.0;
  double x_hi = 50.0;
  double dx = 0.1;
  double dt = 0.001;
  double t_final = 1.0;
  Snapshots snapshots = Snapshots::full();
  std::function<double(double)> ic;  // default: Heaviside step
  double bc_left = 1.0;
  double bc_right = 0.0;
};
FieldGrid solve_fisher_fd(const FisherFdOptions& opt, const prob::FisherParams& p);

struct Turing1FdOptions {
  double length = 3000.0;
  int n = 3000;
  double dt = 1.0;
  double t_final = 2000.0;
  // pulse 1e15 on 1495 < x < 1505
  double pulse_height = 1e15;
  double pulse_lo = 1495.0;
  double pulse_hi = 1505.0;
  Snapshots snapshots = Snapshots::at({0.0, 2000.0});
};
FieldGrid solve_turing1_fd(const Turing1FdOptions& opt, const prob::Turing1Params& p);

struct Turing2FdOptions {
  int size = 100;           // grid cells per side over [-1, 1]
  double dt = 0.001;
  double t_final = 15.0;
  Snapshots snapshots = Snapshots::at({0.0, 15.0});
  std::optional<double> uniform_ic;  // control run: constant fields, no noise
};
FieldGrid solve_turing2_fd(const Turing2FdOptions& opt, const prob::Turing2Params& p,
                           std::uint64_t seed);

// every `space_stride`-th node and `time_stride`-th stored slice
FieldGrid downsample(const FieldGrid& g, int space_stride, int time_stride);

// CSV: header row with axis coordinates then field columns, one row per
// (time, space) node in storage order, %.17g formatting
void write_csv(const FieldGrid& g, const std::filesystem::path& path,
               std::span<const std::string> field_names);

// raw binary snapshot (header + little-endian float64), bit-exact round trip
void write_binary(const FieldGrid& g, const std::filesystem::path& path);
FieldGrid read_binary(const std::filesystem::path& path);

}  // namespace pinn::fdm
