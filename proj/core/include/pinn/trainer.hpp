#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pinn/fdm.hpp"
#include "pinn/network.hpp"
#include "pinn/optim.hpp"
#include "pinn/problems.hpp"
#include "pinn/sampling.hpp"

namespace pinn::train {

enum class OptimizerKind : std::uint8_t { Adam, Lbfgs };

struct TrainConfig {
  std::string problem_id = "toy";
  net::MlpConfig mlp;                       // input/output dims forced by problem
  OptimizerKind optimizer = OptimizerKind::Adam;
  optim::AdamConfig adam;
  optim::LbfgsConfig lbfgs;
  long iterations = 15000;
  int n_data = 1000;
  int n_interior = 1000;
  std::uint64_t seed = 1;
  long cadence = 100;                       // history recording stride
  std::array<double, 3> loss_weights{1.0, 1.0, 1.0};  // data, boundary, residual
  bool resample_each_iteration = false;
  bool initial_slice_only = false;          // drop the boundary term entirely
  int threads = 0;                          // 0 = hardware concurrency
  int scale = 1;                            // desk-scale divisor for eval grids
  bool evaluate_against_oracle = true;
  bool evaluate_against_fd = true;

  void validate() const;
};

struct TrainReport {
  std::vector<long> history_iteration;
  std::vector<double> history_data;
  std::vector<double> history_boundary;
  std::vector<double> history_residual;
  double wall_seconds = 0.0;
  net::ParamVector final_params;
  // keys: "oracle", "fd" (all fields), plus "oracle_f0", "fd_f1", ... per field
  std::map<std::string, double> rmse;
  bool diverged = false;
  long diverged_iteration = -1;
  bool optimizer_stalled = false;
  double max_step_first_100 = 0.0;
  double initial_data_term = 0.0;
  double final_data_term = 0.0;

  // flat "key = value" text file
  void save(const std::filesystem::path& path) const;
  void save_history_csv(const std::filesystem::path& path) const;
};

// Composite loss recorded on one tape: weighted MSE over initial targets,
// boundary targets, and interior residuals (per-field residuals summed).
// Pairwise summation mirrors the training loop exactly.
ad::Value assemble_loss(ad::Tape& tape, const net::MlpConfig& mlp,
                        const sampling::CollocationSet& colloc,
                        const prob::Problem& problem,
                        std::array<double, 3> weights = {1.0, 1.0, 1.0});

// Loss components and the parameter gradient of their weighted sum; the
// block-parallel fast path used by each training iteration.
struct LossBreakdown {
  double data = 0.0;
  double boundary = 0.0;
  double residual = 0.0;
  double total() const { return data + boundary + residual; }
};
LossBreakdown loss_and_gradient(const net::MlpConfig& mlp,
                                std::span<const double> params,
                                const sampling::CollocationSet& colloc,
                                const prob::Problem& problem,
                                std::array<double, 3> weights,
                                std::span<double> grad_out, int threads);

TrainReport train(const TrainConfig& cfg);

// sqrt of the mean squared difference over all nodes and fields
double rmse(const fdm::FieldGrid& a, const fdm::FieldGrid& b);
double rmse_field(const fdm::FieldGrid& a, const fdm::FieldGrid& b, int field);
double rmse_values(std::span<const double> a, std::span<const double> b);

// network forward at every grid node (order-0 jets), same layout as `like`
fdm::FieldGrid evaluate_on_grid(const net::MlpConfig& mlp,
                                std::span<const double> params,
                                const fdm::FieldGrid& like);
fdm::FieldGrid evaluate_on_grid(const net::MlpConfig& mlp,
                                std::span<const double> params,
                                std::vector<fdm::Axis> space,
                                std::vector<double> times);

// finite-difference reference solve on the problem's comparison grid
// (stored time slices thinned by `scale`); empty when none is wired up
std::optional<fdm::FieldGrid> reference_fd(const prob::Problem& p, int scale);

// closed-form values on the given grid layout; requires an oracle
fdm::FieldGrid oracle_on_grid(const prob::Problem& p, const fdm::FieldGrid& like);

// benchmark recipe for a problem: architecture, counts, and iteration budget
TrainConfig preset(std::string_view problem_id);

// deterministic tree reduction, independent of how work was scheduled
double pairwise_sum(std::span<const double> values);

}  // namespace pinn::train
