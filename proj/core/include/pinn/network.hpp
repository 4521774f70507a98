#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pinn/jet.hpp"
#include "pinn/tape.hpp"

namespace pinn::net {

struct MlpConfig {
  int input_dim = 2;
  int hidden_layers = 4;
  int hidden_width = 16;
  int output_dim = 1;
  Act activation = Act::Sigmoid;

  struct Layer {
    std::size_t w_off;
    std::size_t b_off;
    int in;
    int out;
  };

  int layer_count() const { return hidden_layers + 1; }
  Layer layer(int l) const;
  std::size_t param_count() const;
  void validate() const;
};

using ParamVector = std::vector<double>;

// Glorot-uniform weights, zero biases; bitwise reproducible from the seed.
ParamVector init(const MlpConfig& cfg, std::uint64_t seed);

// Records the forward pass on the tape (hidden activations, linear head) and
// returns one handle per output field.  The tape must be bound to a parameter
// vector of exactly cfg.param_count() entries.
std::vector<ad::Value> forward(ad::Tape& tape, const MlpConfig& cfg,
                               std::span<const ad::Jet> inputs);

// Tape-free forward in jet arithmetic; outputs.size() must equal output_dim.
void forward_jets(const MlpConfig& cfg, std::span<const double> params,
                  std::span<const ad::Jet> inputs, std::span<ad::Jet> outputs);

// Plain (order-0) evaluation.
void eval(const MlpConfig& cfg, std::span<const double> params,
          std::span<const double> inputs, std::span<double> outputs);

// Flat little-endian float64 file with a 16-byte header (magic, version,
// length); round-trips every bit.
void save_params(const std::filesystem::path& path, const ParamVector& params);
ParamVector load_params(const std::filesystem::path& path);

}  // namespace pinn::net
