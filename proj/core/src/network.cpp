#include "pinn/network.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "pinn/errors.hpp"
#include "pinn/rng.hpp"

static_assert(std::endian::native == std::endian::little,
              "parameter files are little-endian");

namespace pinn::net {

MlpConfig::Layer MlpConfig::layer(int l) const {
  Layer out{};
  std::size_t off = 0;
  for (int i = 0; i <= l; ++i) {
    const int fan_in = (i == 0) ? input_dim : hidden_width;
    const int fan_out = (i == hidden_layers) ? output_dim : hidden_width;
    out = {off, off + static_cast<std::size_t>(fan_in) * fan_out, fan_in, fan_out};
    off = out.b_off + static_cast<std::size_t>(fan_out);
  }
  return out;
}

std::size_t MlpConfig::param_count() const {
  const Layer last = layer(hidden_layers);
  return last.b_off + static_cast<std::size_t>(last.out);
}

void MlpConfig::validate() const {
  if (input_dim < 1 || input_dim > 3) throw ConfigError("input_dim must be 1..3");
  if (output_dim < 1 || output_dim > 2) throw ConfigError("output_dim must be 1 or 2");
  if (hidden_layers < 1) throw ConfigError("hidden_layers must be >= 1");
  if (hidden_width < 1) throw ConfigError("hidden_width must be >= 1");
}

ParamVector init(const MlpConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ParamVector p(cfg.param_count(), 0.0);
  UniformRng rng(seed);
  for (int l = 0; l < cfg.layer_count(); ++l) {
    const auto lay = cfg.layer(l);
    const double bound = std::sqrt(6.0 / (lay.in + lay.out));
    for (int o = 0; o < lay.out; ++o) {
      for (int i = 0; i < lay.in; ++i) {
        p[lay.w_off + static_cast<std::size_t>(o) * lay.in + i] =
            rng.uniform(-bound, bound);
      }
    }
    // biases stay zero
  }
  return p;
}

std::vector<ad::Value> forward(ad::Tape& tape, const MlpConfig& cfg,
                               std::span<const ad::Jet> inputs) {
  cfg.validate();
  if (static_cast<int>(inputs.size()) != cfg.input_dim) {
    throw ShapeError("forward: input count does not match input_dim");
  }
  ad::VecValue h = tape.vec_input(inputs);
  for (int l = 0; l < cfg.layer_count(); ++l) {
    const auto lay = cfg.layer(l);
    h = tape.affine(h, lay.w_off, lay.b_off, lay.in, lay.out);
    if (l < cfg.hidden_layers) h = tape.activation(h, cfg.activation);
  }
  std::vector<ad::Value> out;
  out.reserve(static_cast<std::size_t>(cfg.output_dim));
  for (int u = 0; u < cfg.output_dim; ++u) out.push_back(tape.pick(h, u));
  return out;
}

void forward_jets(const MlpConfig& cfg, std::span<const double> params,
                  std::span<const ad::Jet> inputs, std::span<ad::Jet> outputs) {
  cfg.validate();
  if (params.size() != cfg.param_count()) throw ShapeError("forward_jets: param length mismatch");
  if (static_cast<int>(inputs.size()) != cfg.input_dim) {
    throw ShapeError("forward_jets: input count mismatch");
  }
  if (static_cast<int>(outputs.size()) != cfg.output_dim) {
    throw ShapeError("forward_jets: output count mismatch");
  }
  std::vector<ad::Jet> cur(inputs.begin(), inputs.end());
  std::vector<ad::Jet> nxt;
  const int order = inputs.empty() ? 0 : inputs[0].order;
  for (int l = 0; l < cfg.layer_count(); ++l) {
    const auto lay = cfg.layer(l);
    nxt.assign(static_cast<std::size_t>(lay.out), ad::Jet(0.0, order));
    for (int o = 0; o < lay.out; ++o) {
      ad::Jet acc(params[lay.b_off + static_cast<std::size_t>(o)], order);
      for (int i = 0; i < lay.in; ++i) {
        acc = acc + cur[static_cast<std::size_t>(i)] *
                        params[lay.w_off + static_cast<std::size_t>(o) * lay.in + i];
      }
      if (l < cfg.hidden_layers) {
        switch (cfg.activation) {
          case Act::Sigmoid: acc = ad::sigmoid(acc); break;
          case Act::Tanh: acc = ad::tanh(acc); break;
          case Act::Relu: acc = ad::relu(acc); break;
        }
      }
      nxt[static_cast<std::size_t>(o)] = acc;
    }
    cur.swap(nxt);
  }
  for (int u = 0; u < cfg.output_dim; ++u) outputs[static_cast<std::size_t>(u)] = cur[static_cast<std::size_t>(u)];
}

void eval(const MlpConfig& cfg, std::span<const double> params,
          std::span<const double> inputs, std::span<double> outputs) {
  std::vector<ad::Jet> in(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) in[i] = ad::Jet(inputs[i], 0);
  std::vector<ad::Jet> out(outputs.size());
  forward_jets(cfg, params, in, out);
  for (std::size_t i = 0; i < outputs.size(); ++i) outputs[i] = out[i].value();
}

namespace {
constexpr char kMagic[8] = {'P', 'I', 'N', 'N', 'P', 'V', '0', '1'};
}

void save_params(const std::filesystem::path& path, const ParamVector& params) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("save_params: cannot open " + path.string());
  f.write(kMagic, 8);
  const std::uint32_t version = 1;
  const std::uint32_t count = static_cast<std::uint32_t>(params.size());
  f.write(reinterpret_cast<const char*>(&version), 4);
  f.write(reinterpret_cast<const char*>(&count), 4);
  f.write(reinterpret_cast<const char*>(params.data()),
          static_cast<std::streamsize>(params.size() * sizeof(double)));
  if (!f) throw Error("save_params: write failed for " + path.string());
}

ParamVector load_params(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("load_params: cannot open " + path.string());
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, kMagic, 8) != 0) {
    throw Error("load_params: bad magic in " + path.string());
  }
  std::uint32_t version = 0, count = 0;
  f.read(reinterpret_cast<char*>(&version), 4);
  f.read(reinterpret_cast<char*>(&count), 4);
  if (!f || version != 1) throw Error("load_params: unsupported version");
  ParamVector params(count);
  f.read(reinterpret_cast<char*>(params.data()),
         static_cast<std::streamsize>(count * sizeof(double)));
  if (!f) throw Error("load_params: truncated file " + path.string());
  return params;
}

}  // namespace pinn::net
