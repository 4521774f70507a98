#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "pinn/problems.hpp"

namespace pinn::sampling {

// One conditioned sample: full coordinates (space..., time) and the target
// field values prescribed there.
struct DataPoint {
  std::array<double, 3> pt{0.0, 0.0, 0.0};
  std::array<double, 2> target{0.0, 0.0};
};

struct CollocationSet {
  std::vector<DataPoint> initial;
  std::vector<DataPoint> boundary;
  std::vector<std::array<double, 3>> interior;  // residual points, data stacked in
};

// Face split follows the training listings: one space axis takes a quarter of
// n_data per end and half on the initial slice; two space axes take an eighth
// per edge and half initial; the ODE places everything on the initial point.
// Interior points are uniform over the open box and the data points are
// appended to them.  Fully reproducible from the seed.
CollocationSet sample(const prob::Problem& p, int n_data, int n_interior,
                      std::uint64_t seed);

// columns: role, coords..., targets...
void write_csv(const CollocationSet& set, const prob::Problem& p,
               const std::filesystem::path& path);

}  // namespace pinn::sampling
