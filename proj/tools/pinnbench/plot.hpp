#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "pinn/fdm.hpp"

namespace plot {

// min-max normalized heatmap of one stored slice, blue-white-red ramp
void heatmap_png(const pinn::fdm::FieldGrid& g, int time_index, int field,
                 const std::filesystem::path& path);

// side-by-side heatmaps (prediction left, reference right) at one slice
void heatmap_pair_png(const pinn::fdm::FieldGrid& pred, const pinn::fdm::FieldGrid& ref,
                      int time_index, int field, const std::filesystem::path& path);

// prediction (colored) against reference (grey) curves at the given stored
// time slices of a one-space-axis grid
void slices_png(const pinn::fdm::FieldGrid& pred, const pinn::fdm::FieldGrid& ref,
                int field, std::span<const int> time_indices,
                const std::filesystem::path& path);

}  // namespace plot
