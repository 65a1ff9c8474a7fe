// Copyright (c) 2026 the blindspot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "blindspot/image.hpp"

namespace blindspot {

// Histogram-based observation likelihood p(x | s): a 2D density over
// (signal row, observation column), row-normalized so that each signal
// level carries a probability density over observations. Queries are
// piecewise linear in s (interpolated between row centers) and therefore
// differentiable, which the training loss requires.
//
// Immutable after construction; concurrent reads are safe.
struct NoiseModel {
  static constexpr int kFormatVersion = 1;
  // Lower bound on any stored density, per unit raw intensity. Keeps
  // -log(likelihood) finite for (s, x) pairs never seen in calibration.
  static constexpr double kDensityFloor = 1e-10;

  int bins_s = 256;
  int bins_x = 256;
  double range_min = 0.0;
  double range_max = 0.0;
  std::vector<double> density;  // bins_s x bins_x, row-major

  double bin_width_x() const { return (range_max - range_min) / bins_x; }
  double row_spacing() const { return (range_max - range_min) / bins_s; }
  double row_center(int r) const { return range_min + (r + 0.5) * row_spacing(); }
  double col_center(int c) const { return range_min + (c + 0.5) * bin_width_x(); }

  // Observation bin for x; out-of-range values clamp to the boundary bins.
  int col_of(double x) const;

  double at(int r, int c) const { return density[static_cast<size_t>(r) * bins_x + c]; }
  double& at(int r, int c) { return density[static_cast<size_t>(r) * bins_x + c]; }

  // Density of observing x given signal s. Piecewise linear and continuous
  // in s; constant beyond the outermost row centers. Never below the floor.
  double likelihood(double x, double s) const;

  // Exact derivative of likelihood with respect to s. Zero beyond the
  // outermost row centers; at an interpolation knot the right-hand
  // derivative is returned.
  double likelihood_grad_s(double x, double s) const;
};

// Accumulates a 2D histogram from clean/noisy image pairs (clean selects
// the signal row, noisy the observation column; values clamp to the range)
// and converts every row into a probability density. Empty rows are filled
// from the nearest non-empty row; the density floor is applied and rows
// renormalized so both invariants hold exactly.
//
// If no range is given it spans the union of all pixel values with a 0.1%
// symmetric margin.
NoiseModel build_histogram(const std::vector<ImageArray>& clean,
                           const std::vector<ImageArray>& noisy,
                           int bins_s = 256, int bins_x = 256,
                           std::optional<std::pair<double, double>> range = std::nullopt);

// Applies the density floor to every row and rescales the remaining cells
// so each row still integrates to one. Exposed for synthetic models built
// directly from analytic densities.
void floor_and_renormalize(NoiseModel& model);

// Checks shape, range and row normalization; throws naming the first bad row.
void validate_noise_model(const NoiseModel& model);

// Self-describing container: textual header + row-major float64 LE payload.
// load(save(m)) reproduces the density matrix bit-exactly.
void save_noise_model(const NoiseModel& model, const std::filesystem::path& path);
NoiseModel load_noise_model(const std::filesystem::path& path);

}  // namespace blindspot
