// Copyright (c) 2026 the blindspot authors
// SPDX-License-Identifier: Apache-2.0

#include "blindspot/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "blindspot/serial.hpp"

namespace blindspot {

namespace {

int clamp_bin(double v, double lo, double width, int bins) {
  int idx = static_cast<int>(std::floor((v - lo) / width));
  return std::clamp(idx, 0, bins - 1);
}

double row_sum_mass(const NoiseModel& m, int r) {
  double sum = 0.0;
  for (int c = 0; c < m.bins_x; ++c) sum += m.at(r, c);
  return sum * m.bin_width_x();
}

}  // namespace

int NoiseModel::col_of(double x) const {
  return clamp_bin(x, range_min, bin_width_x(), bins_x);
}

double NoiseModel::likelihood(double x, double s) const {
  const int col = col_of(x);
  const double spacing = row_spacing();
  const double t = (s - row_center(0)) / spacing;
  if (t <= 0.0) return at(0, col);
  if (t >= bins_s - 1) return at(bins_s - 1, col);
  const int r = static_cast<int>(std::floor(t));
  const double frac = t - r;
  return at(r, col) + frac * (at(r + 1, col) - at(r, col));
}

double NoiseModel::likelihood_grad_s(double x, double s) const {
  const int col = col_of(x);
  const double spacing = row_spacing();
  const double t = (s - row_center(0)) / spacing;
  if (t < 0.0 || t >= bins_s - 1) return 0.0;
  const int r = static_cast<int>(std::floor(t));
  return (at(r + 1, col) - at(r, col)) / spacing;
}

void floor_and_renormalize(NoiseModel& model) {
  const double w = model.bin_width_x();
  for (int r = 0; r < model.bins_s; ++r) {
    double* row = &model.at(r, 0);
    // Scale the above-floor cells so the row integrates to one with the
    // floored cells held fixed. A rescale can push a cell under the floor,
    // so iterate; the floored set only grows and the loop is tiny.
    std::vector<bool> floored(model.bins_x, false);
    for (int iter = 0; iter < model.bins_x + 1; ++iter) {
      int n_floored = 0;
      double free_mass = 0.0;
      for (int c = 0; c < model.bins_x; ++c) {
        if (row[c] <= NoiseModel::kDensityFloor) {
          row[c] = NoiseModel::kDensityFloor;
          floored[c] = true;
        }
        if (floored[c])
          ++n_floored;
        else
          free_mass += row[c] * w;
      }
      if (n_floored == model.bins_x) {
        // Degenerate row; fall back to uniform.
        const double u = 1.0 / (model.range_max - model.range_min);
        for (int c = 0; c < model.bins_x; ++c) row[c] = u;
        break;
      }
      const double target = 1.0 - n_floored * NoiseModel::kDensityFloor * w;
      const double scale = target / free_mass;
      bool rescaled_under_floor = false;
      for (int c = 0; c < model.bins_x; ++c) {
        if (floored[c]) continue;
        row[c] *= scale;
        if (row[c] < NoiseModel::kDensityFloor) rescaled_under_floor = true;
      }
      if (!rescaled_under_floor) break;
    }
  }
}

void validate_noise_model(const NoiseModel& model) {
  if (model.bins_s < 1 || model.bins_x < 1)
    throw std::invalid_argument("noise model needs at least one bin per axis");
  if (!(model.range_max > model.range_min))
    throw std::invalid_argument("noise model range is degenerate");
  if (model.density.size() != static_cast<size_t>(model.bins_s) * model.bins_x)
    throw std::invalid_argument("noise model density has wrong size");
  for (int r = 0; r < model.bins_s; ++r) {
    const double mass = row_sum_mass(model, r);
    if (std::abs(mass - 1.0) > 1e-6)
      throw std::invalid_argument("noise model row " + std::to_string(r) +
                                  " integrates to " + format_double(mass) +
                                  ", expected 1");
    for (int c = 0; c < model.bins_x; ++c) {
      if (!std::isfinite(model.at(r, c)) || model.at(r, c) < NoiseModel::kDensityFloor)
        throw std::invalid_argument("noise model row " + std::to_string(r) +
                                    " has density below floor");
    }
  }
}

NoiseModel build_histogram(const std::vector<ImageArray>& clean,
                           const std::vector<ImageArray>& noisy,
                           int bins_s, int bins_x,
                           std::optional<std::pair<double, double>> range) {
  if (clean.empty() || clean.size() != noisy.size())
    throw std::invalid_argument("need at least one clean/noisy image pair");
  if (bins_s < 1 || bins_x < 1)
    throw std::invalid_argument("bin counts must be positive");
  for (size_t i = 0; i < clean.size(); ++i) {
    if (!clean[i].same_shape(noisy[i]))
      throw std::invalid_argument("pair " + std::to_string(i) +
                                  ": clean and noisy shapes differ");
  }

  double lo, hi;
  if (range) {
    lo = range->first;
    hi = range->second;
  } else {
    lo = std::numeric_limits<double>::infinity();
    hi = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < clean.size(); ++i) {
      for (float v : clean[i].pixels) {
        lo = std::min(lo, static_cast<double>(v));
        hi = std::max(hi, static_cast<double>(v));
      }
      for (float v : noisy[i].pixels) {
        lo = std::min(lo, static_cast<double>(v));
        hi = std::max(hi, static_cast<double>(v));
      }
    }
    const double margin = 0.001 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
  if (!(hi > lo)) throw std::invalid_argument("histogram range is degenerate");

  NoiseModel model;
  model.bins_s = bins_s;
  model.bins_x = bins_x;
  model.range_min = lo;
  model.range_max = hi;
  model.density.assign(static_cast<size_t>(bins_s) * bins_x, 0.0);

  const double ws = model.row_spacing();
  const double wx = model.bin_width_x();
  uint64_t total = 0;
  for (size_t i = 0; i < clean.size(); ++i) {
    const ImageArray& s_img = clean[i];
    const ImageArray& x_img = noisy[i];
    for (size_t p = 0; p < s_img.size(); ++p) {
      const int r = clamp_bin(s_img.pixels[p], lo, ws, bins_s);
      const int c = clamp_bin(x_img.pixels[p], lo, wx, bins_x);
      model.at(r, c) += 1.0;
      ++total;
    }
  }
  if (total == 0) throw std::invalid_argument("histogram received zero samples");

  // Counts -> densities, tracking which rows saw data.
  std::vector<bool> nonempty(bins_s, false);
  for (int r = 0; r < bins_s; ++r) {
    double count = 0.0;
    for (int c = 0; c < bins_x; ++c) count += model.at(r, c);
    if (count > 0.0) {
      nonempty[r] = true;
      for (int c = 0; c < bins_x; ++c) model.at(r, c) /= count * wx;
    }
  }

  // Calibration data rarely covers every signal level; copy the nearest
  // populated row into the gaps (ties resolved toward the lower row).
  std::vector<int> src(bins_s, -1);
  for (int r = 0; r < bins_s; ++r) {
    if (nonempty[r]) {
      src[r] = r;
      continue;
    }
    for (int d = 1; d < bins_s; ++d) {
      if (r - d >= 0 && nonempty[r - d]) {
        src[r] = r - d;
        break;
      }
      if (r + d < bins_s && nonempty[r + d]) {
        src[r] = r + d;
        break;
      }
    }
  }
  for (int r = 0; r < bins_s; ++r) {
    if (src[r] != r)
      for (int c = 0; c < bins_x; ++c) model.at(r, c) = model.at(src[r], c);
  }

  floor_and_renormalize(model);
  validate_noise_model(model);
  return model;
}

void save_noise_model(const NoiseModel& model, const std::filesystem::path& path) {
  validate_noise_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "NOISEHIST " << NoiseModel::kFormatVersion << "\n";
  out << "bins_s " << model.bins_s << "\n";
  out << "bins_x " << model.bins_x << "\n";
  out << "range_min " << format_double(model.range_min) << "\n";
  out << "range_max " << format_double(model.range_max) << "\n";
  out << "payload\n";
  write_f64le_array(out, model.density);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

NoiseModel load_noise_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::string magic, key;
  int version = 0;
  in >> magic >> version;
  if (!in || magic != "NOISEHIST")
    throw std::runtime_error("not a noise-model file: " + path.string());
  if (version != NoiseModel::kFormatVersion)
    throw std::runtime_error("noise-model version mismatch (got " +
                             std::to_string(version) + ", expected " +
                             std::to_string(NoiseModel::kFormatVersion) + ")");

  NoiseModel model;
  auto expect = [&](const char* name) {
    in >> key;
    if (!in || key != name)
      throw std::runtime_error("malformed noise-model header near '" + key +
                               "': " + path.string());
  };
  expect("bins_s");
  in >> model.bins_s;
  expect("bins_x");
  in >> model.bins_x;
  expect("range_min");
  in >> model.range_min;
  expect("range_max");
  in >> model.range_max;
  expect("payload");
  if (!in) throw std::runtime_error("malformed noise-model header: " + path.string());
  in.ignore(1);

  if (model.bins_s < 1 || model.bins_x < 1)
    throw std::runtime_error("invalid bin counts in " + path.string());
  model.density.resize(static_cast<size_t>(model.bins_s) * model.bins_x);
  for (double& v : model.density) {
    if (!read_f64le(in, v))
      throw std::runtime_error("truncated noise-model payload: " + path.string());
  }
  if (in.peek() != EOF)
    throw std::runtime_error("trailing bytes after payload: " + path.string());
  validate_noise_model(model);
  return model;
}

}  // namespace blindspot
