// Copyright (c) 2026 the blindspot authors
// SPDX-License-Identifier: Apache-2.0

#include "blindspot/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blindspot {

NormStats compute_stats(const std::vector<ImageArray>& images) {
  if (images.empty()) throw std::invalid_argument("compute_stats: no images");
  double sum = 0.0;
  size_t n = 0;
  for (const auto& img : images) {
    for (float v : img.pixels) sum += v;
    n += img.size();
  }
  if (n == 0) throw std::invalid_argument("compute_stats: images are empty");
  const double mean = sum / static_cast<double>(n);
  double var = 0.0;
  for (const auto& img : images)
    for (float v : img.pixels) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  NormStats stats;
  stats.mean = mean;
  stats.std = std::sqrt(var);
  if (stats.std < 1e-12) stats.std = 1.0;
  return stats;
}

ImageArray standardize_image(const ImageArray& img, const NormStats& stats) {
  ImageArray out(img.height, img.width);
  for (size_t i = 0; i < img.size(); ++i) out.pixels[i] = stats.standardize(img.pixels[i]);
  return out;
}

ImageArray destandardize_image(const ImageArray& img, const NormStats& stats) {
  ImageArray out(img.height, img.width);
  for (size_t i = 0; i < img.size(); ++i) out.pixels[i] = stats.destandardize(img.pixels[i]);
  return out;
}

ImageArray dihedral_transform(const ImageArray& img, int id) {
  const int h = img.height, w = img.width;
  const bool transpose = (id & 4) != 0;
  ImageArray out(transpose ? w : h, transpose ? h : w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      int rr = (id & 1) ? h - 1 - r : r;
      int cc = (id & 2) ? w - 1 - c : c;
      if (transpose)
        out.at(cc, rr) = img.at(r, c);
      else
        out.at(rr, cc) = img.at(r, c);
    }
  }
  return out;
}

std::vector<ImageArray> extract_patches(const std::vector<ImageArray>& images,
                                        int patch_size, int count,
                                        uint64_t seed, bool augment) {
  if (images.empty()) throw std::invalid_argument("extract_patches: no images");
  if (patch_size < 1) throw std::invalid_argument("extract_patches: bad patch size");
  for (const auto& img : images) {
    if (patch_size > img.height || patch_size > img.width)
      throw std::invalid_argument("extract_patches: patch larger than image");
  }
  Rng rng(seed);
  std::vector<ImageArray> patches;
  patches.reserve(count);
  for (int i = 0; i < count; ++i) {
    const ImageArray& img = images[rng.uniform_int(0, static_cast<int64_t>(images.size()) - 1)];
    const int r0 = static_cast<int>(rng.uniform_int(0, img.height - patch_size));
    const int c0 = static_cast<int>(rng.uniform_int(0, img.width - patch_size));
    ImageArray patch(patch_size, patch_size);
    for (int r = 0; r < patch_size; ++r)
      for (int c = 0; c < patch_size; ++c) patch.at(r, c) = img.at(r0 + r, c0 + c);
    if (augment) patch = dihedral_transform(patch, static_cast<int>(rng.uniform_int(0, 7)));
    patches.push_back(std::move(patch));
  }
  return patches;
}

MaskedPatch mask_patch(const ImageArray& patch, int n_masked, int window,
                       Rng& rng, const NormStats& stats) {
  const int h = patch.height, w = patch.width;
  if (n_masked < 0 || n_masked > h * w)
    throw std::invalid_argument("mask_patch: n_masked out of range");
  if (window < 3 || window % 2 == 0)
    throw std::invalid_argument("mask_patch: window must be odd and >= 3");

  MaskedPatch out;
  out.input = patch;
  if (n_masked == 0) return out;

  // Stratified grid: one jittered blind spot per cell, cell size chosen so
  // the expected count is ~n_masked.
  const double cell = std::max(1.0, std::sqrt(static_cast<double>(h) * w / n_masked));
  const int cells_y = std::max(1, static_cast<int>(std::ceil(h / cell)));
  const int cells_x = std::max(1, static_cast<int>(std::ceil(w / cell)));
  const int radius = window / 2;

  for (int gy = 0; gy < cells_y; ++gy) {
    for (int gx = 0; gx < cells_x; ++gx) {
      const int y0 = static_cast<int>(gy * cell);
      const int y1 = std::min(h, static_cast<int>((gy + 1) * cell));
      const int x0 = static_cast<int>(gx * cell);
      const int x1 = std::min(w, static_cast<int>((gx + 1) * cell));
      if (y0 >= y1 || x0 >= x1) continue;
      const int r = static_cast<int>(rng.uniform_int(y0, y1 - 1));
      const int c = static_cast<int>(rng.uniform_int(x0, x1 - 1));

      // Donors come from the original patch so replacement provenance is
      // independent of masking order.
      std::vector<std::pair<int, int>> donors;
      donors.reserve(static_cast<size_t>(window) * window - 1);
      for (int dr = -radius; dr <= radius; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int rr = r + dr, cc = c + dc;
          if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
          donors.emplace_back(rr, cc);
        }
      }
      const auto& donor = donors[rng.uniform_int(0, static_cast<int64_t>(donors.size()) - 1)];

      MaskedPixel t;
      t.row = r;
      t.col = c;
      t.std_value = patch.at(r, c);
      t.raw_value = stats.destandardize(static_cast<double>(patch.at(r, c)));
      out.targets.push_back(t);
      out.input.at(r, c) = patch.at(donor.first, donor.second);
    }
  }
  return out;
}

namespace {

ImageArray render_sinusoid(int size, double lo, double hi, Rng& rng) {
  struct Wave {
    double fx, fy, phase, amp;
  };
  std::vector<Wave> waves(4);
  for (auto& wv : waves) {
    wv.fx = rng.uniform(-3.0, 3.0);
    wv.fy = rng.uniform(-3.0, 3.0);
    wv.phase = rng.uniform(0.0, 6.283185307179586);
    wv.amp = rng.uniform(0.5, 1.0);
  }
  ImageArray img(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      double v = 0.0;
      for (const auto& wv : waves)
        v += wv.amp * std::sin(6.283185307179586 * (wv.fx * c + wv.fy * r) / size + wv.phase);
      img.at(r, c) = static_cast<float>(v);
    }
  }
  // Map to [lo, hi] so every signal level is exercised.
  float vmin = img.pixels[0], vmax = img.pixels[0];
  for (float v : img.pixels) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  const double span = (vmax > vmin) ? (hi - lo) / (vmax - vmin) : 0.0;
  for (float& v : img.pixels) v = static_cast<float>(lo + (v - vmin) * span);
  return img;
}

ImageArray render_disks(int size, double lo, double hi, Rng& rng) {
  ImageArray img(size, size, static_cast<float>(lo));
  const int n_disks = static_cast<int>(rng.uniform_int(20, 60));
  for (int i = 0; i < n_disks; ++i) {
    const double cy = rng.uniform(0.0, size);
    const double cx = rng.uniform(0.0, size);
    const double rad = rng.uniform(size / 32.0, size / 8.0);
    const double level = lo + rng.uniform(0.3, 1.0) * (hi - lo);
    const int r0 = std::max(0, static_cast<int>(cy - rad - 1));
    const int r1 = std::min(size - 1, static_cast<int>(cy + rad + 1));
    const int c0 = std::max(0, static_cast<int>(cx - rad - 1));
    const int c1 = std::min(size - 1, static_cast<int>(cx + rad + 1));
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const double d = std::hypot(r + 0.5 - cy, c + 0.5 - cx);
        const double cover = std::clamp(rad - d + 0.5, 0.0, 1.0);  // 1px soft edge
        if (cover > 0.0) {
          const double v = lo + cover * (level - lo);
          img.at(r, c) = std::max(img.at(r, c), static_cast<float>(v));
        }
      }
    }
  }
  return img;
}

ImageArray render_wedges(int size, double lo, double hi, Rng& rng) {
  const int bands = static_cast<int>(rng.uniform_int(8, 32));
  const bool vertical = rng.uniform() < 0.5;
  ImageArray img(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const int pos = vertical ? c : r;
      const int band = std::min(bands - 1, pos * bands / size);
      img.at(r, c) = static_cast<float>(lo + (hi - lo) * band / (bands - 1));
    }
  }
  return img;
}

}  // namespace

SynthResult synth_dataset(const SynthSpec& spec) {
  if (spec.size < 1 || spec.n_images < 1)
    throw std::invalid_argument("synth_dataset: size and n_images must be positive");
  if (spec.sigma < 0.0) throw std::invalid_argument("synth_dataset: sigma must be >= 0");
  if (spec.kind == SynthSpec::Kind::poisson_gaussian && spec.gain <= 0.0)
    throw std::invalid_argument("synth_dataset: gain must be > 0");
  if (!(spec.hi > spec.lo)) throw std::invalid_argument("synth_dataset: hi must exceed lo");
  if (spec.pattern != "sinusoid" && spec.pattern != "disks" && spec.pattern != "wedges")
    throw std::invalid_argument("synth_dataset: unknown pattern '" + spec.pattern + "'");
  if (spec.kind == SynthSpec::Kind::poisson_gaussian && spec.lo < 0.0)
    throw std::invalid_argument("synth_dataset: poisson_gaussian requires signal >= 0");

  SynthResult out;
  out.clean.reserve(spec.n_images);
  out.noisy.reserve(spec.n_images);
  for (int i = 0; i < spec.n_images; ++i) {
    Rng pattern_rng(spec.seed, static_cast<uint64_t>(i));
    ImageArray clean;
    if (spec.pattern == "sinusoid")
      clean = render_sinusoid(spec.size, spec.lo, spec.hi, pattern_rng);
    else if (spec.pattern == "disks")
      clean = render_disks(spec.size, spec.lo, spec.hi, pattern_rng);
    else
      clean = render_wedges(spec.size, spec.lo, spec.hi, pattern_rng);

    Rng noise_rng(spec.seed, 100000 + static_cast<uint64_t>(i));
    ImageArray noisy(clean.height, clean.width);
    for (size_t p = 0; p < clean.size(); ++p) {
      const double s = clean.pixels[p];
      double x;
      if (spec.kind == SynthSpec::Kind::gaussian) {
        x = s + noise_rng.normal(0.0, spec.sigma);
      } else {
        x = spec.gain * static_cast<double>(noise_rng.poisson(s / spec.gain)) +
            noise_rng.normal(0.0, spec.sigma);
      }
      noisy.pixels[p] = static_cast<float>(x);
    }
    out.clean.push_back(std::move(clean));
    out.noisy.push_back(std::move(noisy));
  }
  return out;
}

}  // namespace blindspot
