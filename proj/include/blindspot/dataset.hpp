// Copyright (c) 2026 the blindspot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blindspot/image.hpp"
#include "blindspot/rng.hpp"

namespace blindspot {

// Standardization bridge between raw intensities and network space.
struct NormStats {
  double mean = 0.0;
  double std = 1.0;

  float standardize(float v) const {
    return static_cast<float>((static_cast<double>(v) - mean) / std);
  }
  float destandardize(float v) const {
    return static_cast<float>(static_cast<double>(v) * std + mean);
  }
  double destandardize(double v) const { return v * std + mean; }
};

// Population mean/std over all pixels of all images. A std below 1e-12 is
// replaced by 1 so standardization stays well defined on constant data.
NormStats compute_stats(const std::vector<ImageArray>& images);

ImageArray standardize_image(const ImageArray& img, const NormStats& stats);
ImageArray destandardize_image(const ImageArray& img, const NormStats& stats);

// One of the eight axis-aligned flips/rotations; id 0 is the identity.
ImageArray dihedral_transform(const ImageArray& img, int id);

// Uniformly random axis-aligned crops (image picked uniformly per draw).
// Deterministic given the seed; `augment` applies a random dihedral
// transform to each patch.
std::vector<ImageArray> extract_patches(const std::vector<ImageArray>& images,
                                        int patch_size, int count,
                                        uint64_t seed, bool augment = false);

// A blind-spot target: position, the pre-replacement value in network
// space, and its raw-domain equivalent.
struct MaskedPixel {
  int row = 0;
  int col = 0;
  float std_value = 0.0f;
  double raw_value = 0.0;
};

// A training patch with blind spots replaced. Non-masked pixels are
// bit-identical to the original.
struct MaskedPatch {
  ImageArray input;
  std::vector<MaskedPixel> targets;
};

// Picks ~n_masked blind spots on a stratified grid with per-cell jitter and
// replaces each with a value drawn uniformly from its window x window
// neighborhood (center excluded, clipped at borders, donors read from the
// original patch). `patch` is in network space; `stats` supplies the
// raw-domain equivalents stored with the targets.
MaskedPatch mask_patch(const ImageArray& patch, int n_masked, int window,
                       Rng& rng, const NormStats& stats);

// Synthetic calibration/benchmark data.
struct SynthSpec {
  enum class Kind { gaussian, poisson_gaussian };
  Kind kind = Kind::gaussian;
  std::string pattern = "sinusoid";  // sinusoid | disks | wedges
  int size = 128;
  int n_images = 1;
  double sigma = 0.0;  // Gaussian std
  double gain = 1.0;   // photons-per-unit scaling (poisson_gaussian)
  double lo = 0.0;     // clean intensity range
  double hi = 255.0;
  uint64_t seed = 0;
};

struct SynthResult {
  std::vector<ImageArray> clean;
  std::vector<ImageArray> noisy;
};

// Renders the clean pattern and corrupts it pixel-wise:
//   gaussian          x = s + N(0, sigma^2)
//   poisson_gaussian  x = gain * Poisson(s / gain) + N(0, sigma^2)
// Deterministic given the seed; each image uses its own stream, so image i
// does not depend on n_images.
SynthResult synth_dataset(const SynthSpec& spec);

}  // namespace blindspot
