// Copyright (c) 2026 the blindspot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace blindspot {

// Single-channel image with raw-domain float32 intensities, row-major.
struct ImageArray {
  int height = 0;
  int width = 0;
  std::vector<float> pixels;

  ImageArray() = default;
  ImageArray(int h, int w, float fill = 0.0f)
      : height(h), width(w), pixels(static_cast<size_t>(h) * w, fill) {}

  float& at(int r, int c) { return pixels[static_cast<size_t>(r) * width + c]; }
  float at(int r, int c) const { return pixels[static_cast<size_t>(r) * width + c]; }
  size_t size() const { return pixels.size(); }
  bool same_shape(const ImageArray& other) const {
    return height == other.height && width == other.width;
  }
};

// Reads an 8/16-bit grayscale PNG or the toolkit's raw-array container,
// dispatching on extension (.png / .raw). Multi-channel input is rejected.
ImageArray load_image(const std::filesystem::path& path);

// Writes an image, dispatching on extension. The raw container round-trips
// bit-exactly; PNG output is 16-bit with rounding and clamping.
// Returns the number of pixels that had to be clipped (always 0 for .raw).
size_t save_image(const ImageArray& img, const std::filesystem::path& path);

// Raw-array container: "RAWIMG 1\n<height> <width>\n" + float32 LE payload.
ImageArray load_raw(const std::filesystem::path& path);
void save_raw(const ImageArray& img, const std::filesystem::path& path);

ImageArray load_png(const std::filesystem::path& path);
size_t save_png16(const ImageArray& img, const std::filesystem::path& path);

// Loads every .raw/.png image in a directory, sorted by filename.
// Returns the images together with their filename stems.
std::vector<std::pair<std::string, ImageArray>> load_image_dir(
    const std::filesystem::path& dir);

}  // namespace blindspot
