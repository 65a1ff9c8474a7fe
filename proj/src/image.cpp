// Copyright (c) 2026 the blindspot authors
// SPDX-License-Identifier: Apache-2.0

#include "blindspot/image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "blindspot/serial.hpp"

namespace blindspot {

namespace {

void validate_shape(const ImageArray& img) {
  if (img.height < 1 || img.width < 1)
    throw std::invalid_argument("image must be at least 1x1");
  if (img.pixels.size() != static_cast<size_t>(img.height) * img.width)
    throw std::invalid_argument("pixel buffer does not match image shape");
}

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

struct PngReadCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngReadCloser() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

struct PngWriteCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngWriteCloser() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

}  // namespace

ImageArray load_raw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (!in || magic != "RAWIMG")
    throw std::runtime_error("not a raw-array container: " + path.string());
  if (version != 1)
    throw std::runtime_error("unsupported raw-array version " +
                             std::to_string(version) + ": " + path.string());

  long long h = 0, w = 0;
  in >> h >> w;
  if (!in || h < 1 || w < 1)
    throw std::runtime_error("invalid raw-array header: " + path.string());
  in.ignore(1);  // newline before payload

  ImageArray img(static_cast<int>(h), static_cast<int>(w));
  for (float& v : img.pixels) {
    if (!read_f32le(in, v))
      throw std::runtime_error("truncated raw-array payload: " + path.string());
  }
  if (in.peek() != EOF)
    throw std::runtime_error("trailing bytes after payload: " + path.string());
  return img;
}

void save_raw(const ImageArray& img, const std::filesystem::path& path) {
  validate_shape(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "RAWIMG 1\n" << img.height << " " << img.width << "\n";
  write_f32le_array(out, img.pixels);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

ImageArray load_png(const std::filesystem::path& path) {
  PngReadCloser ctx;
  ctx.fp = std::fopen(path.string().c_str(), "rb");
  if (!ctx.fp) throw std::runtime_error("cannot open " + path.string());

  unsigned char sig[8];
  if (std::fread(sig, 1, 8, ctx.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw std::runtime_error("not a PNG file: " + path.string());

  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw std::runtime_error("png_create_read_struct failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw std::runtime_error("png_create_info_struct failed");
  if (setjmp(png_jmpbuf(ctx.png)))
    throw std::runtime_error("PNG decode error: " + path.string());

  png_init_io(ctx.png, ctx.fp);
  png_set_sig_bytes(ctx.png, 8);
  png_read_info(ctx.png, ctx.info);

  const png_uint_32 width = png_get_image_width(ctx.png, ctx.info);
  const png_uint_32 height = png_get_image_height(ctx.png, ctx.info);
  const int color_type = png_get_color_type(ctx.png, ctx.info);
  const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);

  if (color_type != PNG_COLOR_TYPE_GRAY)
    throw std::runtime_error("single-channel only: " + path.string() +
                             " is not grayscale");
  if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(ctx.png);
  if (bit_depth == 16) png_set_swap(ctx.png);  // file is big-endian
  png_read_update_info(ctx.png, ctx.info);

  const size_t row_bytes = png_get_rowbytes(ctx.png, ctx.info);
  std::vector<unsigned char> row(row_bytes);
  ImageArray img(static_cast<int>(height), static_cast<int>(width));

  for (png_uint_32 y = 0; y < height; ++y) {
    png_read_row(ctx.png, row.data(), nullptr);
    if (bit_depth == 16) {
      const uint16_t* p = reinterpret_cast<const uint16_t*>(row.data());
      for (png_uint_32 x = 0; x < width; ++x)
        img.at(static_cast<int>(y), static_cast<int>(x)) = static_cast<float>(p[x]);
    } else {
      for (png_uint_32 x = 0; x < width; ++x)
        img.at(static_cast<int>(y), static_cast<int>(x)) = static_cast<float>(row[x]);
    }
  }
  png_read_end(ctx.png, nullptr);
  return img;
}

size_t save_png16(const ImageArray& img, const std::filesystem::path& path) {
  validate_shape(img);
  PngWriteCloser ctx;
  ctx.fp = std::fopen(path.string().c_str(), "wb");
  if (!ctx.fp) throw std::runtime_error("cannot write " + path.string());

  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw std::runtime_error("png_create_write_struct failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw std::runtime_error("png_create_info_struct failed");
  if (setjmp(png_jmpbuf(ctx.png)))
    throw std::runtime_error("PNG encode error: " + path.string());

  png_init_io(ctx.png, ctx.fp);
  png_set_IHDR(ctx.png, ctx.info, img.width, img.height, 16,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  png_set_swap(ctx.png);

  size_t clipped = 0;
  std::vector<uint16_t> row(img.width);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double v = std::llround(static_cast<double>(img.at(y, x)));
      if (v < 0.0 || v > 65535.0) ++clipped;
      row[x] = static_cast<uint16_t>(std::clamp(v, 0.0, 65535.0));
    }
    png_write_row(ctx.png, reinterpret_cast<png_bytep>(row.data()));
  }
  png_write_end(ctx.png, nullptr);
  return clipped;
}

ImageArray load_image(const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".raw") return load_raw(path);
  if (ext == ".png") return load_png(path);
  throw std::invalid_argument("unsupported format: " + path.string() +
                              " (expected .raw or .png)");
}

size_t save_image(const ImageArray& img, const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".raw") {
    save_raw(img, path);
    return 0;
  }
  if (ext == ".png") return save_png16(img, path);
  throw std::invalid_argument("unsupported format: " + path.string() +
                              " (expected .raw or .png)");
}

std::vector<std::pair<std::string, ImageArray>> load_image_dir(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw std::invalid_argument("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower_ext(entry.path());
    if (ext == ".raw" || ext == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, ImageArray>> out;
  out.reserve(files.size());
  for (const auto& f : files) out.emplace_back(f.filename().string(), load_image(f));
  return out;
}

}  // namespace blindspot
