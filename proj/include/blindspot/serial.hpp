// Copyright (c) 2026 the blindspot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blindspot {

// All binary payloads are little-endian regardless of host order.

inline void write_u64le(std::ostream& out, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

inline bool read_u64le(std::istream& in, uint64_t& v) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return true;
}

inline void write_u32le(std::ostream& out, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

inline bool read_u32le(std::istream& in, uint32_t& v) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
  v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return true;
}

inline void write_f64le(std::ostream& out, double v) {
  write_u64le(out, std::bit_cast<uint64_t>(v));
}

inline bool read_f64le(std::istream& in, double& v) {
  uint64_t bits;
  if (!read_u64le(in, bits)) return false;
  v = std::bit_cast<double>(bits);
  return true;
}

inline void write_f32le(std::ostream& out, float v) {
  write_u32le(out, std::bit_cast<uint32_t>(v));
}

inline bool read_f32le(std::istream& in, float& v) {
  uint32_t bits;
  if (!read_u32le(in, bits)) return false;
  v = std::bit_cast<float>(bits);
  return true;
}

inline void write_f64le_array(std::ostream& out, std::span<const double> vs) {
  for (double v : vs) write_f64le(out, v);
}

inline void write_f32le_array(std::ostream& out, std::span<const float> vs) {
  for (float v : vs) write_f32le(out, v);
}

// FNV-1a 64-bit, used for noise-model file digests in checkpoints.
inline uint64_t fnv1a64(std::span<const unsigned char> bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string file_digest_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file for digest: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return std::string(buf);
}

// Decimal form that round-trips an IEEE double exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace blindspot
