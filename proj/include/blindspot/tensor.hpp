// Copyright (c) 2026 the blindspot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace blindspot {

// Dense NCHW tensor.
template <typename T>
struct TensorT {
  int n = 0, c = 0, h = 0, w = 0;
  std::vector<T> data;

  TensorT() = default;
  TensorT(int n_, int c_, int h_, int w_, T fill = T(0))
      : n(n_), c(c_), h(h_), w(w_),
        data(static_cast<size_t>(n_) * c_ * h_ * w_, fill) {}

  size_t size() const { return data.size(); }
  size_t item_size() const { return static_cast<size_t>(c) * h * w; }

  T& at(int ni, int ci, int y, int x) {
    return data[((static_cast<size_t>(ni) * c + ci) * h + y) * w + x];
  }
  T at(int ni, int ci, int y, int x) const {
    return data[((static_cast<size_t>(ni) * c + ci) * h + y) * w + x];
  }

  T* item(int ni) { return data.data() + static_cast<size_t>(ni) * item_size(); }
  const T* item(int ni) const { return data.data() + static_cast<size_t>(ni) * item_size(); }

  bool same_shape(const TensorT& o) const {
    return n == o.n && c == o.c && h == o.h && w == o.w;
  }
};

using Tensor = TensorT<float>;

}  // namespace blindspot
