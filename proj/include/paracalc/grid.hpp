#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "paracalc/error.hpp"

namespace paracalc {

/// Uniform discretization of the flat d-torus [0,2pi)^d, d in {1,2},
/// with n = 2^m points per axis. Wavenumbers per axis are the integers
/// in [-n/2, n/2), stored in the usual FFT layout.
struct TorusGrid {
  int dim = 1;
  int n = 16;

  TorusGrid() = default;
  TorusGrid(int dim_, int n_) : dim(dim_), n(n_) {
    if (dim != 1 && dim != 2)
      throw unsupported_dimension("TorusGrid: dim must be 1 or 2");
    if (n < 16 || (n & (n - 1)) != 0)
      throw invalid_input("TorusGrid: n must be a power of two, n >= 16");
  }

  bool operator==(const TorusGrid&) const = default;

  std::int64_t size() const {
    std::int64_t s = n;
    for (int d = 1; d < dim; ++d) s *= n;
    return s;
  }

  // n = 2^m
  int log2n() const {
    int m = 0, v = n;
    while (v > 1) { v >>= 1; ++m; }
    return m;
  }

  /// Top Littlewood-Paley block index J = m - 1.
  int top_block() const { return log2n() - 1; }

  /// Integer wavenumber along one axis for FFT index i in [0, n).
  int axis_wavenumber(int i) const { return i < n / 2 ? i : i - n; }

  /// Wavenumber vector of a linear (row-major) spectral index.
  std::array<int, 2> wavevector(std::int64_t idx) const {
    if (dim == 1) return {axis_wavenumber(static_cast<int>(idx)), 0};
    const int i1 = static_cast<int>(idx / n), i2 = static_cast<int>(idx % n);
    return {axis_wavenumber(i1), axis_wavenumber(i2)};
  }

  double k_norm_sq(std::int64_t idx) const {
    auto k = wavevector(idx);
    return double(k[0]) * k[0] + double(k[1]) * k[1];
  }

  /// Linear index of the frequency -k (complex-conjugate partner of k).
  std::int64_t conjugate_index(std::int64_t idx) const {
    auto neg = [this](int i) { return i == 0 ? 0 : n - i; };
    if (dim == 1) return neg(static_cast<int>(idx));
    const int i1 = static_cast<int>(idx / n), i2 = static_cast<int>(idx % n);
    return std::int64_t(neg(i1)) * n + neg(i2);
  }

  /// Spatial coordinate of a linear value index.
  std::array<double, 2> point(std::int64_t idx) const {
    const double h = 2.0 * M_PI / n;
    if (dim == 1) return {h * double(idx), 0.0};
    return {h * double(idx / n), h * double(idx % n)};
  }
};

}  // namespace paracalc
