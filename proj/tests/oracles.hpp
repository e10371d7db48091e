#pragma once

// Test-only oracles, independent of the library's transform/operator paths.

#include <cmath>
#include <complex>
#include <vector>

#include "paracalc/field.hpp"
#include "paracalc/lp.hpp"
#include "paracalc/noise.hpp"

namespace oracles {

using paracalc::Array;
using paracalc::CArray;
using paracalc::cplx;
using paracalc::Field;
using paracalc::TorusGrid;

/// O(n^2) direct DFT sum, 1-D, same normalization as the library (1/n).
inline CArray direct_dft_1d(const Array& values) {
  const int n = static_cast<int>(values.size());
  CArray out(n);
  for (int k = 0; k < n; ++k) {
    cplx acc(0, 0);
    for (int j = 0; j < n; ++j) {
      const double phase = -2.0 * M_PI * double(k) * double(j) / double(n);
      acc += values[j] * cplx(std::cos(phase), std::sin(phase));
    }
    out[k] = acc / double(n);
  }
  return out;
}

/// W_alpha(x) = sum_{j=1}^{J} 2^{-j alpha} cos(2^j x); block j of the sharp
/// partition holds exactly the 2^j mode.
inline Field weierstrass(const TorusGrid& g, double alpha) {
  Array v = Array::Zero(g.size());
  const int J = g.top_block();
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i)[0];
    for (int j = 1; j <= J; ++j)
      v[i] += std::pow(2.0, -j * alpha) * std::cos(double(1 << j) * x);
  }
  return Field(g, std::move(v));
}

inline Field cosine_mode(const TorusGrid& g, int k, double amplitude = 1.0) {
  Array v(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i)
    v[i] = amplitude * std::cos(double(k) * g.point(i)[0]);
  return Field(g, std::move(v));
}

/// Centered second-order finite difference along axis 0 (1-D grids).
inline Field centered_derivative(const Field& f) {
  const TorusGrid& g = f.grid();
  const int n = g.n;
  const double h = 2.0 * M_PI / n;
  Array out(n);
  for (int i = 0; i < n; ++i)
    out[i] = (f.values()[(i + 1) % n] - f.values()[(i - 1 + n) % n]) / (2.0 * h);
  return Field(g, std::move(out));
}

/// Brute-force Bony split on a tiny grid: every block pair (i,j) classified
/// by i <= j-2 / |i-j| <= 1 / i >= j+2, products dealiased one by one.
struct BruteSplit {
  Field para_fg, para_gf, resonant;
};

inline BruteSplit brute_force_split(const Field& f, const Field& g,
                                    const paracalc::PartitionScheme& p) {
  const int J = p.top();
  std::vector<Field> fb, gb;
  for (int j = -1; j <= J; ++j) {
    fb.push_back(p.block(f, j));
    gb.push_back(p.block(g, j));
  }
  Field a = Field::zero(f.grid()), b = a, c = a;
  for (int i = -1; i <= J; ++i)
    for (int j = -1; j <= J; ++j) {
      const Field term = paracalc::dealiased_product(fb[static_cast<size_t>(i + 1)],
                                                     gb[static_cast<size_t>(j + 1)]);
      if (i <= j - 2) a = a + term;
      else if (i >= j + 2) b = b + term;
      else c = c + term;
    }
  return {a, b, c};
}

/// Relative sup-norm difference with a scale floor.
inline double rel_err(const Field& got, const Field& want) {
  const double scale = std::max(want.sup_norm(), 1e-30);
  return (got - want).sup_norm() / scale;
}

/// Low-block magnitude of a compound: || S_0 x ||_inf; the yardstick behind
/// "vanishes up to low-block residual".
inline double low_block_mag(const Field& x, const paracalc::PartitionScheme& p) {
  return p.low_part(x).sup_norm();
}

}  // namespace oracles
