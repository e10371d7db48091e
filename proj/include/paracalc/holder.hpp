#pragma once

#include <utility>
#include <vector>

#include "paracalc/lp.hpp"
#include "paracalc/timefield.hpp"

namespace paracalc {

/// Least-squares fit of log2 block sup-norms against j; estimated_alpha is
/// minus the slope.
struct ExponentFit {
  int j_lo = 0, j_hi = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double estimated_alpha = 0.0;
  std::vector<int> excluded_blocks;  // below the numerical floor
};

struct HolderEstimate {
  double alpha = 0.0;
  double norm = 0.0;
  std::vector<double> per_block;  // 2^{j alpha} ||Delta_j f||_inf, j = -1..J
};

using JWindow = std::pair<int, int>;

/// Regression window [3, J-2]: bottom blocks carry constants, top blocks
/// carry grid truncation.
JWindow default_window(int top_block);

/// ||Delta_{-1} f||_inf + max_{j>=0} 2^{j alpha} ||Delta_j f||_inf.
/// alpha must lie in (-3, 3).
HolderEstimate besov_norm(const Field& f, double alpha, const PartitionScheme& p);
HolderEstimate besov_norm(const Field& f, double alpha);

/// Fit on precomputed log2 sup-norms at the given block indices.
ExponentFit fit_exponent(const std::vector<int>& js, const std::vector<double>& log2_norms);

ExponentFit estimate_exponent(const Field& f, JWindow window, const PartitionScheme& p);
ExponentFit estimate_exponent(const Field& f, const PartitionScheme& p);  // default window
ExponentFit estimate_exponent(const Field& f);

/// Window-filtered (j, log2 norm) points of a decomposition, dropping blocks
/// below 1e-13 * max|f|; the dropped indices land in `excluded`.
void window_points(const DyadicDecomposition& d, JWindow w, double scale,
                   std::vector<int>& js, std::vector<double>& log2_norms,
                   std::vector<int>& excluded);

/// sup over time slices of besov_norm(slice, alpha).
double time_sliced_norm(const TimeField& u, double alpha, const PartitionScheme& p);

}  // namespace paracalc
