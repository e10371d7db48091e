#include "paracalc/holder.hpp"

#include <algorithm>
#include <cmath>

namespace paracalc {

TimeGrid make_time_grid(double T, int steps) {
  if (T <= 0 || steps < 1) throw invalid_input("make_time_grid: need T > 0, steps >= 1");
  TimeGrid t(static_cast<size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) t[static_cast<size_t>(i)] = T * double(i) / double(steps);
  t.front() = 0.0;
  return t;
}

void validate_time_grid(const TimeGrid& t) {
  if (t.empty()) throw invalid_input("empty time grid");
  if (t.front() != 0.0) throw invalid_input("time grid must start at 0");
  for (size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw invalid_input("time grid must be strictly increasing");
}

double sup_norm_difference(const TimeField& a, const TimeField& b) {
  if (a.size() != b.size()) throw invalid_input("time fields differ in slice count");
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i)
    m = std::max(m, (a.slices[i] - b.slices[i]).sup_norm());
  return m;
}

JWindow default_window(int top_block) { return {3, top_block - 2}; }

HolderEstimate besov_norm(const Field& f, double alpha, const PartitionScheme& p) {
  if (!(alpha > -3.0 && alpha < 3.0))
    throw invalid_input("besov_norm: alpha must lie in (-3,3)");
  const auto d = decompose(f, p);
  HolderEstimate est;
  est.alpha = alpha;
  est.per_block.reserve(d.blocks.size());
  est.per_block.push_back(d.sup_norm(-1));
  double high = 0.0;
  for (int j = 0; j <= d.top(); ++j) {
    const double term = std::pow(2.0, double(j) * alpha) * d.sup_norm(j);
    est.per_block.push_back(term);
    high = std::max(high, term);
  }
  est.norm = d.sup_norm(-1) + high;
  return est;
}

HolderEstimate besov_norm(const Field& f, double alpha) {
  return besov_norm(f, alpha, PartitionScheme::smooth(f.grid()));
}

ExponentFit fit_exponent(const std::vector<int>& js, const std::vector<double>& log2_norms) {
  if (js.size() != log2_norms.size() || js.size() < 4)
    throw insufficient_data("exponent fit needs at least 4 usable blocks");
  const double n = double(js.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < js.size(); ++i) {
    sx += js[i];
    sy += log2_norms[i];
    sxx += double(js[i]) * js[i];
    sxy += double(js[i]) * log2_norms[i];
  }
  const double det = n * sxx - sx * sx;
  ExponentFit fit;
  fit.j_lo = *std::min_element(js.begin(), js.end());
  fit.j_hi = *std::max_element(js.begin(), js.end());
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (size_t i = 0; i < js.size(); ++i) {
    const double pred = fit.intercept + fit.slope * js[i];
    ss_res += (log2_norms[i] - pred) * (log2_norms[i] - pred);
    ss_tot += (log2_norms[i] - ybar) * (log2_norms[i] - ybar);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.estimated_alpha = -fit.slope;
  if (!std::isfinite(fit.estimated_alpha))
    throw insufficient_data("exponent fit produced a non-finite slope");
  return fit;
}

void window_points(const DyadicDecomposition& d, JWindow w, double scale,
                   std::vector<int>& js, std::vector<double>& log2_norms,
                   std::vector<int>& excluded) {
  js.clear();
  log2_norms.clear();
  excluded.clear();
  const double floor = 1e-13 * scale;
  for (int j = w.first; j <= w.second; ++j) {
    const double s = d.sup_norm(j);
    if (s <= floor) {
      excluded.push_back(j);
    } else {
      js.push_back(j);
      log2_norms.push_back(std::log2(s));
    }
  }
}

ExponentFit estimate_exponent(const Field& f, JWindow window, const PartitionScheme& p) {
  const int J = p.top();
  if (window.first < 2 || window.second > J - 2 || window.second - window.first + 1 < 4)
    throw invalid_input("estimate_exponent: window must sit in [2, J-2] with >= 4 points");
  const auto d = decompose(f, p);
  std::vector<int> js, excluded;
  std::vector<double> ys;
  window_points(d, window, f.sup_norm(), js, ys, excluded);
  if (js.size() < 4)
    throw insufficient_data("fewer than 4 blocks above the numerical floor");
  auto fit = fit_exponent(js, ys);
  fit.excluded_blocks = std::move(excluded);
  return fit;
}

ExponentFit estimate_exponent(const Field& f, const PartitionScheme& p) {
  return estimate_exponent(f, default_window(p.top()), p);
}

ExponentFit estimate_exponent(const Field& f) {
  return estimate_exponent(f, PartitionScheme::smooth(f.grid()));
}

double time_sliced_norm(const TimeField& u, double alpha, const PartitionScheme& p) {
  if (u.slices.empty()) throw invalid_input("time_sliced_norm: empty time grid");
  double m = 0;
  for (const auto& s : u.slices) m = std::max(m, besov_norm(s, alpha, p).norm);
  return m;
}

}  // namespace paracalc
