#include "paracalc/paraproduct.hpp"

#include <cmath>

namespace paracalc {
namespace {

// Value-space images of every block on the 2x padded grid. Accumulating
// block products there and transforming back once is the same dealiasing
// as per-term pad/truncate, by linearity.
struct PaddedBlocks {
  TorusGrid fine;
  std::vector<Array> vals;  // j = -1 .. J at index j+1
};

PaddedBlocks padded_blocks(const Field& f, const PartitionScheme& p) {
  PaddedBlocks pb;
  const TorusGrid& g = f.grid();
  const int J = p.top();
  pb.vals.reserve(static_cast<size_t>(J + 2));
  for (int j = -1; j <= J; ++j) {
    CArray spec = f.spectrum() * p.block_symbol(j).cast<cplx>();
    CArray padded = fourier::pad_spectrum(g, spec, pb.fine);
    pb.vals.push_back(fourier::inverse(pb.fine, padded));
  }
  return pb;
}

Field collapse(const TorusGrid& coarse, const TorusGrid& fine, const Array& acc) {
  CArray spec = acc.cast<cplx>();
  spec = fourier::forward_raw(fine, spec);
  spec /= double(fine.size());
  return Field::from_spectrum(coarse, fourier::truncate_spectrum(fine, spec, coarse));
}

}  // namespace

Field para(const Field& f, const Field& g, const PartitionScheme& p) {
  require_same_grid(f, g);
  const auto pf = padded_blocks(f, p);
  const auto pg = padded_blocks(g, p);
  const int J = p.top();
  Array prefix = pf.vals[0];  // S_{-1} f
  Array acc = Array::Zero(pf.fine.size());
  for (int j = 1; j <= J; ++j) {
    if (j >= 2) prefix += pf.vals[static_cast<size_t>(j - 1)];  // now S_{j-2} f
    acc += prefix * pg.vals[static_cast<size_t>(j + 1)];
  }
  return collapse(f.grid(), pf.fine, acc);
}

Field resonant(const Field& f, const Field& g, const PartitionScheme& p) {
  require_same_grid(f, g);
  const auto pf = padded_blocks(f, p);
  const auto pg = padded_blocks(g, p);
  const int J = p.top();
  Array acc = Array::Zero(pf.fine.size());
  for (int i = -1; i <= J; ++i)
    for (int j = std::max(-1, i - 1); j <= std::min(J, i + 1); ++j)
      acc += pf.vals[static_cast<size_t>(i + 1)] * pg.vals[static_cast<size_t>(j + 1)];
  return collapse(f.grid(), pf.fine, acc);
}

ProductSplit full_split(const Field& f, const Field& g, const PartitionScheme& p) {
  require_same_grid(f, g);
  const auto pf = padded_blocks(f, p);
  const auto pg = padded_blocks(g, p);
  const int J = p.top();
  Array acc_fg = Array::Zero(pf.fine.size());
  Array acc_gf = acc_fg, acc_res = acc_fg;
  // Exact three-way partition of pairs: i <= j-2 / |i-j| <= 1 / i >= j+2.
  Array prefix_f = pf.vals[0], prefix_g = pg.vals[0];
  for (int j = 1; j <= J; ++j) {
    if (j >= 2) {
      prefix_f += pf.vals[static_cast<size_t>(j - 1)];
      prefix_g += pg.vals[static_cast<size_t>(j - 1)];
    }
    acc_fg += prefix_f * pg.vals[static_cast<size_t>(j + 1)];
    acc_gf += prefix_g * pf.vals[static_cast<size_t>(j + 1)];
  }
  for (int i = -1; i <= J; ++i)
    for (int j = std::max(-1, i - 1); j <= std::min(J, i + 1); ++j)
      acc_res += pf.vals[static_cast<size_t>(i + 1)] * pg.vals[static_cast<size_t>(j + 1)];
  ProductSplit s{collapse(f.grid(), pf.fine, acc_fg), collapse(f.grid(), pf.fine, acc_gf),
                 collapse(f.grid(), pf.fine, acc_res)};
  return s;
}

Field modified_para(const Field& f, const Field& g, const PartitionScheme& p) {
  return inverse_laplacian(para(f, laplacian(g), p));
}

Field para_diff(const Field& a, const Field& g, const PartitionScheme& p) {
  return modified_para(a, g, p) - para(a, g, p);
}

namespace {

// Q^(b)_t = (tL)^b e^{-tL} / (b-1)!
Multiplier q_multiplier(double t, int b) {
  const double gamma = std::tgamma(double(b));
  return {[t, b, gamma](const std::array<int, 2>& k) {
            const double lam = double(k[0]) * k[0] + double(k[1]) * k[1];
            return cplx(std::pow(t * lam, double(b)) * std::exp(-t * lam) / gamma, 0.0);
          },
          "Q_t"};
}

double semigroup_norm_const(int b) {
  // int_0^inf (t lam)^{1+b} e^{-2 t lam} dt/t / ((b-1)! * Gamma(1)) = b / 2^{1+b}
  return double(b) / std::pow(2.0, double(b + 1));
}

}  // namespace

Field semigroup_para(const Field& f, const Field& g, const BackendConfig& cfg) {
  cfg.validate();
  require_same_grid(f, g);
  const double w = std::log(2.0), c = semigroup_norm_const(cfg.b);
  Field acc = Field::zero(f.grid());
  for (int l = 0; l < cfg.levels; ++l) {
    const double t = std::pow(2.0, -(l + 0.5));
    Field qg = apply_multiplier(g, q_multiplier(t, cfg.b));
    Field pf = heat_propagate(f, t);
    Field inner = dealiased_product(qg, pf);
    acc = acc + apply_multiplier(inner, q_multiplier(t, 1));
  }
  return (w / c) * acc;
}

Multiplier semigroup_identity_multiplier(const BackendConfig& cfg) {
  cfg.validate();
  const int b = cfg.b, levels = cfg.levels;
  const double w = std::log(2.0), c = semigroup_norm_const(b);
  const double gamma_b = std::tgamma(double(b));
  return {[b, levels, w, c, gamma_b](const std::array<int, 2>& k) {
            const double lam = double(k[0]) * k[0] + double(k[1]) * k[1];
            double s = 0.0;
            for (int l = 0; l < levels; ++l) {
              const double t = std::pow(2.0, -(l + 0.5));
              s += std::pow(t * lam, double(1 + b)) * std::exp(-2.0 * t * lam);
            }
            return cplx(w * s / (gamma_b * c), 0.0);
          },
          "semigroup-calderon"};
}

Field para_with_backend(const Field& f, const Field& g, const BackendConfig& cfg,
                        const PartitionScheme& p) {
  if (cfg.backend == BackendConfig::Backend::semigroup) return semigroup_para(f, g, cfg);
  return para(f, g, p);
}

}  // namespace paracalc
