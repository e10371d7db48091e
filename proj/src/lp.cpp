#include "paracalc/lp.hpp"

#include <cmath>
#include <ostream>

namespace paracalc {
namespace {

// Smooth transition: 1 for r <= 3/4, 0 for r >= 4/3.
double bump(double r) {
  constexpr double lo = 0.75, hi = 4.0 / 3.0;
  if (r <= lo) return 1.0;
  if (r >= hi) return 0.0;
  const double s = (r - lo) / (hi - lo);
  const double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  return b / (a + b);
}

std::vector<Array> build_block_symbols(const TorusGrid& g, PartitionKind kind) {
  const int J = g.top_block();
  std::vector<Array> sym(static_cast<size_t>(J + 2), Array::Zero(g.size()));
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double r = std::sqrt(g.k_norm_sq(i));
    if (kind == PartitionKind::smooth) {
      double prev = bump(r);  // chi(|k|)
      sym[0][i] = prev;
      for (int j = 0; j <= J; ++j) {
        const double next = bump(r / double(1 << (j + 1)));
        sym[static_cast<size_t>(j + 1)][i] = next - prev;
        prev = next;
      }
    } else {
      int j;
      if (r <= 0.5) j = -1;
      else {
        j = 0;
        while (j < J && r > double(1 << j)) ++j;  // annulus (2^{j-1}, 2^j]
      }
      sym[static_cast<size_t>(j + 1)][i] = 1.0;
    }
  }
  return sym;
}

}  // namespace

PartitionScheme PartitionScheme::make(const TorusGrid& g, PartitionKind kind) {
  PartitionScheme p;
  p.kind_ = kind;
  p.grid_ = g;
  auto blocks = std::make_shared<std::vector<Array>>(build_block_symbols(g, kind));
  auto partials = std::make_shared<std::vector<Array>>();
  partials->reserve(blocks->size());
  Array acc = Array::Zero(g.size());
  for (const auto& s : *blocks) {
    acc += s;
    partials->push_back(acc);
  }
  const double defect = (partials->back() - 1.0).abs().maxCoeff();
  if (defect > 1e-14)
    throw invalid_input("partition of unity defect " + std::to_string(defect));
  p.block_symbols_ = std::move(blocks);
  p.partial_symbols_ = std::move(partials);
  return p;
}

const Array& PartitionScheme::block_symbol(int j) const {
  const int J = top();
  if (j < -1 || j > J) throw invalid_input("block index out of range");
  return (*block_symbols_)[static_cast<size_t>(j + 1)];
}

const Array& PartitionScheme::partial_symbol(int j) const {
  const int J = top();
  if (j < -1 || j > J) throw invalid_input("partial sum index out of range");
  return (*partial_symbols_)[static_cast<size_t>(j + 1)];
}

namespace {
Field apply_symbol(const Field& f, const Array& sym) {
  CArray out = f.spectrum() * sym.cast<cplx>();
  return Field::from_spectrum(f.grid(), std::move(out));
}
}  // namespace

Field PartitionScheme::block(const Field& f, int j) const {
  if (!(f.grid() == grid_)) throw grid_mismatch("block: field grid != partition grid");
  return apply_symbol(f, block_symbol(j));
}

Field PartitionScheme::partial_sum(const Field& f, int j) const {
  if (!(f.grid() == grid_)) throw grid_mismatch("partial_sum: field grid != partition grid");
  return apply_symbol(f, partial_symbol(j));
}

DyadicDecomposition decompose(const Field& f, const PartitionScheme& p) {
  if (!(f.grid() == p.grid())) throw grid_mismatch("decompose: field grid != partition grid");
  DyadicDecomposition d;
  d.grid = f.grid();
  d.kind = p.kind();
  const int J = p.top();
  d.blocks.reserve(static_cast<size_t>(J + 2));
  d.block_sup_norms.reserve(static_cast<size_t>(J + 2));
  for (int j = -1; j <= J; ++j) {
    d.blocks.push_back(p.block(f, j));
    d.block_sup_norms.push_back(d.blocks.back().sup_norm());
  }
  return d;
}

Field reconstruct(const DyadicDecomposition& d) {
  if (d.blocks.empty()) throw invalid_input("reconstruct: empty decomposition");
  Field acc = Field::zero(d.grid);
  for (const auto& b : d.blocks) {
    if (!(b.grid() == d.grid)) throw grid_mismatch("reconstruct: mismatched grids");
    acc = acc + b;
  }
  return acc;
}

void export_block_norms_csv(const DyadicDecomposition& d, std::ostream& os) {
  os << "j,sup_norm,log2_sup_norm\n";
  for (int j = -1; j <= d.top(); ++j) {
    const double s = d.sup_norm(j);
    os << j << ',' << s << ',' << (s > 0 ? std::log2(s) : -INFINITY) << '\n';
  }
}

}  // namespace paracalc
