#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "paracalc/field.hpp"

namespace paracalc {

enum class PartitionKind { smooth, sharp };

/// Dyadic partition of unity on the grid's wavenumbers. Blocks are indexed
/// j = -1, 0, ..., J with J = log2(n) - 1; block -1 holds the lowest
/// frequencies including the mean, block j >= 0 an annulus at scale 2^j.
///
/// smooth: C^inf bump, block j supported in (3/4*2^j, 8/3*2^j).
/// sharp:  0/1 cutoffs, block j = {2^{j-1} < |k| <= 2^j}; exact on single
///         modes, used by tests that want exact support arithmetic.
///
/// The symbols sum to 1 at every grid wavenumber; checked at construction
/// to 1e-14.
class PartitionScheme {
 public:
  static PartitionScheme make(const TorusGrid& g, PartitionKind kind);
  static PartitionScheme smooth(const TorusGrid& g) {
    return make(g, PartitionKind::smooth);
  }
  static PartitionScheme sharp(const TorusGrid& g) {
    return make(g, PartitionKind::sharp);
  }

  PartitionKind kind() const { return kind_; }
  const TorusGrid& grid() const { return grid_; }
  int top() const { return grid_.top_block(); }

  /// Symbol of Delta_j, j in [-1, J].
  const Array& block_symbol(int j) const;
  /// Symbol of S_j = sum_{i <= j} Delta_i, j in [-1, J].
  const Array& partial_symbol(int j) const;

  Field block(const Field& f, int j) const;
  Field partial_sum(const Field& f, int j) const;
  /// S_0 f = (Delta_{-1} + Delta_0) f, the low part behind the
  /// Pi_1 f = f - S_0 f convention.
  Field low_part(const Field& f) const { return partial_sum(f, 0); }

 private:
  PartitionKind kind_;
  TorusGrid grid_;
  std::shared_ptr<const std::vector<Array>> block_symbols_;
  std::shared_ptr<const std::vector<Array>> partial_symbols_;
};

struct DyadicDecomposition {
  TorusGrid grid;
  PartitionKind kind = PartitionKind::smooth;
  std::vector<Field> blocks;           // ordered j = -1 .. J
  std::vector<double> block_sup_norms; // same order

  int top() const { return static_cast<int>(blocks.size()) - 2; }
  const Field& block(int j) const { return blocks.at(static_cast<size_t>(j + 1)); }
  double sup_norm(int j) const { return block_sup_norms.at(static_cast<size_t>(j + 1)); }
};

DyadicDecomposition decompose(const Field& f, const PartitionScheme& p);
Field reconstruct(const DyadicDecomposition& d);

/// CSV rows "j,sup_norm,log2_sup_norm" for the regression tooling.
void export_block_norms_csv(const DyadicDecomposition& d, std::ostream& os);

}  // namespace paracalc
