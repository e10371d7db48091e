#pragma once

#include <Eigen/Dense>
#include <memory>
#include <utility>

#include "paracalc/grid.hpp"

namespace paracalc {

using Array = Eigen::ArrayXd;
using CArray = Eigen::ArrayXcd;
using cplx = std::complex<double>;

/// Real scalar field on a TorusGrid. Value semantics; the spectrum cache is
/// shared between copies and dropped on any mutation. Share across threads
/// read-only, after ensure_spectrum() if the spectrum will be needed.
class Field {
 public:
  Field() = default;
  Field(TorusGrid g, Array vals) : grid_(g), values_(std::move(vals)) {
    if (values_.size() != g.size())
      throw invalid_input("Field: value array size does not match grid");
  }

  static Field zero(TorusGrid g) { return Field(g, Array::Zero(g.size())); }
  static Field constant(TorusGrid g, double c) {
    return Field(g, Array::Constant(g.size(), c));
  }

  const TorusGrid& grid() const { return grid_; }
  const Array& values() const { return values_; }

  /// Mutable access; invalidates the cached spectrum.
  Array& mutable_values() {
    spectrum_.reset();
    return values_;
  }

  double mean() const { return values_.mean(); }
  double sup_norm() const {
    return values_.size() ? values_.abs().maxCoeff() : 0.0;
  }
  bool all_finite() const { return values_.isFinite().all(); }

  bool has_spectrum() const { return spectrum_ != nullptr; }

  /// Cached forward transform; normalization 1/n^dim, so spectrum(0) = mean.
  const CArray& spectrum() const;
  void ensure_spectrum() const { (void)spectrum(); }

  /// Build a field directly from its (1/n^d normalized) spectrum.
  static Field from_spectrum(TorusGrid g, CArray spec);

 private:
  TorusGrid grid_;
  Array values_;
  mutable std::shared_ptr<const CArray> spectrum_;
};

inline void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw grid_mismatch("fields live on different grids");
}

inline Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  return Field(a.grid(), a.values() + b.values());
}
inline Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  return Field(a.grid(), a.values() - b.values());
}
inline Field operator*(double c, const Field& f) {
  return Field(f.grid(), c * f.values());
}
inline Field operator-(const Field& f) { return Field(f.grid(), -f.values()); }

}  // namespace paracalc
