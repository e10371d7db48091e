#pragma once

#include <vector>

#include "paracalc/field.hpp"

namespace paracalc {

using TimeGrid = std::vector<double>;

/// Uniform grid 0, dt, ..., T with `steps` intervals.
TimeGrid make_time_grid(double T, int steps);

void validate_time_grid(const TimeGrid& t);

/// Time-indexed sequence of fields on one spatial grid.
struct TimeField {
  TorusGrid grid;
  TimeGrid times;
  std::vector<Field> slices;

  TimeField() = default;
  TimeField(TorusGrid g, TimeGrid t) : grid(g), times(std::move(t)) {
    validate_time_grid(times);
    slices.assign(times.size(), Field::zero(g));
  }

  size_t size() const { return slices.size(); }
  const Field& slice(size_t i) const { return slices.at(i); }
  const Field& back() const { return slices.back(); }

  double sup_norm() const {
    double m = 0;
    for (const auto& s : slices) m = std::max(m, s.sup_norm());
    return m;
  }
  bool all_finite() const {
    for (const auto& s : slices)
      if (!s.all_finite()) return false;
    return true;
  }
};

inline TimeField zero_time_field(TorusGrid g, TimeGrid t) { return TimeField(g, std::move(t)); }

double sup_norm_difference(const TimeField& a, const TimeField& b);

}  // namespace paracalc
