#include "paracalc/duhamel.hpp"

#include <cmath>

namespace paracalc {
namespace {

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, stable near 0.
double phi1(double z) {
  if (std::abs(z) < 1e-8) return 1.0 + z / 2.0 + z * z / 6.0;
  return std::expm1(z) / z;
}
double phi2(double z) {
  if (std::abs(z) < 1e-4) return 0.5 + z / 6.0 + z * z / 24.0;
  return (std::expm1(z) - z) / (z * z);
}

}  // namespace

TimeField heat_evolve(const Field& u0, const TimeGrid& t) {
  validate_time_grid(t);
  TimeField out(u0.grid(), t);
  for (size_t i = 0; i < t.size(); ++i) out.slices[i] = heat_propagate(u0, t[i]);
  return out;
}

Field duhamel_step(const Field& v, const Field& src_lo, const Field& src_hi, double dt) {
  require_same_grid(v, src_lo);
  require_same_grid(v, src_hi);
  const TorusGrid& g = v.grid();
  const CArray &sv = v.spectrum(), &sl = src_lo.spectrum(), &sh = src_hi.spectrum();
  CArray out(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double z = -dt * g.k_norm_sq(i);
    out[i] = std::exp(z) * sv[i] + dt * (phi1(z) * sl[i] + phi2(z) * (sh[i] - sl[i]));
  }
  return Field::from_spectrum(g, std::move(out));
}

TimeField duhamel_integrate(const TimeField& source) {
  TimeField out(source.grid, source.times);
  Field v = Field::zero(source.grid);
  out.slices[0] = v;
  for (size_t i = 1; i < source.times.size(); ++i) {
    const double dt = source.times[i] - source.times[i - 1];
    v = duhamel_step(v, source.slices[i - 1], source.slices[i], dt);
    out.slices[i] = v;
  }
  return out;
}

TimeField lift_static(const Field& Y, const TimeGrid& t) {
  validate_time_grid(t);
  const TorusGrid& g = Y.grid();
  const CArray& sy = Y.spectrum();
  TimeField out(g, t);
  for (size_t s = 0; s < t.size(); ++s) {
    const double tau = t[s];
    CArray spec(g.size());
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const double k2 = g.k_norm_sq(i);
      spec[i] = k2 == 0.0 ? tau * sy[i] : (-std::expm1(-tau * k2)) / k2 * sy[i];
    }
    out.slices[s] = Field::from_spectrum(g, std::move(spec));
  }
  return out;
}

TimeField modified_para_parabolic(const TimeField& v, const Field& Y,
                                  const PartitionScheme& p) {
  TimeField src(v.grid, v.times);
  for (size_t i = 0; i < v.size(); ++i) src.slices[i] = para(v.slices[i], Y, p);
  return duhamel_integrate(src);
}

TimeField modified_para_parabolic(const TimeField& v, const TimeField& Y,
                                  const PartitionScheme& p) {
  if (v.times != Y.times) throw invalid_input("modified_para_parabolic: time grids differ");
  TimeField src(v.grid, v.times);
  for (size_t i = 0; i < v.size(); ++i) src.slices[i] = para(v.slices[i], Y.slices[i], p);
  return duhamel_integrate(src);
}

}  // namespace paracalc
