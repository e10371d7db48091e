#pragma once

#include "paracalc/paraproduct.hpp"
#include "paracalc/timefield.hpp"

namespace paracalc {

/// P u0: exact heat evolution of u0 along the time grid.
TimeField heat_evolve(const Field& u0, const TimeGrid& t);

/// Duhamel integral v(tau) = int_0^tau e^{-(tau-s)L} S(s) ds with v(0) = 0,
/// stepped by the exponential trapezoid rule (exact propagation, source
/// integrated as its linear-in-time interpolant via phi1/phi2 weights).
/// Exact for sources constant in time.
TimeField duhamel_integrate(const TimeField& source);

/// One step of the same rule.
Field duhamel_step(const Field& v, const Field& src_lo, const Field& src_hi, double dt);

/// Exact L^{-1} lift of a time-independent Y:
/// slice(tau) = L^{-1}(I - e^{-tau L})(Y - mean) + tau * mean.
TimeField lift_static(const Field& Y, const TimeGrid& t);

/// Parabolic modified paraproduct in Duhamel form:
/// (Pi~_v Z)(tau) = int_0^tau e^{-(tau-s)L} Pi_{v(s)} Y ds, Z = L^{-1} Y.
/// Zero initial slice.
TimeField modified_para_parabolic(const TimeField& v, const Field& Y,
                                  const PartitionScheme& p);
TimeField modified_para_parabolic(const TimeField& v, const TimeField& Y,
                                  const PartitionScheme& p);

}  // namespace paracalc
