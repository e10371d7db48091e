#pragma once

#include <optional>

#include "paracalc/noise.hpp"
#include "paracalc/taylor.hpp"

namespace paracalc {

/// Second order paracontrolled tuple (u; u1, u2; u11). The remainders
/// u# = u - Pi~_{u1}Z1 - Pi~_{u2}Z2 and u1# = u1 - Pi~_{u11}Z1 are
/// computed on demand against the enhancement (parabolic Pi~).
struct ParacontrolledFunction {
  TimeField u, u1, u2, u11;
};

struct SolveOptions {
  double T = 0.25;
  double dt = 0.25 / 128;
  int max_iters = 25;
  double fp_tol = 1e-8;
  double alpha = 0.6;
  double beta = 0.55;

  void validate() const {
    if (!(dt > 0) || !(fp_tol > 0) || !(T > 0) || max_iters < 1)
      throw invalid_input("SolveOptions: need T, dt, fp_tol > 0 and max_iters >= 1");
    if (!(0.5 < beta && beta < alpha && alpha <= 2.0 / 3.0))
      throw invalid_input("SolveOptions: need 1/2 < beta < alpha <= 2/3");
    if (!(3 * alpha + beta > 2))
      throw invalid_input("SolveOptions: need 3*alpha + beta > 2");
  }
  TimeGrid timegrid() const {
    return make_time_grid(T, std::max(1, int(std::lround(T / dt))));
  }
};

/// One application of Phi: v solves Lv = f(u) zeta with v(0) = u0, and the
/// derivative tuple is (f(u), f'(u)u1; f'(u)u1).
ParacontrolledFunction phi_map(const ParacontrolledFunction& uhat, const EnhancedNoise& xi,
                               const Nonlinearity& fn, const Field& u0,
                               const SolveOptions& opts);

struct SolveResult {
  ParacontrolledFunction uhat;
  std::vector<double> residual_trace;
  int iterations = 0;
};

/// Picard iteration of phi_map from (P u0; f(P u0), 0; 0) until the
/// successive sup-norm difference drops below fp_tol.
SolveResult solve_gpam(const Field& u0, const EnhancedNoise& xi, const Nonlinearity& fn,
                       const SolveOptions& opts);

/// Classical oracle: exponential-midpoint spectral integrator, second order
/// in dt, valid in the mollified regime.
TimeField reference_solve(const Field& u0, const Field& zeta, const Nonlinearity& fn,
                          const SolveOptions& opts);

struct AnsatzResidualReport {
  Field u_sharp, u1_sharp;                 // final-slice remainders
  std::optional<ExponentFit> u_fit;        // final slice of u
  std::optional<ExponentFit> u_sharp_fit;  // empty when the remainder is exact
  std::optional<ExponentFit> u1_sharp_fit;
  bool u_sharp_exact = false;
  bool u1_sharp_exact = false;
};

AnsatzResidualReport ansatz_residual(const ParacontrolledFunction& uhat,
                                     const EnhancedNoise& xi, const PartitionScheme& p);

struct PointwiseBoundReport {
  std::vector<int> scales;          // k for separation 2^{-k}
  std::vector<double> per_scale_sup;
  double sup_ratio = 0;
  double median = 0;
};

/// sup |u(e')-u(e)-f(u(e))(Z1(e')-Z1(e))| / rho(e',e) sampled over point
/// pairs at dyadic separations, rho the parabolic distance.
PointwiseBoundReport pointwise_bound_check(const ParacontrolledFunction& uhat,
                                           const EnhancedNoise& xi, const Nonlinearity& fn);

struct CanonicalProductReport {
  ExponentFit dominant_fit;  // the Pi_{f(u)} zeta term
  ExponentFit leftover_fit;  // f(u) zeta minus the assembled decomposition
  double gap = 0;            // leftover alpha - dominant alpha
  bool pass = false;         // gap >= 0.5
};

/// Assembles the canonical decomposition of f(u) zeta at the final slice,
///   Pi_{f(u)} zeta + Pi_zeta f(u) + f'(u)u1 Pi(Z1,zeta)
///   + (f'(u)u11 + f''(u)u1^2) C(Z1,Z1;zeta) + f'(u)u2 Pi(Z2,zeta)
///   + (1/2) f''(u)u1^2 Pi(Pi(Z1,Z1),zeta),
/// subtracts it from the pointwise product and regresses the leftover; the
/// structural cancellations must lift its exponent well above the dominant
/// term's.
CanonicalProductReport canonical_product_check(const ParacontrolledFunction& uhat,
                                               const EnhancedNoise& xi,
                                               const Nonlinearity& fn,
                                               const PartitionScheme& p);

struct SchauderReport {
  double beta = 0, eps = 0;
  std::vector<double> per_seed_out_alpha;
  double mean_out_alpha = 0;
  double gain = 0;
  bool pass = false;
};

/// Samples v at exponent beta, lifts through the exact Duhamel L^{-1},
/// measures the final-slice exponent; passes when the smoothing gain is
/// at least 2 - 2 eps - 0.2.
SchauderReport schauder_check(double beta, double eps, int seeds, const TorusGrid& g,
                              double T, const PartitionScheme& p,
                              std::uint64_t base_seed = 42);

}  // namespace paracalc
