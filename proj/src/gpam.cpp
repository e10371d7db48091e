#include "paracalc/gpam.hpp"

#include <algorithm>
#include <cmath>

namespace paracalc {
namespace {

TimeField pointwise_tf(const Nonlinearity& fn, int order, const TimeField& u) {
  TimeField out(u.grid, u.times);
  for (size_t i = 0; i < u.size(); ++i) out.slices[i] = apply_pointwise(fn, order, u.slices[i]);
  return out;
}

double max_component_diff(const ParacontrolledFunction& a, const ParacontrolledFunction& b) {
  return std::max({sup_norm_difference(a.u, b.u), sup_norm_difference(a.u1, b.u1),
                   sup_norm_difference(a.u2, b.u2), sup_norm_difference(a.u11, b.u11)});
}

}  // namespace

ParacontrolledFunction phi_map(const ParacontrolledFunction& uhat, const EnhancedNoise& xi,
                               const Nonlinearity& fn, const Field& u0,
                               const SolveOptions& opts) {
  opts.validate();
  const TimeGrid& t = uhat.u.times;
  TimeField source(uhat.u.grid, t);
  for (size_t i = 0; i < t.size(); ++i) {
    source.slices[i] = dealiased_product(apply_pointwise(fn, 0, uhat.u.slices[i]), xi.zeta);
    if (!source.slices[i].all_finite())
      throw divergence_error("phi_map: non-finite source", static_cast<int>(i));
  }
  ParacontrolledFunction out;
  TimeField free = heat_evolve(u0, t);
  TimeField forced = duhamel_integrate(source);
  out.u = TimeField(uhat.u.grid, t);
  for (size_t i = 0; i < t.size(); ++i) {
    out.u.slices[i] = free.slices[i] + forced.slices[i];
    if (!out.u.slices[i].all_finite())
      throw divergence_error("phi_map: non-finite iterate", static_cast<int>(i));
  }
  out.u1 = pointwise_tf(fn, 0, uhat.u);
  TimeField fprime = pointwise_tf(fn, 1, uhat.u);
  out.u2 = TimeField(uhat.u.grid, t);
  for (size_t i = 0; i < t.size(); ++i)
    out.u2.slices[i] = dealiased_product(fprime.slices[i], uhat.u1.slices[i]);
  out.u11 = out.u2;
  return out;
}

SolveResult solve_gpam(const Field& u0, const EnhancedNoise& xi, const Nonlinearity& fn,
                       const SolveOptions& opts) {
  opts.validate();
  const TimeGrid t = xi.timegrid;
  ParacontrolledFunction cur;
  cur.u = heat_evolve(u0, t);
  cur.u1 = pointwise_tf(fn, 0, cur.u);
  cur.u2 = TimeField(u0.grid(), t);
  cur.u11 = TimeField(u0.grid(), t);

  SolveResult res;
  for (int it = 1; it <= opts.max_iters; ++it) {
    ParacontrolledFunction next;
    try {
      next = phi_map(cur, xi, fn, u0, opts);
    } catch (const divergence_error& e) {
      throw divergence_error(std::string(e.what()) + " at Picard iteration " +
                                 std::to_string(it),
                             it);
    }
    const double r = max_component_diff(next, cur);
    res.residual_trace.push_back(r);
    cur = std::move(next);
    if (r <= opts.fp_tol) {
      res.uhat = std::move(cur);
      res.iterations = it;
      return res;
    }
  }
  throw non_convergence("solve_gpam: no fixed point within max_iters", res.residual_trace);
}

TimeField reference_solve(const Field& u0, const Field& zeta, const Nonlinearity& fn,
                          const SolveOptions& opts) {
  opts.validate();
  const TimeGrid t = opts.timegrid();
  TimeField out(u0.grid(), t);
  Field u = u0;
  out.slices[0] = u;
  auto source = [&](const Field& w) {
    return dealiased_product(apply_pointwise(fn, 0, w), zeta);
  };
  for (size_t i = 1; i < t.size(); ++i) {
    const double dt = t[i] - t[i - 1];
    // exponential midpoint: propagate to the half step, evaluate the source
    // there, then take the full step with that midpoint slope
    Field mid = heat_propagate(u, dt / 2) + (dt / 2) * heat_propagate(source(u), dt / 2);
    u = heat_propagate(u, dt) + dt * heat_propagate(source(mid), dt / 2);
    if (!u.all_finite())
      throw divergence_error("reference_solve: blow-up", static_cast<int>(i));
    out.slices[i] = u;
  }
  return out;
}

AnsatzResidualReport ansatz_residual(const ParacontrolledFunction& uhat,
                                     const EnhancedNoise& xi, const PartitionScheme& p) {
  TimeField pz1 = modified_para_parabolic(uhat.u1, xi.zeta, p);
  TimeField pz2 = modified_para_parabolic(uhat.u2, xi.Y2, p);
  TimeField pz1_11 = modified_para_parabolic(uhat.u11, xi.zeta, p);

  AnsatzResidualReport rep;
  rep.u_sharp = uhat.u.back() - pz1.back() - pz2.back();
  rep.u1_sharp = uhat.u1.back() - pz1_11.back();

  auto try_fit = [&](const Field& f, bool& exact) -> std::optional<ExponentFit> {
    try {
      return estimate_exponent(f, p);
    } catch (const insufficient_data&) {
      exact = true;  // every block under the floor: remainder is exact
      return std::nullopt;
    }
  };
  bool dummy = false;
  rep.u_fit = try_fit(uhat.u.back(), dummy);
  rep.u_sharp_fit = try_fit(rep.u_sharp, rep.u_sharp_exact);
  rep.u1_sharp_fit = try_fit(rep.u1_sharp, rep.u1_sharp_exact);
  return rep;
}

PointwiseBoundReport pointwise_bound_check(const ParacontrolledFunction& uhat,
                                           const EnhancedNoise& xi, const Nonlinearity& fn) {
  const TorusGrid& g = uhat.u.grid;
  const TimeGrid& t = uhat.u.times;
  const size_t nt = t.size();
  const double dt = t[1] - t[0];
  const double h = 2.0 * M_PI / g.n;
  PointwiseBoundReport rep;

  auto value = [&](const TimeField& tf, size_t it, std::int64_t ix) {
    return tf.slices[it].values()[ix];
  };

  for (int k = 2; k <= 8; ++k) {
    const double rho = std::pow(2.0, -k);
    const int dx = std::max(1, int(std::lround(rho / h)));
    const int dti = std::max(1, int(std::lround(rho * rho / dt)));
    double sup = 0;
    const int samples = 64;
    for (int s = 0; s < samples; ++s) {
      const std::int64_t ix =
          static_cast<std::int64_t>(rng::mix64(1234, std::uint64_t(k) * 977 + s) % std::uint64_t(g.size()));
      const size_t it = nt / 2 + (s % (nt / 4));
      // pure space, pure time, and mixed offsets at this separation scale
      struct Off { int dt_steps; std::int64_t dx_steps; };
      for (const Off& o : {Off{0, dx}, Off{dti, 0}, Off{dti, dx}}) {
        const size_t jt = it + static_cast<size_t>(o.dt_steps);
        if (jt >= nt) continue;
        const std::int64_t jx = (ix + o.dx_steps) % g.size();
        const double dxp = std::abs(double(o.dx_steps)) * h;
        const double dist = std::min(dxp, 2.0 * M_PI - dxp);
        const double rho_act = std::sqrt(t[jt] - t[it]) + dist;
        if (rho_act <= 0) continue;
        const double du = value(uhat.u, jt, jx) - value(uhat.u, it, ix);
        const double dz = value(xi.Z1, jt, jx) - value(xi.Z1, it, ix);
        const double fu = fn.eval(value(uhat.u, it, ix), 0);
        sup = std::max(sup, std::abs(du - fu * dz) / rho_act);
      }
    }
    rep.scales.push_back(k);
    rep.per_scale_sup.push_back(sup);
    rep.sup_ratio = std::max(rep.sup_ratio, sup);
  }
  std::vector<double> sorted = rep.per_scale_sup;
  std::sort(sorted.begin(), sorted.end());
  rep.median = sorted[sorted.size() / 2];
  return rep;
}

CanonicalProductReport canonical_product_check(const ParacontrolledFunction& uhat,
                                               const EnhancedNoise& xi,
                                               const Nonlinearity& fn,
                                               const PartitionScheme& p) {
  const Field& u = uhat.u.back();
  const Field& u1 = uhat.u1.back();
  const Field& u2 = uhat.u2.back();
  const Field& u11 = uhat.u11.back();
  const Field& z1 = xi.Z1.back();
  const Field& z2 = xi.Z2.back();
  const Field fu = apply_pointwise(fn, 0, u);
  const Field f1 = apply_pointwise(fn, 1, u);
  const Field f2 = apply_pointwise(fn, 2, u);
  const Field u1sq = dealiased_product(u1, u1);

  const Field dominant = para(fu, xi.zeta, p);
  Field assembled = dominant + para(xi.zeta, fu, p);
  assembled = assembled +
              dealiased_product(dealiased_product(f1, u1), resonant(z1, xi.zeta, p));
  const Field weight = dealiased_product(f1, u11) + dealiased_product(f2, u1sq);
  assembled =
      assembled + dealiased_product(weight, corrector_c(z1, z1, xi.zeta, p, Flavor::plain));
  assembled = assembled +
              dealiased_product(dealiased_product(f1, u2), resonant(z2, xi.zeta, p));
  assembled = assembled + 0.5 * dealiased_product(dealiased_product(f2, u1sq),
                                                  resonant(resonant(z1, z1, p), xi.zeta, p));

  const Field leftover = dealiased_product(fu, xi.zeta) - assembled;

  CanonicalProductReport rep;
  rep.dominant_fit = estimate_exponent(dominant, p);
  rep.leftover_fit = estimate_exponent(leftover, p);
  rep.gap = rep.leftover_fit.estimated_alpha - rep.dominant_fit.estimated_alpha;
  rep.pass = rep.gap >= 0.5;
  return rep;
}

SchauderReport schauder_check(double beta, double eps, int seeds, const TorusGrid& g,
                              double T, const PartitionScheme& p, std::uint64_t base_seed) {
  if (!(eps > 0) || !(beta > -2 + 2 * eps && beta < 0))
    throw invalid_input("schauder_check: need beta in (-2+2eps, 0), eps > 0");
  SchauderReport rep;
  rep.beta = beta;
  rep.eps = eps;
  const TimeGrid t = make_time_grid(T, 4);  // exact lift; few slices suffice
  double acc = 0;
  for (int s = 0; s < seeds; ++s) {
    Field v = sample_field({beta, rng::mix64(base_seed, std::uint64_t(s))}, g);
    TimeField lifted = lift_static(v, t);
    const double a = estimate_exponent(lifted.back(), p).estimated_alpha;
    rep.per_seed_out_alpha.push_back(a);
    acc += a;
  }
  rep.mean_out_alpha = acc / seeds;
  rep.gain = rep.mean_out_alpha - beta;
  rep.pass = rep.gain >= 2.0 - 2.0 * eps - 0.2;
  return rep;
}

}  // namespace paracalc
