#include "paracalc/registry.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

namespace paracalc {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

using Maybe = std::optional<std::string>;
using Alphas = std::vector<double>;

Maybe violated_msg(bool ok, const std::string& ineq, double got) {
  if (ok) return std::nullopt;
  return ineq + " violated (value " + fmt(got) + ")";
}

Maybe in_open(double v, double lo, double hi, const std::string& label) {
  return violated_msg(v > lo && v < hi,
                      label + " in (" + fmt(lo) + "," + fmt(hi) + ")", v);
}

Maybe first_of(std::initializer_list<Maybe> checks) {
  for (const auto& c : checks)
    if (c) return c;
  return std::nullopt;
}

double sum(const Alphas& a) {
  double s = 0;
  for (double v : a) s += v;
  return s;
}

// Slot shorthand for apply lambdas.
using Fields = std::vector<Field>;

// The checked-in calibration table. Canonical tuples satisfy the backing
// theorem's hypotheses; tolerances (0.15-0.25) and the shared fit window
// were set from ensemble measurements at n = 2^12 and are only tightened
// on evidence. Entries whose 8-seed acceptance runs cannot resolve the
// theorem exponent at this grid size are noted inline.
std::vector<OperatorEntry> build_table() {
  std::vector<OperatorEntry> t;

  t.push_back({"para",
               {"f", "g"},
               {0.9, 0.6},
               0.2,
               [](const Alphas& a) {
                 return first_of({violated_msg(a[0] > 0, "alpha_f > 0 (bounded modulator)", a[0]),
                                  in_open(a[1], -3, 3, "beta")});
               },
               [](const Alphas& a) { return a[1]; },
               [](const Fields& f, const PartitionScheme& p) { return para(f[0], f[1], p); },
               ""});

  t.push_back({"resonant",
               {"f", "g"},
               {0.6, 0.7},
               0.2,
               [](const Alphas& a) {
                 return first_of({violated_msg(a[0] + a[1] > 0, "alpha+beta > 0", a[0] + a[1]),
                                  violated_msg(a[0] < 3, "alpha < 3", a[0]),
                                  violated_msg(a[1] < 3, "beta < 3", a[1])});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) { return resonant(f[0], f[1], p); },
               ""});

  t.push_back({"para_diff",
               {"a", "g"},
               {0.6, 0.6},
               0.2,
               [](const Alphas& a) {
                 return first_of({in_open(a[0], 0, 1, "alpha"), in_open(a[1], -3, 3, "nu")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) { return para_diff(f[0], f[1], p); },
               ""});

  t.push_back({"corrector_c",
               {"f", "g", "h"},
               {0.6, 0.8, -0.9},
               0.15,
               [](const Alphas& a) {
                 return first_of({in_open(a[0], 0, 1, "alpha"), in_open(a[1], -3, 3, "beta"),
                                  violated_msg(a[2] < 3, "gamma < 3", a[2]),
                                  violated_msg(a[0] + a[1] < 3, "alpha+beta < 3", a[0] + a[1]),
                                  violated_msg(a[1] + a[2] < 0, "beta+gamma < 0", a[1] + a[2]),
                                  in_open(sum(a), 0, 1, "alpha+beta+gamma")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return corrector_c(f[0], f[1], f[2], p, Flavor::modified);
               },
               ""});

  t.push_back({"commutator_d",
               {"f", "g", "h"},
               {0.4, 0.4, 0.4},
               0.2,
               [](const Alphas& a) -> Maybe {
                 if (a[0] > 0 && a[1] > 0 && a[2] > 0) return std::nullopt;
                 return first_of({in_open(a[0], -1, 0, "alpha (negative-range case)"),
                                  violated_msg(a[1] > 0, "beta > 0", a[1]),
                                  violated_msg(a[2] <= 0, "gamma <= 0", a[2]),
                                  violated_msg(sum(a) > 0, "alpha+beta+gamma > 0", sum(a))});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return commutator_d(f[0], f[1], f[2], p);
               },
               ""});

  t.push_back({"iterated_d_lower",
               {"a", "b", "g", "h"},
               {0.35, 0.35, 0.35, 0.35},
               0.25,
               [](const Alphas& a) -> Maybe {
                 if (a[0] > 0 && a[1] > 0 && a[2] > 0 && a[3] > 0) return std::nullopt;
                 return first_of({in_open(a[0], 0, 1, "alpha"),
                                  in_open(a[1], -1, 0, "beta (negative-range case)"),
                                  violated_msg(a[2] > 0, "gamma > 0", a[2]),
                                  violated_msg(a[3] < 0, "delta < 0", a[3]),
                                  violated_msg(a[1] + a[2] + a[3] > 0, "beta+gamma+delta > 0",
                                               a[1] + a[2] + a[3])});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return iterated_d_lower(f[0], f[1], f[2], f[3], p);
               },
               ""});

  t.push_back({"iterated_d_upper",
               {"a", "b", "g", "h"},
               {0.35, 0.35, 0.35, 0.35},
               0.25,
               [](const Alphas& a) -> Maybe {
                 for (size_t i = 0; i < a.size(); ++i)
                   if (!(a[i] > 0))
                     return "positive regularity exponents required (slot " +
                            std::to_string(i) + " = " + fmt(a[i]) + ")";
                 return std::nullopt;
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return iterated_d_upper(f[0], f[1], f[2], f[3], p);
               },
               ""});

  t.push_back({"corrector_lower4",
               {"a", "b", "g", "h"},
               {0.5, 0.35, 0.35, -0.72},
               0.2,
               [](const Alphas& a) {
                 return first_of(
                     {in_open(a[0], 0, 1, "alpha1"), in_open(a[1], -3, 3, "beta"),
                      in_open(a[2], 0, 1, "alpha2"), violated_msg(a[3] <= 3, "nu <= 3", a[3]),
                      violated_msg(a[0] + a[1] + a[2] < 3, "alpha1+beta+alpha2 < 3",
                                   a[0] + a[1] + a[2]),
                      violated_msg(a[1] + a[2] + a[3] < 0, "beta+alpha2+nu < 0",
                                   a[1] + a[2] + a[3]),
                      in_open(sum(a), 0, 1, "alpha1+beta+alpha2+nu")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return corrector_lower({f[0], f[1]}, f[2], f[3], p);
               },
               "passes tolerance; r2 sits on the 8-seed statistical floor (64-seed runs clear 0.98)"});

  t.push_back({"corrector_lower5",
               {"a", "b", "c", "g", "h"},
               {0.5, 0.4, 0.35, 0.35, -0.72},
               0.25,
               [](const Alphas& a) {
                 return first_of(
                     {in_open(a[0], 0, 1, "alpha1"), in_open(a[1], 0, 1, "alpha2"),
                      in_open(a[2], -3, 3, "beta"), in_open(a[3], 0, 1, "alpha3"),
                      violated_msg(a[4] <= 3, "nu <= 3", a[4]),
                      violated_msg(a[0] + a[1] + a[2] + a[3] < 3,
                                   "alpha1+alpha2+beta+alpha3 < 3", a[0] + a[1] + a[2] + a[3]),
                      violated_msg(a[2] + a[3] + a[4] < 0, "beta+alpha3+nu < 0",
                                   a[2] + a[3] + a[4]),
                      in_open(sum(a), 0, 1, "alpha1+alpha2+beta+alpha3+nu")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return corrector_lower({f[0], f[1], f[2]}, f[3], f[4], p);
               },
               "5-linear depth sits below the desk-scale resolution floor; see README"});

  auto upper4_hyp = [](const Alphas& a) {
    return first_of({in_open(a[0], 0, 1, "alpha"), in_open(a[1], 0, 1, "beta"),
                     violated_msg(a[0] + a[2] + a[3] < 0, "alpha+nu1+nu2 < 0",
                                  a[0] + a[2] + a[3]),
                     violated_msg(a[1] + a[2] + a[3] < 0, "beta+nu1+nu2 < 0",
                                  a[1] + a[2] + a[3]),
                     in_open(sum(a), 0, 1, "alpha+beta+nu1+nu2")});
  };

  t.push_back({"corrector_upper4",
               {"f", "a", "b", "h"},
               {0.45, 0.45, -0.26, -0.21},
               0.2,
               upper4_hyp,
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return corrector_upper(f[0], {f[1], f[2]}, f[3], p);
               },
               ""});

  t.push_back({"corrector_upper5",
               {"f", "a", "b", "c", "h"},
               {0.4, 0.4, 0.4, -0.22, -0.22},
               0.25,
               [](const Alphas& a) {
                 const double nu = a[3] + a[4];
                 return first_of({in_open(a[0], 0, 1, "alpha"), in_open(a[1], 0, 1, "beta"),
                                  in_open(a[2], 0, 1, "gamma"),
                                  violated_msg(a[0] + nu < 0, "alpha+nu1+nu2 < 0", a[0] + nu),
                                  violated_msg(a[1] + nu < 0, "beta+nu1+nu2 < 0", a[1] + nu),
                                  violated_msg(a[2] + nu < 0, "gamma+nu1+nu2 < 0", a[2] + nu),
                                  in_open(sum(a), 0, 1, "alpha+beta+gamma+nu1+nu2")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return corrector_upper(f[0], {f[1], f[2], f[3]}, f[4], p);
               },
               "5-linear depth sits below the desk-scale resolution floor; see README"});

  t.push_back({"corrector_mixed_pm",
               {"f", "a", "b", "h"},
               {0.45, 0.45, -0.3, -0.25},
               0.2,
               upper4_hyp,
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return mixed_corrector(f[0], f[1], f[2], f[3], p, MixedKind::plain_modified);
               },
               ""});

  t.push_back({"corrector_mixed_mp",
               {"f", "a", "b", "h"},
               {0.45, 0.45, -0.3, -0.25},
               0.2,
               upper4_hyp,
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return mixed_corrector(f[0], f[1], f[2], f[3], p, MixedKind::modified_plain);
               },
               ""});

  t.push_back({"swap_r",
               {"f", "a", "g"},
               {0.9, 0.5, 0.7},
               0.2,
               [](const Alphas& a) {
                 return first_of({violated_msg(a[0] > 0, "alpha_f > 0 (bounded modulator)", a[0]),
                                  in_open(a[1], 0, 1, "alpha"), in_open(a[2], -3, 3, "nu")});
               },
               [](const Alphas& a) { return a[1] + a[2]; },
               [](const Fields& f, const PartitionScheme& p) {
                 return swap_r(f[0], f[1], f[2], p);
               },
               ""});

  t.push_back({"swap_r_iter4",
               {"f", "a", "b", "g"},
               {0.9, 0.4, 0.4, -0.3},
               0.2,
               [](const Alphas& a) {
                 return first_of({violated_msg(a[0] > 0, "alpha_f > 0 (bounded modulator)", a[0]),
                                  in_open(a[1], 0, 1, "alpha"), in_open(a[2], 0, 1, "beta"),
                                  in_open(a[3], -3, 3, "nu")});
               },
               [](const Alphas& a) { return a[1] + a[2] + a[3]; },
               [](const Fields& f, const PartitionScheme& p) {
                 return swap_r_iter(f[0], {f[1], f[2]}, f[3], p);
               },
               ""});

  t.push_back({"swap_r_iter5",
               {"f", "a", "b", "c", "g"},
               {0.9, 0.3, 0.3, 0.3, -0.3},
               0.25,
               [](const Alphas& a) {
                 return first_of({violated_msg(a[0] > 0, "alpha_f > 0 (bounded modulator)", a[0]),
                                  in_open(a[1], 0, 1, "alpha"), in_open(a[2], 0, 1, "beta"),
                                  in_open(a[3], 0, 1, "gamma"), in_open(a[4], -3, 3, "nu")});
               },
               [](const Alphas& a) { return a[1] + a[2] + a[3] + a[4]; },
               [](const Fields& f, const PartitionScheme& p) {
                 return swap_r_iter(f[0], {f[1], f[2], f[3]}, f[4], p);
               },
               ""});

  t.push_back({"swap_r_refined",
               {"f", "a", "b", "g"},
               {0.4, 0.4, 0.4, -0.5},
               0.25,
               [](const Alphas& a) {
                 return first_of({in_open(a[0], 0, 1, "nu1"), in_open(a[1], 0, 1, "alpha"),
                                  in_open(a[2], 0, 1, "beta"), in_open(a[3], -3, 3, "nu")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return swap_r_refined(f[0], f[1], f[2], f[3], p);
               },
               "passes tolerance; r2 sits on the 8-seed statistical floor (64-seed runs clear 0.98)"});

  t.push_back({"triple_para_i",
               {"f", "a", "b", "g"},
               {0.9, 0.5, 0.5, 0.4},
               0.25,
               [](const Alphas& a) {
                 return first_of({violated_msg(a[0] > 0, "alpha_f > 0 (bounded modulator)", a[0]),
                                  in_open(a[1], 0, 1, "alpha"), in_open(a[2], 0, 1, "beta"),
                                  in_open(a[3], -3, 3, "nu")});
               },
               [](const Alphas& a) { return a[1] + a[2] + a[3]; },
               [](const Fields& f, const PartitionScheme& p) {
                 return triple_para_i(f[0], f[1], f[2], f[3], p);
               },
               ""});

  t.push_back({"cr4",
               {"f", "a", "b", "g"},
               {0.5, 0.4, 0.4, -0.95},
               0.2,
               [](const Alphas& a) {
                 return first_of(
                     {in_open(a[0], 0, 1, "alpha"), in_open(a[1], 0, 1, "beta1"),
                      in_open(a[2], 0, 1, "beta2"), violated_msg(a[3] < 0, "nu < 0", a[3]),
                      violated_msg(a[0] + a[1] + a[3] < 0, "alpha+beta1+nu < 0",
                                   a[0] + a[1] + a[3]),
                      violated_msg(a[0] + a[2] + a[3] < 0, "alpha+beta2+nu < 0",
                                   a[0] + a[2] + a[3]),
                      violated_msg(a[1] + a[2] + a[3] < 0, "beta1+beta2+nu < 0",
                                   a[1] + a[2] + a[3]),
                      in_open(sum(a), 0, 1, "alpha+beta1+beta2+nu")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return cr4(f[0], f[1], f[2], f[3], p);
               },
               "within tolerance; residual curvature keeps r2 below 0.98 at this grid size"});

  t.push_back({"cr5",
               {"u", "v", "a", "b", "g"},
               {0.5, 0.5, 0.4, 0.4, -1.45},
               0.25,
               [](const Alphas& a) {
                 const double bb = a[2] + a[3];
                 return first_of(
                     {in_open(a[0], 0, 1, "alpha1"), in_open(a[1], 0, 1, "alpha2"),
                      in_open(a[2], 0, 1, "beta1"), in_open(a[3], 0, 1, "beta2"),
                      violated_msg(a[4] < 0, "nu < 0", a[4]),
                      violated_msg(a[0] + bb + a[4] < 0, "alpha1+beta1+beta2+nu < 0",
                                   a[0] + bb + a[4]),
                      violated_msg(a[1] + bb + a[4] < 0, "alpha2+beta1+beta2+nu < 0",
                                   a[1] + bb + a[4]),
                      violated_msg(a[0] + a[1] + std::max(a[2], a[3]) + a[4] < 0,
                                   "alpha1+alpha2+max(beta1,beta2)+nu < 0",
                                   a[0] + a[1] + std::max(a[2], a[3]) + a[4]),
                      in_open(sum(a), 0, 1, "alpha1+alpha2+beta1+beta2+nu")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return cr5(f[0], f[1], f[2], f[3], f[4], p);
               },
               "5-linear depth sits below the desk-scale resolution floor; see README"});

  t.push_back({"t_commutator",
               {"u", "g", "f"},
               {-1.3, 0.8, -0.3},
               0.2,
               [](const Alphas& a) {
                 return first_of({in_open(a[1], 0, 1, "beta"),
                                  violated_msg(a[2] < 0, "gamma < 0", a[2]),
                                  in_open(sum(a), -3, 3, "(alpha+beta+gamma)")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return t_commutator(f[0], f[1], f[2], p);
               },
               ""});

  t.push_back({"t_iter4",
               {"u", "a", "b", "f"},
               {-1.3, 0.4, 0.4, -0.3},
               0.25,
               [](const Alphas& a) {
                 return first_of({in_open(a[1], 0, 1, "beta"), in_open(a[2], 0, 1, "gamma"),
                                  violated_msg(a[3] < 0, "nu < 0", a[3]),
                                  in_open(sum(a), -3, 3, "(alpha+beta+gamma+nu)")});
               },
               sum,
               [](const Fields& f, const PartitionScheme& p) {
                 return t_iter(f[0], {f[1], f[2]}, f[3], p);
               },
               ""});

  t.push_back({"d_corrector_hat",
               {"f", "g", "h"},
               {0.5, 0.3, 0.9},
               0.2,
               [](const Alphas& a) {
                 return first_of({in_open(a[0], 0, 1, "alpha"),
                                  violated_msg(a[0] + a[1] <= 1, "alpha+beta <= 1", a[0] + a[1]),
                                  violated_msg(a[0] + a[1] - 1 + a[2] > 0,
                                               "alpha+(beta-1)+gamma > 0", a[0] + a[1] - 1 + a[2])});
               },
               [](const Alphas& a) { return sum(a) - 1.0; },
               [](const Fields& f, const PartitionScheme& p) {
                 return d_corrector_hat(f[0], f[1], f[2], p);
               },
               "passes tolerance; r2 sits on the 8-seed statistical floor (64-seed runs clear 0.98)"});

  t.push_back({"d_corrector_hat_iter",
               {"f", "g", "u", "v"},
               {0.5, 0.3, 0.9, -0.2},
               0.25,
               [](const Alphas& a) {
                 return first_of(
                     {in_open(a[0], 0, 1, "alpha"), in_open(a[2], 0, 1, "gamma2"),
                      violated_msg(a[0] + a[1] <= 1, "alpha+beta <= 1", a[0] + a[1]),
                      violated_msg(a[0] + a[1] - 1 + a[2] + a[3] > 0,
                                   "alpha+(beta-1)+gamma1+gamma2 > 0",
                                   a[0] + a[1] - 1 + a[2] + a[3])});
               },
               [](const Alphas& a) { return sum(a) - 1.0; },
               [](const Fields& f, const PartitionScheme& p) {
                 return d_corrector_hat_iter(f[0], f[1], f[2], f[3], p);
               },
               "within tolerance at 64 seeds; curvature keeps r2 below 0.98 at this grid size"});

  return t;
}

}  // namespace

const std::vector<OperatorEntry>& operator_table() {
  static const std::vector<OperatorEntry> table = build_table();
  return table;
}

const OperatorEntry& find_operator(const std::string& name) {
  for (const auto& e : operator_table())
    if (e.name == name) return e;
  std::ostringstream os;
  os << "unknown operator '" << name << "'; registered:";
  for (const auto& e : operator_table()) os << ' ' << e.name;
  throw invalid_input(os.str());
}

OperatorReport verify_operator(const std::string& name, const std::vector<double>& alphas_in,
                               const VerifyOptions& opts) {
  const OperatorEntry& entry = find_operator(name);
  std::vector<double> alphas = alphas_in.empty() ? entry.canonical : alphas_in;
  if (alphas.size() != entry.slots.size())
    throw invalid_input(name + " expects " + std::to_string(entry.slots.size()) +
                        " exponents, got " + std::to_string(alphas.size()));
  if (auto v = entry.violated(alphas)) throw hypothesis_violation(*v);
  if (opts.seeds < 1) throw invalid_input("verify_operator: seeds >= 1 required");

  const PartitionScheme scheme = PartitionScheme::make(opts.grid, opts.partition);
  JWindow window = default_window(scheme.top());
  window.first = std::max(window.first, opts.window_lo);
  const int n_pts = window.second - window.first + 1;

  struct SeedResult {
    std::vector<double> sup;  // per window j
    double scale = 0;
  };
  auto run_seed = [&](int s) {
    Fields fields;
    fields.reserve(alphas.size());
    for (size_t slot = 0; slot < alphas.size(); ++slot) {
      NoiseSpec ns{alphas[slot],
                   rng::mix64(opts.base_seed, std::uint64_t(s) * 64 + slot)};
      fields.push_back(sample_field(ns, opts.grid));
    }
    Field out = entry.apply(fields, scheme);
    auto d = decompose(out, scheme);
    SeedResult r;
    r.scale = out.sup_norm();
    r.sup.reserve(static_cast<size_t>(n_pts));
    for (int j = window.first; j <= window.second; ++j) r.sup.push_back(d.sup_norm(j));
    return r;
  };

  std::vector<SeedResult> results(static_cast<size_t>(opts.seeds));
  if (opts.threads > 1) {
    std::vector<std::future<SeedResult>> futs;
    futs.reserve(results.size());
    for (int s = 0; s < opts.seeds; ++s)
      futs.push_back(std::async(std::launch::async, run_seed, s));
    for (int s = 0; s < opts.seeds; ++s) results[static_cast<size_t>(s)] = futs[static_cast<size_t>(s)].get();
  } else {
    for (int s = 0; s < opts.seeds; ++s) results[static_cast<size_t>(s)] = run_seed(s);
  }

  // Keep only blocks above the numerical floor for every seed.
  std::vector<int> js;
  std::vector<double> mean_log2;
  std::vector<int> excluded;
  for (int idx = 0; idx < n_pts; ++idx) {
    bool usable = true;
    double acc = 0;
    for (const auto& r : results) {
      if (r.sup[static_cast<size_t>(idx)] <= 1e-13 * r.scale) {
        usable = false;
        break;
      }
      acc += std::log2(r.sup[static_cast<size_t>(idx)]);
    }
    if (usable) {
      js.push_back(window.first + idx);
      mean_log2.push_back(acc / double(opts.seeds));
    } else {
      excluded.push_back(window.first + idx);
    }
  }
  if (js.size() < 4)
    throw insufficient_data("verify_operator: fewer than 4 usable blocks for " + name);

  OperatorReport rep;
  rep.name = name;
  rep.input_alphas = alphas;
  rep.theory_exponent = entry.theory(alphas);
  rep.tolerance = entry.tolerance;
  rep.fit = fit_exponent(js, mean_log2);
  rep.fit.excluded_blocks = excluded;
  rep.seeds = opts.seeds;
  rep.n = opts.grid.n;
  for (const auto& r : results) {
    std::vector<int> sj;
    std::vector<double> sy;
    for (int idx = 0; idx < n_pts; ++idx) {
      const double v = r.sup[static_cast<size_t>(idx)];
      if (v > 1e-13 * r.scale) {
        sj.push_back(window.first + idx);
        sy.push_back(std::log2(v));
      }
    }
    if (sj.size() >= 4) rep.per_seed_alpha.push_back(fit_exponent(sj, sy).estimated_alpha);
  }
  rep.pass = std::abs(rep.fit.estimated_alpha - rep.theory_exponent) <= rep.tolerance &&
             rep.fit.r_squared >= 0.98;
  return rep;
}

}  // namespace paracalc
