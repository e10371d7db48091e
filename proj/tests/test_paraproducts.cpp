#include "doctest.h"
#include "oracles.hpp"
#include "paracalc/duhamel.hpp"
#include "paracalc/holder.hpp"
#include "paracalc/noise.hpp"

using namespace paracalc;

namespace {
PartitionScheme smooth256() { return PartitionScheme::smooth(TorusGrid(1, 256)); }
}  // namespace

TEST_CASE("para annihilates constant carriers; constant modulators reproduce the high part") {
  TorusGrid g(1, 256);
  auto p = smooth256();
  Field f = sample_field({0.5, 51}, g);
  Field c = Field::constant(g, 4.0);

  CHECK(para(f, c, p).sup_norm() <= 1e-12);

  Field lhs = para(c, f, p);
  Field rhs = 4.0 * (f - p.low_part(f));
  CHECK((lhs - rhs).sup_norm() <= 1e-11 * f.sup_norm());
}

TEST_CASE("resonant basics") {
  TorusGrid g(1, 256);
  auto p = smooth256();
  Field a = Field::constant(g, 3.0), b = Field::constant(g, -2.0);
  CHECK((resonant(a, b, p) - Field::constant(g, -6.0)).sup_norm() <= 1e-12);

  auto ps = PartitionScheme::sharp(g);
  Field hi = oracles::cosine_mode(g, 32);
  CHECK(resonant(hi, Field::constant(g, 1.0), ps).sup_norm() <= 1e-12);

  Field f = sample_field({0.6, 5}, g), h = sample_field({0.7, 6}, g);
  CHECK((resonant(f, h, p) - resonant(h, f, p)).sup_norm() <= 1e-12 * f.sup_norm() * h.sup_norm());
}

TEST_CASE("full split reproduces the dealiased product") {
  TorusGrid g(1, 256);
  auto p = smooth256();
  Field w = oracles::weierstrass(g, 0.5);
  auto s = full_split(w, w, p);
  Field prod = dealiased_product(w, w);
  CHECK((s.para_fg + s.para_gf + s.resonant - prod).sup_norm() <= 1e-10 * prod.sup_norm());

  // Pi_g f + Pi(f,g) with g = 1 is the reconstruction identity for f
  Field one = Field::constant(g, 1.0);
  Field f = sample_field({0.4, 77}, g);
  auto su = full_split(f, one, p);
  CHECK((su.para_gf + su.resonant - f).sup_norm() <= 1e-10 * f.sup_norm());

  // 50 random pairs per run, relative tolerance 1e-10
  for (int k = 0; k < 50; ++k) {
    Field a = sample_field({0.3, 1000 + std::uint64_t(k)}, g);
    Field b = sample_field({-0.6, 2000 + std::uint64_t(k)}, g);
    auto sp = full_split(a, b, p);
    Field pr = dealiased_product(a, b);
    CHECK((sp.para_fg + sp.para_gf + sp.resonant - pr).sup_norm() <= 1e-10 * pr.sup_norm());
  }
}

TEST_CASE("split equals the brute-force pair sum at n = 16") {
  TorusGrid g(1, 16);
  auto p = PartitionScheme::smooth(g);
  Field a = sample_field({0.5, 8}, g);
  Field b = sample_field({0.2, 9}, g);
  auto fast = full_split(a, b, p);
  auto brute = oracles::brute_force_split(a, b, p);
  const double scale = std::max(1.0, a.sup_norm() * b.sup_norm());
  CHECK((fast.para_fg - brute.para_fg).sup_norm() <= 1e-12 * scale);
  CHECK((fast.para_gf - brute.para_gf).sup_norm() <= 1e-12 * scale);
  CHECK((fast.resonant - brute.resonant).sup_norm() <= 1e-12 * scale);
}

TEST_CASE("bilinearity to FP precision") {
  TorusGrid g(1, 256);
  auto p = smooth256();
  Field a = sample_field({0.5, 11}, g), b = sample_field({0.6, 12}, g),
        c = sample_field({0.7, 13}, g);
  const double scale = a.sup_norm() * (b.sup_norm() + c.sup_norm());
  CHECK((para(a, b + c, p) - para(a, b, p) - para(a, c, p)).sup_norm() <= 1e-12 * scale);
  CHECK((resonant(a + b, c, p) - resonant(a, c, p) - resonant(b, c, p)).sup_norm() <=
        1e-12 * (a.sup_norm() + b.sup_norm()) * c.sup_norm());
  CHECK((modified_para(a, b + c, p) - modified_para(a, b, p) - modified_para(a, c, p))
            .sup_norm() <= 1e-11 * scale);
}

TEST_CASE("modified para: constants and the single-annulus identity") {
  TorusGrid g(1, 256);
  auto p = smooth256();
  Field f = sample_field({0.5, 14}, g);
  CHECK(modified_para(f, Field::constant(g, 2.0), p).sup_norm() <= 1e-12);

  Field out = modified_para(f, sample_field({0.7, 15}, g), p);
  CHECK(std::abs(out.mean()) <= 1e-13 * std::max(1.0, out.sup_norm()));

  // constant modulator: Pi~_c and Pi_c are the same multiplier, exactly
  Field c = Field::constant(g, 1.5);
  Field w = sample_field({0.7, 16}, g);
  CHECK((modified_para(c, w, p) - para(c, w, p)).sup_norm() <= 1e-11 * w.sup_norm());

  // sharp partition, low-frequency modulator, single high mode: the inverse
  // Laplacian commutes through the single annulus, so Pi~ = Pi exactly
  auto ps = PartitionScheme::sharp(g);
  Field low = oracles::cosine_mode(g, 2, 0.7);
  Field mode = oracles::cosine_mode(g, 32);
  CHECK((modified_para(low, mode, ps) - para(low, mode, ps)).sup_norm() <= 1e-11);
}

TEST_CASE("para_diff trivial kills") {
  TorusGrid g(1, 256);
  auto p = smooth256();
  Field a = sample_field({0.6, 17}, g);
  Field c = Field::constant(g, 3.0);
  CHECK(para_diff(c, a, p).sup_norm() <= 1e-11 * a.sup_norm());
  CHECK(para_diff(a, c, p).sup_norm() <= 1e-12);
}

TEST_CASE("parabolic modified paraproduct") {
  TorusGrid g(1, 128);
  auto p = PartitionScheme::smooth(g);
  TimeGrid t = make_time_grid(0.5, 32);

  // v = 0 -> 0
  TimeField zero_mod(g, t);
  Field y = sample_field({-0.5, 18}, g);
  CHECK(modified_para_parabolic(zero_mod, y, p).sup_norm() == 0.0);

  // v = 1, mean-zero Y: closed form L^{-1}(I - e^{-tau L}) Pi_1 Y, and the
  // exponential-trapezoid quadrature is exact for time-constant sources
  TimeField ones(g, t);
  for (auto& s : ones.slices) s = Field::constant(g, 1.0);
  TimeField got = modified_para_parabolic(ones, y, p);
  CHECK(got.slices[0].sup_norm() == 0.0);
  Field pi1y = para(Field::constant(g, 1.0), y, p);
  TimeField want = lift_static(pi1y, t);
  CHECK(sup_norm_difference(got, want) <= 1e-11 * std::max(1.0, want.sup_norm()));

  // intertwining: L(Pi~_v Z) = Pi_v Y up to the discrete time derivative
  TimeField v(g, t);
  for (size_t i = 0; i < t.size(); ++i)
    v.slices[i] = heat_propagate(sample_field({0.8, 19}, g), 0.01 + t[i]);
  Field ysm = heat_propagate(sample_field({0.5, 20}, g), 1e-2);
  TimeField w = modified_para_parabolic(v, ysm, p);
  const size_t i = t.size() / 2;
  const double dt = t[i + 1] - t[i];
  Field ddt(g, (w.slices[i + 1].values() - w.slices[i].values()) / dt);
  Field mid = 0.5 * (w.slices[i] + w.slices[i + 1]);
  Field lhs = ddt + laplacian(mid);
  Field rhs = 0.5 * (para(v.slices[i], ysm, p) + para(v.slices[i + 1], ysm, p));
  CHECK((lhs - rhs).sup_norm() <= 5.0 * dt * besov_norm(ysm, 0.0, p).norm *
                                      laplacian(ysm).sup_norm());

  TimeGrid bad = {0.0, 0.2, 0.1};
  CHECK_THROWS_AS(validate_time_grid(bad), invalid_input);
}

TEST_CASE("semigroup backend: constants and the Calderon self-test") {
  TorusGrid g(1, 128);
  BackendConfig cfg;
  Field f = sample_field({0.5, 21}, g);

  // Q annihilates constant carriers exactly
  CHECK(semigroup_para(f, Field::constant(g, 2.0), cfg).sup_norm() <= 1e-10);

  // constant modulator: quadrature path vs the same symbol applied directly
  Field gcar = sample_field({0.7, 22}, g);
  Field quad = semigroup_para(Field::constant(g, 1.0), gcar, cfg);
  Field direct = apply_multiplier(gcar, semigroup_identity_multiplier(cfg));
  CHECK((quad - direct).sup_norm() <= 1e-10 * std::max(1.0, direct.sup_norm()));

  // Calderon: the quadrature reproduces the carrier minus its P_1-smooth
  // part; for b = 2 the exact composite symbol is P(3, 2 lam)
  Multiplier exact{[](const std::array<int, 2>& k) {
                     const double lam = double(k[0]) * k[0] + double(k[1]) * k[1];
                     if (lam == 0.0) return cplx(0.0, 0.0);
                     const double x = 2.0 * lam;
                     return cplx(1.0 - std::exp(-x) * (1.0 + x + 0.5 * x * x), 0.0);
                   },
                   "P(3,2lam)"};
  Field want = apply_multiplier(gcar, exact);
  CHECK((quad - want).sup_norm() <= 1e-3 * want.sup_norm());

  BackendConfig badb;
  badb.b = 1;
  CHECK_THROWS_AS(semigroup_para(f, gcar, badb), invalid_input);
  BackendConfig badl;
  badl.levels = 4;
  CHECK_THROWS_AS(semigroup_para(f, gcar, badl), invalid_input);
}

TEST_CASE("cross-backend exponent agreement") {
  TorusGrid g(1, 1 << 11);
  auto p = PartitionScheme::smooth(g);
  BackendConfig cfg;
  double acc_lp = 0, acc_sg = 0;
  const int seeds = 4;
  for (int s = 0; s < seeds; ++s) {
    Field f = sample_field({0.5, 3000 + std::uint64_t(s)}, g);
    Field car = sample_field({0.7, 4000 + std::uint64_t(s)}, g);
    acc_lp += estimate_exponent(para(f, car, p), p).estimated_alpha;
    acc_sg += estimate_exponent(semigroup_para(f, car, cfg), p).estimated_alpha;
  }
  CHECK(std::abs(acc_lp / seeds - acc_sg / seeds) <= 0.1);
}

TEST_CASE("grid mismatch is rejected") {
  TorusGrid g(1, 256), g2(1, 128);
  auto p = smooth256();
  Field a = sample_field({0.5, 1}, g);
  Field b = sample_field({0.5, 2}, g2);
  CHECK_THROWS_AS(para(a, b, p), grid_mismatch);
  CHECK_THROWS_AS(resonant(a, b, p), grid_mismatch);
  CHECK_THROWS_AS(dealiased_product(a, b), grid_mismatch);
}
