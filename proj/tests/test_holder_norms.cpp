#include "doctest.h"
#include "oracles.hpp"
#include "paracalc/holder.hpp"
#include "paracalc/noise.hpp"

using namespace paracalc;

TEST_CASE("besov norm basics") {
  TorusGrid g(1, 256);
  auto p = PartitionScheme::sharp(g);

  CHECK(besov_norm(Field::zero(g), 0.7, p).norm == 0.0);

  Field seven = Field::constant(g, 7.0);
  CHECK(std::abs(besov_norm(seven, 1.2, p).norm - 7.0) <= 1e-12);

  // W_{1/2} at alpha = 1/2: every windowed term is 1 under the sharp partition
  Field w = oracles::weierstrass(g, 0.5);
  auto est = besov_norm(w, 0.5, p);
  CHECK(std::abs(est.norm - 1.0) <= 1e-10);
  for (int j = 1; j <= p.top(); ++j)
    CHECK(std::abs(est.per_block[static_cast<size_t>(j + 1)] - 1.0) <= 1e-10);

  CHECK_THROWS_AS(besov_norm(w, 3.0, p), invalid_input);
  CHECK_THROWS_AS(besov_norm(w, -3.0, p), invalid_input);
}

TEST_CASE("besov norm scaling and triangle inequality") {
  TorusGrid g(1, 256);
  auto p = PartitionScheme::smooth(g);
  Field f = sample_field({0.5, 7}, g);
  Field h = sample_field({0.8, 9}, g);

  const double nf = besov_norm(f, 0.5, p).norm;
  CHECK(besov_norm(2.0 * f, 0.5, p).norm == 2.0 * nf);  // power-of-two scaling is exact

  const double lhs = besov_norm(f + h, 0.5, p).norm;
  const double rhs = nf + besov_norm(h, 0.5, p).norm;
  CHECK(lhs <= rhs * (1 + 1e-12));
}

TEST_CASE("exponent estimation: Weierstrass family within 0.02") {
  TorusGrid g(1, 1 << 12);
  auto p = PartitionScheme::sharp(g);
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    auto fit = estimate_exponent(oracles::weierstrass(g, alpha), p);
    CHECK(std::abs(fit.estimated_alpha - alpha) <= 0.02);
    CHECK(fit.r_squared >= 0.999);
  }
}

TEST_CASE("exponent estimation: Gaussian samples, 8-seed mean within 0.1") {
  TorusGrid g(1, 1 << 12);
  auto p = PartitionScheme::smooth(g);
  double acc = 0;
  for (int s = 0; s < 8; ++s)
    acc += estimate_exponent(sample_field({0.5, 100 + std::uint64_t(s)}, g), p).estimated_alpha;
  CHECK(std::abs(acc / 8 - 0.5) <= 0.1);
}

TEST_CASE("degenerate inputs") {
  TorusGrid g(1, 1 << 12);
  auto p = PartitionScheme::sharp(g);
  Field single = oracles::cosine_mode(g, 32);
  CHECK_THROWS_AS(estimate_exponent(single, p), insufficient_data);

  CHECK_THROWS_AS(estimate_exponent(single, {3, 4}, p), invalid_input);   // short window
  CHECK_THROWS_AS(estimate_exponent(single, {0, 9}, p), invalid_input);   // below 2
  CHECK_THROWS_AS(estimate_exponent(single, {3, 100}, p), invalid_input); // above J-2
}

TEST_CASE("time sliced norm") {
  TorusGrid g(1, 256);
  auto p = PartitionScheme::smooth(g);
  TimeGrid t = make_time_grid(1.0, 8);

  TimeField zero(g, t);
  CHECK(time_sliced_norm(zero, 0.5, p) == 0.0);

  Field w = oracles::weierstrass(g, 0.5);
  TimeField constant_in_time(g, t);
  for (auto& s : constant_in_time.slices) s = w;
  CHECK(std::abs(time_sliced_norm(constant_in_time, 0.5, p) -
                 besov_norm(w, 0.5, p).norm) <= 1e-12);

  // heat flow damps every block, so the sup over time sits at tau = 0
  TimeField flow(g, t);
  for (size_t i = 0; i < t.size(); ++i) flow.slices[i] = heat_propagate(w, t[i]);
  CHECK(std::abs(time_sliced_norm(flow, 0.5, p) - besov_norm(w, 0.5, p).norm) <= 1e-12);

  TimeField empty;
  CHECK_THROWS_AS(time_sliced_norm(empty, 0.5, p), invalid_input);
}
