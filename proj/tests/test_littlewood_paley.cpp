#include "doctest.h"
#include "oracles.hpp"
#include "paracalc/holder.hpp"
#include "paracalc/noise.hpp"

#include <sstream>

using namespace paracalc;

TEST_CASE("partition of unity is exact for both kinds and dims") {
  for (int dim : {1, 2}) {
    const int n = dim == 1 ? 256 : 32;
    TorusGrid g(dim, n);
    for (auto kind : {PartitionKind::smooth, PartitionKind::sharp}) {
      auto p = PartitionScheme::make(g, kind);  // construction verifies to 1e-14
      Array sum = Array::Zero(g.size());
      for (int j = -1; j <= p.top(); ++j) sum += p.block_symbol(j);
      CHECK((sum - 1.0).abs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("sharp partition: single mode lands in its block") {
  TorusGrid g(1, 256);
  auto p = PartitionScheme::sharp(g);
  Field f = oracles::cosine_mode(g, 32);  // 2^5
  CHECK((p.block(f, 5) - f).sup_norm() <= 1e-12);
  for (int j = -1; j <= p.top(); ++j) {
    if (j == 5) continue;
    CHECK(p.block(f, j).sup_norm() <= 1e-12);
  }
}

TEST_CASE("blocks of a constant vanish for j >= 0 with exact zero mean") {
  TorusGrid g(1, 64);
  for (auto kind : {PartitionKind::smooth, PartitionKind::sharp}) {
    auto p = PartitionScheme::make(g, kind);
    Field c = Field::constant(g, 3.0);
    for (int j = 0; j <= p.top(); ++j) {
      Field b = p.block(c, j);
      CHECK(b.sup_norm() <= 1e-12);
      // the zero-mode symbol vanishes identically, so the spectral mean is 0
      CHECK(std::abs(b.spectrum()[0]) == 0.0);
    }
    CHECK(std::abs(p.block(c, -1).mean() - 3.0) <= 1e-13);
  }
}

TEST_CASE("null mean of high blocks on a random field") {
  TorusGrid g(1, 128);
  auto p = PartitionScheme::smooth(g);
  Field f = sample_field({0.4, 17}, g) + Field::constant(g, 1.0);
  for (int j = 0; j <= p.top(); ++j)
    CHECK(std::abs(p.block(f, j).mean()) <= 1e-13 * std::max(1.0, f.sup_norm()));
}

TEST_CASE("Weierstrass block sup-norms are exact under the sharp partition") {
  TorusGrid g(1, 1 << 10);
  auto p = PartitionScheme::sharp(g);
  const double alpha = 0.5;
  Field w = oracles::weierstrass(g, alpha);
  for (int j = 1; j <= p.top(); ++j) {
    const double expect = std::pow(2.0, -j * alpha);
    CHECK(std::abs(p.block(w, j).sup_norm() - expect) <= 1e-10);
  }
  CHECK(p.block(w, -1).sup_norm() <= 1e-12);
}

TEST_CASE("partial sums") {
  TorusGrid g(1, 256);
  auto p = PartitionScheme::smooth(g);
  Field f = sample_field({0.6, 23}, g);
  CHECK((p.partial_sum(f, p.top()) - f).sup_norm() <= 1e-10 * f.sup_norm());

  Field c = Field::constant(g, 2.0);
  CHECK((p.partial_sum(c, -1) - c).sup_norm() <= 1e-12);

  auto ps = PartitionScheme::sharp(g);
  Field w = oracles::weierstrass(g, 0.5);
  for (int j = 2; j <= ps.top(); ++j) {
    double bound = 0;
    for (int i = 1; i <= j; ++i) bound += std::pow(2.0, -0.5 * i);
    CHECK(ps.partial_sum(w, j).sup_norm() <= bound + 1e-10);
  }
}

TEST_CASE("decompose/reconstruct roundtrip and errors") {
  TorusGrid g(1, 256);
  for (auto kind : {PartitionKind::smooth, PartitionKind::sharp}) {
    auto p = PartitionScheme::make(g, kind);
    Field f = sample_field({-0.5, 31}, g);
    auto d = decompose(f, p);
    CHECK((reconstruct(d) - f).sup_norm() <= 1e-10 * f.sup_norm());

    Field z = Field::zero(g);
    auto dz = decompose(z, p);
    for (double s : dz.block_sup_norms) CHECK(s == 0.0);
  }

  auto p = PartitionScheme::smooth(g);
  Field f = sample_field({0.5, 3}, g);
  auto d = decompose(f, p);
  d.blocks[2] = Field::zero(TorusGrid(1, 128));  // foreign grid
  CHECK_THROWS_AS(reconstruct(d), grid_mismatch);
  CHECK_THROWS_AS(p.block(f, p.top() + 1), invalid_input);
  CHECK_THROWS_AS(p.block(f, -2), invalid_input);
}

TEST_CASE("disjoint support: sharp at distance 1, smooth at distance 2") {
  TorusGrid g(1, 256);
  Field f = sample_field({0.3, 41}, g);
  auto sharp = PartitionScheme::sharp(g);
  for (int i = 0; i <= sharp.top(); ++i)
    for (int j = -1; j <= sharp.top(); ++j)
      if (std::abs(i - j) >= 1)
        CHECK(sharp.block(sharp.block(f, i), j).sup_norm() <= 1e-12 * f.sup_norm());

  auto smooth = PartitionScheme::smooth(g);
  for (int i = 0; i <= smooth.top(); ++i)
    for (int j = -1; j <= smooth.top(); ++j)
      if (std::abs(i - j) >= 2)
        CHECK(smooth.block(smooth.block(f, i), j).sup_norm() <= 1e-12 * f.sup_norm());
}

TEST_CASE("Weierstrass log2 slope over the default window") {
  TorusGrid g(1, 1 << 12);
  auto p = PartitionScheme::sharp(g);
  Field w = oracles::weierstrass(g, 0.5);
  auto fit = estimate_exponent(w, {3, 9}, p);
  CHECK(std::abs(fit.slope + 0.5) <= 0.02);
}

TEST_CASE("csv export") {
  TorusGrid g(1, 64);
  auto p = PartitionScheme::smooth(g);
  auto d = decompose(oracles::weierstrass(g, 0.5), p);
  std::ostringstream os;
  export_block_norms_csv(d, os);
  CHECK(os.str().rfind("j,sup_norm,log2_sup_norm\n", 0) == 0);
  size_t lines = 0;
  for (char c : os.str())
    if (c == '\n') ++lines;
  CHECK(lines == static_cast<size_t>(p.top() + 3));  // header + J+2 blocks
}
