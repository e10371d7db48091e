#include "doctest.h"
#include "oracles.hpp"
#include "paracalc/fourier.hpp"
#include "paracalc/io.hpp"
#include "paracalc/noise.hpp"

#include <filesystem>
#include <fstream>

using namespace paracalc;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(TorusGrid(3, 64), unsupported_dimension);
  CHECK_THROWS_AS(TorusGrid(1, 48), invalid_input);
  CHECK_THROWS_AS(TorusGrid(1, 8), invalid_input);
  TorusGrid g(2, 32);
  CHECK(g.size() == 1024);
  CHECK(g.top_block() == 4);
  CHECK(g.axis_wavenumber(16) == -16);
  CHECK(g.conjugate_index(5) == 27);
  CHECK(g.conjugate_index(0) == 0);
}

TEST_CASE("transform roundtrip: constant and single mode") {
  TorusGrid g(1, 64);
  Field one = Field::constant(g, 1.0);
  CHECK(oracles::rel_err(transform_roundtrip(one), one) <= 1e-12);

  Field c3 = oracles::cosine_mode(g, 3);
  CHECK((transform_roundtrip(c3) - c3).sup_norm() <= 1e-12);

  // spectrum(0) is the mean under the 1/n normalization
  CHECK(std::abs(one.spectrum()[0] - cplx(1.0, 0.0)) <= 1e-14);
  CHECK(std::abs(c3.spectrum()[3] - cplx(0.5, 0.0)) <= 1e-13);
}

TEST_CASE("transform roundtrip: random field vs direct DFT oracle") {
  TorusGrid small(1, 16);
  Field f = sample_field({0.3, 11}, small);
  const CArray direct = oracles::direct_dft_1d(f.values());
  const CArray fast = f.spectrum();
  double err = 0;
  for (int k = 0; k < 16; ++k) err = std::max(err, std::abs(direct[k] - fast[k]));
  CHECK(err <= 1e-12 * f.sup_norm());

  TorusGrid g(1, 256);
  Field r = sample_field({0.2, 5}, g);
  CHECK((transform_roundtrip(r) - r).sup_norm() <= 1e-10 * r.sup_norm());

  Field bad(g, Array::Constant(g.size(), 1.0));
  bad.mutable_values()[0] = INFINITY;
  CHECK_THROWS_AS(transform_roundtrip(bad), invalid_input);
}

TEST_CASE("2d roundtrip") {
  TorusGrid g(2, 32);
  Field f = sample_field({0.4, 3}, g);
  CHECK((transform_roundtrip(f) - f).sup_norm() <= 1e-10 * f.sup_norm());
}

TEST_CASE("apply_multiplier: identity, Laplacian eigenfunction, derivative") {
  TorusGrid g(1, 64);
  Field f = sample_field({0.5, 2}, g);
  CHECK(oracles::rel_err(apply_multiplier(f, identity_multiplier()), f) <= 1e-13);

  Field c2 = oracles::cosine_mode(g, 2);
  Field lc2 = laplacian(c2);
  CHECK((lc2 - 4.0 * c2).sup_norm() <= 1e-11);

  TorusGrid g32(1, 32);
  Field r = sample_field({1.2, 9}, g32);
  Field d_spec = derivative(r);
  Field d_fd = oracles::centered_derivative(r);
  const double h = 2.0 * M_PI / 32;
  // centered differences are O(h^2); compare against a generous multiple
  CHECK((d_spec - d_fd).sup_norm() <=
        10.0 * h * h * laplacian(derivative(r)).sup_norm() + 1e-8);

  Multiplier nan_sym{[](const std::array<int, 2>& k) {
                       return k[0] == 0 ? cplx(NAN, 0) : cplx(1, 0);
                     },
                     "bad"};
  CHECK_THROWS_AS(apply_multiplier(f, nan_sym), invalid_input);
}

TEST_CASE("heat propagation") {
  TorusGrid g(1, 64);
  Field f = sample_field({0.5, 4}, g);
  CHECK(oracles::rel_err(heat_propagate(f, 0.0), f) == 0.0);

  Field c1 = oracles::cosine_mode(g, 1);
  CHECK((heat_propagate(c1, 1.0) - std::exp(-1.0) * c1).sup_norm() <= 1e-12);

  // semigroup property
  Field two_step = heat_propagate(heat_propagate(f, 0.3), 0.45);
  Field one_step = heat_propagate(f, 0.75);
  CHECK((two_step - one_step).sup_norm() <= 1e-12 * f.sup_norm());

  // contraction and exact mean preservation
  CHECK(heat_propagate(f, 0.1).sup_norm() <= f.sup_norm() + 1e-12);
  Field shifted = f + Field::constant(g, 2.5);
  CHECK(std::abs(heat_propagate(shifted, 0.2).mean() - shifted.mean()) <=
        1e-13 * std::abs(shifted.mean()));

  CHECK_THROWS_AS(heat_propagate(f, -1e-9), invalid_input);
}

TEST_CASE("inverse laplacian") {
  TorusGrid g(1, 64);
  Field c2 = oracles::cosine_mode(g, 2);
  CHECK((inverse_laplacian(c2) - 0.25 * c2).sup_norm() <= 1e-12);

  Field five = Field::constant(g, 5.0);
  CHECK(inverse_laplacian(five).sup_norm() <= 1e-13);

  Field f = sample_field({0.4, 8}, g);  // mean-zero by construction
  CHECK((laplacian(inverse_laplacian(f)) - f).sup_norm() <= 1e-10 * f.sup_norm());
}

TEST_CASE("Parseval under the 1/n normalization") {
  TorusGrid g(1, 128);
  Field f = sample_field({0.7, 13}, g);
  const double phys = f.values().square().sum() / double(g.size());
  const double spec = f.spectrum().abs2().sum();
  CHECK(std::abs(phys - spec) <= 1e-10 * std::abs(phys));
}

TEST_CASE("realness under even and derivative symbols") {
  TorusGrid g(1, 64);
  Field f = sample_field({0.5, 21}, g);
  for (const Multiplier& m :
       {heat_multiplier(0.37), laplacian_multiplier(), derivative_multiplier(0, g.n)}) {
    CArray out(g.size());
    for (std::int64_t i = 0; i < g.size(); ++i) out[i] = m.symbol(g.wavevector(i)) * f.spectrum()[i];
    CHECK(fourier::imaginary_residue(g, out) <= 1e-12 * std::max(1.0, f.sup_norm()));
  }
}

TEST_CASE("dealiased product vs direct product of band-limited fields") {
  // products of fields supported below n/4 are alias-free on the original
  // grid, so the dealiased product must equal the plain pointwise product
  TorusGrid g(1, 64);
  Field a = oracles::cosine_mode(g, 3);
  Field b = oracles::cosine_mode(g, 7);
  Field direct(g, a.values() * b.values());
  CHECK((dealiased_product(a, b) - direct).sup_norm() <= 1e-12);

  // aliasing case: mode 40 + mode 40 -> mode 80 wraps to 16 on the coarse
  // grid; dealiasing must kill it, not alias it
  Field hi = oracles::cosine_mode(g, 40);
  Field prod = dealiased_product(hi, hi);
  CHECK(std::abs(prod.spectrum()[16]) <= 1e-13);
  CHECK(std::abs(prod.spectrum()[0] - 0.5) <= 1e-13);  // cos^2 mean
}

TEST_CASE("PCF1 save/load") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "paracalc_io_test";
  fs::create_directories(dir);
  TorusGrid g(2, 16);
  Field f = sample_field({0.5, 99}, g);
  save_pcf1(f, dir / "f.pcf1");
  Field back = load_pcf1(dir / "f.pcf1");
  CHECK(back.grid() == f.grid());
  CHECK((back - f).sup_norm() == 0.0);

  std::ofstream bad(dir / "bad.pcf1", std::ios::binary);
  bad << "NOTMAGIC00000000";
  bad.close();
  CHECK_THROWS_AS(load_pcf1(dir / "bad.pcf1"), io_error);
  fs::remove_all(dir);
}
