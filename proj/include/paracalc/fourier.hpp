#pragma once

#include <functional>
#include <string>

#include "paracalc/field.hpp"

namespace paracalc {

/// Fourier multiplier: a bounded symbol evaluated at integer wavevectors.
/// Real-even symbols (and odd imaginary ones with the Nyquist zeroed)
/// preserve realness of fields.
struct Multiplier {
  std::function<cplx(const std::array<int, 2>&)> symbol;
  std::string label;
};

namespace fourier {

/// Unnormalized c2c transforms in FFT layout (row-major for dim 2).
CArray forward_raw(const TorusGrid& g, const CArray& values);
CArray inverse_raw(const TorusGrid& g, const CArray& spectrum);

/// Forward transform of a real field, normalized by 1/n^dim.
CArray forward(const TorusGrid& g, const Array& values);

/// Inverse of `forward`; returns the real part.
Array inverse(const TorusGrid& g, const CArray& spectrum);

/// Max |Im| of the inverse transform; realness diagnostic.
double imaginary_residue(const TorusGrid& g, const CArray& spectrum);

}  // namespace fourier

/// forward then inverse; self-test op. Rejects non-finite input.
Field transform_roundtrip(const Field& f);

/// Apply a multiplier on the spectrum side. Errors if the symbol is
/// non-finite at any grid wavenumber.
Field apply_multiplier(const Field& f, const Multiplier& m);

/// Heat semigroup e^{-t|k|^2}, t >= 0. Preserves the mean exactly.
Field heat_propagate(const Field& f, double t);

/// L = -Laplacian as a multiplier, |k|^2.
Field laplacian(const Field& f);

/// Zero mode goes to 0, every other mode is scaled by 1/|k|^2, so
/// laplacian(inverse_laplacian(f)) = f - mean(f).
Field inverse_laplacian(const Field& f);

/// Spatial derivative along axis (i*k symbol, Nyquist zeroed). 0-based axis.
Field derivative(const Field& f, int axis = 0);

/// Pointwise product computed on a 2x zero-padded grid and truncated back;
/// the padded-grid Nyquist bookkeeping keeps real fields real.
Field dealiased_product(const Field& a, const Field& b);

Multiplier heat_multiplier(double t);
Multiplier laplacian_multiplier();
Multiplier inverse_laplacian_multiplier();
Multiplier derivative_multiplier(int axis, int n);
Multiplier identity_multiplier();

namespace fourier {
/// Embed an n-grid spectrum into the 2n grid (coarse Nyquist split in two),
/// and the reverse truncation (fine +/-Nyquist partners folded together).
CArray pad_spectrum(const TorusGrid& g, const CArray& spec, TorusGrid& padded_out);
CArray truncate_spectrum(const TorusGrid& fine, const CArray& spec, const TorusGrid& coarse);
}  // namespace fourier

}  // namespace paracalc
