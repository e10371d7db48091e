#pragma once

#include "paracalc/fourier.hpp"
#include "paracalc/lp.hpp"

namespace paracalc {

/// The three Bony pieces of a product; para_fg + para_gf + resonant equals
/// the dealiased pointwise product exactly (the index split is an exact
/// partition of block pairs).
struct ProductSplit {
  Field para_fg;   // Pi_f g : f low, g high
  Field para_gf;   // Pi_g f
  Field resonant;  // Pi(f,g)
};

struct BackendConfig {
  enum class Backend { lp, semigroup };
  Backend backend = Backend::lp;
  int b = 2;        // semigroup cancellation order
  int levels = 16;  // dyadic t-levels of the dt/t quadrature

  void validate() const {
    if (b < 2) throw invalid_input("BackendConfig: b must be >= 2");
    if (levels < 8) throw invalid_input("BackendConfig: levels must be >= 8");
  }
};

/// Pi_f g = sum_{j>=1} S_{j-2}(f) Delta_j(g), every product dealiased.
/// Annihilates constants in the carrier slot.
Field para(const Field& f, const Field& g, const PartitionScheme& p);

/// Pi(f,g) = sum_{|i-j|<=1} Delta_i(f) Delta_j(g); symmetric.
Field resonant(const Field& f, const Field& g, const PartitionScheme& p);

ProductSplit full_split(const Field& f, const Field& g, const PartitionScheme& p);

/// Spatial surrogate of the intertwined paraproduct:
/// Pi~_f g = L^{-1}( Pi_f (L g) ); mean-zero output.
Field modified_para(const Field& f, const Field& g, const PartitionScheme& p);

/// Pi~_a g - Pi_a g; the computable stand-in for the inner-difference
/// modulated paraproduct Pi_{Da} g.
Field para_diff(const Field& a, const Field& g, const PartitionScheme& p);

/// Semigroup-multiplier backend: one representative Calderon term
///   (1/c_b) int_0^1 Q^(1)_t( Q^(b)_t g . P_t f ) dt/t
/// with f the modulator and g the carrier, quadratured at geometric
/// midpoints t = 2^{-(l+1/2)}, l = 0..levels-1. Normalized so that a
/// constant modulator reproduces the carrier minus its P_1-smooth part.
Field semigroup_para(const Field& f, const Field& g, const BackendConfig& cfg);

/// The composite symbol the semigroup quadrature applies when the modulator
/// is constant; oracle hook for the Calderon self-test.
Multiplier semigroup_identity_multiplier(const BackendConfig& cfg);

/// Backend dispatch for the plain paraproduct.
Field para_with_backend(const Field& f, const Field& g, const BackendConfig& cfg,
                        const PartitionScheme& p);

}  // namespace paracalc
