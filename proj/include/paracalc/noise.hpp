#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "paracalc/duhamel.hpp"

namespace paracalc {

/// Gaussian spectral sampler spec. Deterministic: the coefficient stream is
/// SplitMix64 keyed by (seed, spectral index), so the same spec always
/// produces the bit-identical field.
struct NoiseSpec {
  double target_alpha = 0.5;  // in (-2, 1.5)
  std::uint64_t seed = 0;
};

/// Fourier coefficients xi_k (1+|k|^2)^{-(alpha+d/2)/2} with xi_k complex
/// standard Gaussian, conjugate-symmetric; mean zeroed.
Field sample_field(const NoiseSpec& spec, const TorusGrid& g);

/// heat_propagate(f, eps), eps > 0.
Field mollify(const Field& f, double eps);

/// Z1 = L^{-1}(zeta), zero initial slice, exact multiplier per slice.
TimeField build_z1(const Field& zeta, const TimeGrid& t);

/// zeta with the second and third order objects of the gPAM analysis,
/// built classically (mollified input expected).
struct EnhancedNoise {
  Field zeta;
  TimeField Z1;
  TimeField zeta2_1;  // Pi(Z1, zeta) per slice
  TimeField zeta2_2;  // Pi_zeta Z1 per slice
  TimeField Y2;       // zeta2_1 + zeta2_2
  TimeField Z2;       // Duhamel preimage of Y2, zero initial slice
  std::array<Field, 8> zeta3;  // final-time slice convention
  TimeGrid timegrid;
};

EnhancedNoise build_enhancement(const Field& zeta, const TimeGrid& t,
                                const PartitionScheme& p);

/// Directory of PCF1 files plus manifest.json {alpha, seed, eps, timegrid}.
void save_enhancement(const EnhancedNoise& en, const std::filesystem::path& dir,
                      double alpha, std::uint64_t seed, double eps);
EnhancedNoise load_enhancement(const std::filesystem::path& dir);

/// Counter-based generator behind the sampler (SplitMix64 stream).
namespace rng {
std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter);
double uniform01(std::uint64_t seed, std::uint64_t counter);
/// Box-Muller pair from counters (2i, 2i+1).
std::array<double, 2> gaussian_pair(std::uint64_t seed, std::uint64_t index);
}  // namespace rng

}  // namespace paracalc
