#pragma once

#include <vector>

#include "paracalc/paraproduct.hpp"

namespace paracalc {

/// Which paraproduct modulates the inside of a corrector: plain Pi or the
/// intertwined Pi~. A chain built with one flavor iterates with the same
/// flavor; mixed chains go through mixed_corrector.
enum class Flavor { plain, modified };

inline Field flavored_para(Flavor fl, const Field& f, const Field& g,
                           const PartitionScheme& p) {
  return fl == Flavor::plain ? para(f, g, p) : modified_para(f, g, p);
}

/// C(f,g;h) = Pi(Pi~_f g, h) - f Pi(g,h); flavor picks Pi vs Pi~ inside.
Field corrector_c(const Field& f, const Field& g, const Field& h,
                  const PartitionScheme& p, Flavor fl = Flavor::modified);

/// D(f,g;h) = Pi(Pi~_f g, h) - Pi_f(Pi(g,h)).
Field commutator_d(const Field& f, const Field& g, const Field& h,
                   const PartitionScheme& p);

/// Lower iterate:  D(Pi~_a b, g; h) - Pi_a D(b,g;h).
Field iterated_d_lower(const Field& a, const Field& b, const Field& g, const Field& h,
                       const PartitionScheme& p);
/// Upper iterate:  D(g, Pi~_a b; h) - Pi_a D(g,b;h).
Field iterated_d_upper(const Field& a, const Field& b, const Field& g, const Field& h,
                       const PartitionScheme& p);

/// Lower iterated correctors; chain = [a,b] or [a,b,c] meaning ((a,b),c):
///   C((a,b),g,h)     = C(Pi~_a b, g, h) - a C(b,g,h)
///   C(((a,b),c),g,h) = C((Pi~_a b, c), g, h) - a C((b,c),g,h)
Field corrector_lower(const std::vector<Field>& chain, const Field& g, const Field& h,
                      const PartitionScheme& p, Flavor fl = Flavor::modified);

/// Upper iterated correctors; chain = [a,b] or [a,b,c] meaning (a,(b,c)):
///   C(f,(a,b),h)     = C(f, Pi~_a b; h) - a C(f,b;h)
///   C(f,(a,(b,c)),h) = C(f,(a, Pi~_b c),h) - b C(f,(a,c),h)
Field corrector_upper(const Field& f, const std::vector<Field>& chain, const Field& h,
                      const PartitionScheme& p, Flavor fl = Flavor::modified);

enum class MixedKind { plain_modified, modified_plain };  // o-then-* vs *-then-o

/// Mixed-flavor upper iterate, with the R(1,a,b) bridge term:
///   C^{o*}(f,(a,b),h) = C^o(f, Pi~_a b, h) - a C^o(f,b,h) + C^o(f, R(1,a,b), h)
/// and the *o version with Pi and Pi~ exchanged (bridge enters with a minus).
Field mixed_corrector(const Field& f, const Field& a, const Field& b, const Field& h,
                      const PartitionScheme& p, MixedKind kind);

/// R(f,a;g) = Pi_f(Pi~_a g) - Pi_{fa} g.
Field swap_r(const Field& f, const Field& a, const Field& g, const PartitionScheme& p);

/// Iterates; chain = [a,b] or [a,b,c] meaning ((a,b),c):
///   R(f,(a,b);g)     = R(f, Pi~_a b; g) - R(fa, b; g)
///   R(f,((a,b),c);g) = R(f,(Pi~_a b, c);g) - R(fa,(b,c);g)
Field swap_r_iter(const Field& f, const std::vector<Field>& chain, const Field& g,
                  const PartitionScheme& p);

/// Refined expansion defect: R(f,(a,b);g) - Pi_f( R(1,(a,b);g) ); gains the
/// modulator's regularity on top of the iterate.
Field swap_r_refined(const Field& f, const Field& a, const Field& b, const Field& g,
                     const PartitionScheme& p);

/// I(f,a,b;g) = Pi_f(Pi~_a(Pi~_b g))
///              - { Pi_{fab} g + Pi_{fa}(Pi~_{Db} g) + Pi_f(Pi~_{bDa} g) },
/// the D-terms realized as the exact R-differences
///   Pi_{fa}(Pi~_{Db} g) = Pi_{fa}(Pi~_b g) - Pi_{fab} g,
///   Pi_f(Pi~_{bDa} g)  = Pi_f(Pi~_{ab} g) - Pi_{fa}(Pi~_b g).
Field triple_para_i(const Field& f, const Field& a, const Field& b, const Field& g,
                    const PartitionScheme& p);

/// CR((f,a,b),g) = Pi( Pi_f(Pi~_a b) - Pi_{fa} b , g )
///                 - f { C*(a,b,g) - C^o(a,b,g) }.
Field cr4(const Field& f, const Field& a, const Field& b, const Field& g,
          const PartitionScheme& p);
/// CR(((u,v),a,b),g) = CR((Pi_u v,a,b),g) - u CR((v,a,b),g).
Field cr5(const Field& u, const Field& v, const Field& a, const Field& b, const Field& g,
          const PartitionScheme& p);

/// T_u(g,f) = Pi_u(Pi~_g f) - Pi_g(Pi_u f).
Field t_commutator(const Field& u, const Field& g, const Field& f,
                   const PartitionScheme& p);

/// Iterates; chain = [a,b] or [a,b,c] meaning ((a,b),c):
///   T_u((a,b),f)     = T_u(Pi~_a b, f) - Pi_a(T_u(b,f))
///   T_u(((a,b),c),f) = T_u((Pi~_a b, c), f) - Pi_a(T_u((b,c),f))
/// The 5-linear recursion follows the displayed 4-linear pattern one level
/// deeper (the source states the result without an explicit formula).
Field t_iter(const Field& u, const std::vector<Field>& chain, const Field& f,
             const PartitionScheme& p);

/// 1-D only. C^(f,g,h) = Pi_{d(Pi_f g)} h - f Pi_{dg} h, with d the spatial
/// derivative multiplier and Pi_{da} b computed as para(da, b).
Field d_corrector_hat(const Field& f, const Field& g, const Field& h,
                      const PartitionScheme& p);
/// C^(f,g,Pi~_u v) - u C^(f,g,v).
Field d_corrector_hat_iter(const Field& f, const Field& g, const Field& u, const Field& v,
                           const PartitionScheme& p);

}  // namespace paracalc
