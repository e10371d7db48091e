#include "paracalc/correctors.hpp"

namespace paracalc {
namespace {

Field mul(const Field& a, const Field& b) { return dealiased_product(a, b); }

}  // namespace

Field corrector_c(const Field& f, const Field& g, const Field& h,
                  const PartitionScheme& p, Flavor fl) {
  return resonant(flavored_para(fl, f, g, p), h, p) - mul(f, resonant(g, h, p));
}

Field commutator_d(const Field& f, const Field& g, const Field& h,
                   const PartitionScheme& p) {
  return resonant(modified_para(f, g, p), h, p) - para(f, resonant(g, h, p), p);
}

Field iterated_d_lower(const Field& a, const Field& b, const Field& g, const Field& h,
                       const PartitionScheme& p) {
  return commutator_d(modified_para(a, b, p), g, h, p) -
         para(a, commutator_d(b, g, h, p), p);
}

Field iterated_d_upper(const Field& a, const Field& b, const Field& g, const Field& h,
                       const PartitionScheme& p) {
  return commutator_d(g, modified_para(a, b, p), h, p) -
         para(a, commutator_d(g, b, h, p), p);
}

Field corrector_lower(const std::vector<Field>& chain, const Field& g, const Field& h,
                      const PartitionScheme& p, Flavor fl) {
  if (chain.size() == 2) {
    const Field& a = chain[0];
    const Field& b = chain[1];
    return corrector_c(flavored_para(fl, a, b, p), g, h, p, fl) -
           mul(a, corrector_c(b, g, h, p, fl));
  }
  if (chain.size() == 3) {
    const Field& a = chain[0];
    const Field& b = chain[1];
    const Field& c = chain[2];
    return corrector_lower({flavored_para(fl, a, b, p), c}, g, h, p, fl) -
           mul(a, corrector_lower({b, c}, g, h, p, fl));
  }
  throw invalid_input("corrector_lower: chain length must be 2 or 3");
}

Field corrector_upper(const Field& f, const std::vector<Field>& chain, const Field& h,
                      const PartitionScheme& p, Flavor fl) {
  if (chain.size() == 2) {
    const Field& a = chain[0];
    const Field& b = chain[1];
    return corrector_c(f, flavored_para(fl, a, b, p), h, p, fl) -
           mul(a, corrector_c(f, b, h, p, fl));
  }
  if (chain.size() == 3) {
    const Field& a = chain[0];
    const Field& b = chain[1];
    const Field& c = chain[2];
    return corrector_upper(f, {a, flavored_para(fl, b, c, p)}, h, p, fl) -
           mul(b, corrector_upper(f, {a, c}, h, p, fl));
  }
  throw invalid_input("corrector_upper: chain length must be 2 or 3");
}

Field mixed_corrector(const Field& f, const Field& a, const Field& b, const Field& h,
                      const PartitionScheme& p, MixedKind kind) {
  const Field bridge = para_diff(a, b, p);  // R(1,a,b) up to the Pi_1 convention
  if (kind == MixedKind::plain_modified) {
    return corrector_c(f, modified_para(a, b, p), h, p, Flavor::plain) -
           mul(a, corrector_c(f, b, h, p, Flavor::plain)) +
           corrector_c(f, bridge, h, p, Flavor::plain);
  }
  return corrector_c(f, para(a, b, p), h, p, Flavor::modified) -
         mul(a, corrector_c(f, b, h, p, Flavor::modified)) -
         corrector_c(f, bridge, h, p, Flavor::modified);
}

Field swap_r(const Field& f, const Field& a, const Field& g, const PartitionScheme& p) {
  return para(f, modified_para(a, g, p), p) - para(mul(f, a), g, p);
}

Field swap_r_iter(const Field& f, const std::vector<Field>& chain, const Field& g,
                  const PartitionScheme& p) {
  if (chain.size() == 2) {
    const Field& a = chain[0];
    const Field& b = chain[1];
    return swap_r(f, modified_para(a, b, p), g, p) - swap_r(mul(f, a), b, g, p);
  }
  if (chain.size() == 3) {
    const Field& a = chain[0];
    const Field& b = chain[1];
    const Field& c = chain[2];
    return swap_r_iter(f, {modified_para(a, b, p), c}, g, p) -
           swap_r_iter(mul(f, a), {b, c}, g, p);
  }
  throw invalid_input("swap_r_iter: chain length must be 2 or 3");
}

Field swap_r_refined(const Field& f, const Field& a, const Field& b, const Field& g,
                     const PartitionScheme& p) {
  const Field ones = Field::constant(f.grid(), 1.0);
  return swap_r_iter(f, {a, b}, g, p) - para(f, swap_r_iter(ones, {a, b}, g, p), p);
}

Field triple_para_i(const Field& f, const Field& a, const Field& b, const Field& g,
                    const PartitionScheme& p) {
  const Field fa = mul(f, a);
  const Field ab = mul(a, b);
  const Field fab = mul(fa, b);
  const Field pb_g = modified_para(b, g, p);
  const Field head = para(f, modified_para(a, pb_g, p), p);
  const Field t_fab = para(fab, g, p);
  const Field d_b = para(fa, pb_g, p) - t_fab;                    // Pi_{fa}(Pi~_{Db} g)
  const Field d_a = para(f, modified_para(ab, g, p), p) - para(fa, pb_g, p);  // Pi_f(Pi~_{bDa} g)
  return head - t_fab - d_b - d_a;
}

Field cr4(const Field& f, const Field& a, const Field& b, const Field& g,
          const PartitionScheme& p) {
  const Field r_fab = para(f, modified_para(a, b, p), p) - para(mul(f, a), b, p);
  const Field cdiff =
      corrector_c(a, b, g, p, Flavor::modified) - corrector_c(a, b, g, p, Flavor::plain);
  return resonant(r_fab, g, p) - mul(f, cdiff);
}

Field cr5(const Field& u, const Field& v, const Field& a, const Field& b, const Field& g,
          const PartitionScheme& p) {
  return cr4(para(u, v, p), a, b, g, p) - mul(u, cr4(v, a, b, g, p));
}

Field t_commutator(const Field& u, const Field& g, const Field& f,
                   const PartitionScheme& p) {
  return para(u, modified_para(g, f, p), p) - para(g, para(u, f, p), p);
}

Field t_iter(const Field& u, const std::vector<Field>& chain, const Field& f,
             const PartitionScheme& p) {
  if (chain.size() == 2) {
    const Field& a = chain[0];
    const Field& b = chain[1];
    return t_commutator(u, modified_para(a, b, p), f, p) -
           para(a, t_commutator(u, b, f, p), p);
  }
  if (chain.size() == 3) {
    const Field& a = chain[0];
    const Field& b = chain[1];
    const Field& c = chain[2];
    return t_iter(u, {modified_para(a, b, p), c}, f, p) -
           para(a, t_iter(u, {b, c}, f, p), p);
  }
  throw invalid_input("t_iter: chain length must be 2 or 3");
}

Field d_corrector_hat(const Field& f, const Field& g, const Field& h,
                      const PartitionScheme& p) {
  if (f.grid().dim != 1)
    throw unsupported_dimension("d_corrector_hat: 1-D grids only");
  return para(derivative(para(f, g, p)), h, p) - mul(f, para(derivative(g), h, p));
}

Field d_corrector_hat_iter(const Field& f, const Field& g, const Field& u, const Field& v,
                           const PartitionScheme& p) {
  return d_corrector_hat(f, g, modified_para(u, v, p), p) -
         mul(u, d_corrector_hat(f, g, v, p));
}

}  // namespace paracalc
