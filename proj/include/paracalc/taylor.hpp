#pragma once

#include <array>
#include <functional>
#include <string>

#include "paracalc/correctors.hpp"
#include "paracalc/holder.hpp"

namespace paracalc {

/// A scalar nonlinearity with caller-supplied derivatives up to order 4.
struct Nonlinearity {
  std::string label;
  std::array<std::function<double(double)>, 5> d;  // f, f', f'', f''', f''''

  double eval(double x, int order = 0) const { return d.at(static_cast<size_t>(order))(x); }

  static Nonlinearity sine();
  static Nonlinearity cosine();
  static Nonlinearity tanh_fn();
  static Nonlinearity sech2();  // (tanh)'
  static Nonlinearity identity();
  static Nonlinearity constant(double c);
  static Nonlinearity monomial(int degree);
};

Field apply_pointwise(const Nonlinearity& fn, int order, const Field& u);

struct TaylorTerm {
  double coeff;     // (-1)^j C(n,j) / n!
  Field modulator;  // u^j f^(n)(u), dealiased powers
  int power;        // carrier is u^power
};

/// f(u) = sum of paraproduct terms + remainder, the remainder being the
/// exact difference. Exact (up to low blocks) for polynomial f of degree
/// at most 3 at order 3.
struct TaylorExpansion {
  int order = 1;
  Flavor flavor = Flavor::plain;
  std::vector<TaylorTerm> terms;
  Field term_sum;
  Field remainder;
};

/// General order-k expansion sum_{n<=k} (1/n!) sum_{j<n} (-1)^j C(n,j)
/// Pi_{u^j f^(n)(u)}(u^{n-j}); order in {1,2,3}.
TaylorExpansion taylor_expand(const Nonlinearity& fn, const Field& u, int order,
                              const PartitionScheme& p, Flavor fl = Flavor::plain);

/// Bony paralinearization: order-1 expansion.
TaylorExpansion paralinearize(const Nonlinearity& fn, const Field& u,
                              const PartitionScheme& p, Flavor fl = Flavor::plain);

/// besov_norm(rem(u)-rem(v), (order+1) alpha) / ||u-v||_{C^alpha}; 0 when u = v.
double taylor_lipschitz_probe(const Nonlinearity& fn, const Field& u, const Field& v,
                              int order, double alpha, const PartitionScheme& p);

}  // namespace paracalc
