#include "paracalc/taylor.hpp"

#include <cmath>

namespace paracalc {

namespace {
double binom(int n, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
  return r;
}
double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}
}  // namespace

Nonlinearity Nonlinearity::sine() {
  return {"sin",
          {[](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
           [](double x) { return -std::sin(x); }, [](double x) { return -std::cos(x); },
           [](double x) { return std::sin(x); }}};
}

Nonlinearity Nonlinearity::cosine() {
  return {"cos",
          {[](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); },
           [](double x) { return -std::cos(x); }, [](double x) { return std::sin(x); },
           [](double x) { return std::cos(x); }}};
}

// With t = tanh and s = sech^2 = 1 - t^2:  t' = s, s' = -2ts,
// s'' = -2s^2 + 4t^2 s, s''' = 16ts^2 - 8t^3 s, s'''' = 16s^3 - 88t^2 s^2 + 16t^4 s.
Nonlinearity Nonlinearity::tanh_fn() {
  auto t = [](double x) { return std::tanh(x); };
  return {"tanh",
          {t, [t](double x) { double c = t(x); return 1 - c * c; },
           [t](double x) { double c = t(x), s = 1 - c * c; return -2 * c * s; },
           [t](double x) { double c = t(x), s = 1 - c * c; return -2 * s * s + 4 * c * c * s; },
           [t](double x) {
             double c = t(x), s = 1 - c * c;
             return 16 * c * s * s - 8 * c * c * c * s;
           }}};
}

Nonlinearity Nonlinearity::sech2() {
  auto t = [](double x) { return std::tanh(x); };
  return {"sech2",
          {[t](double x) { double c = t(x); return 1 - c * c; },
           [t](double x) { double c = t(x), s = 1 - c * c; return -2 * c * s; },
           [t](double x) { double c = t(x), s = 1 - c * c; return -2 * s * s + 4 * c * c * s; },
           [t](double x) {
             double c = t(x), s = 1 - c * c;
             return 16 * c * s * s - 8 * c * c * c * s;
           },
           [t](double x) {
             double c = t(x), s = 1 - c * c, c2 = c * c;
             return 16 * s * s * s - 88 * c2 * s * s + 16 * c2 * c2 * s;
           }}};
}

Nonlinearity Nonlinearity::identity() {
  return {"id",
          {[](double x) { return x; }, [](double) { return 1.0; }, [](double) { return 0.0; },
           [](double) { return 0.0; }, [](double) { return 0.0; }}};
}

Nonlinearity Nonlinearity::constant(double c) {
  return {"const",
          {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; },
           [](double) { return 0.0; }, [](double) { return 0.0; }}};
}

Nonlinearity Nonlinearity::monomial(int degree) {
  auto dpow = [](int deg, int order) {
    return [deg, order](double x) {
      if (order > deg) return 0.0;
      double c = 1;
      for (int i = 0; i < order; ++i) c *= double(deg - i);
      return c * std::pow(x, double(deg - order));
    };
  };
  return {"x^" + std::to_string(degree),
          {dpow(degree, 0), dpow(degree, 1), dpow(degree, 2), dpow(degree, 3),
           dpow(degree, 4)}};
}

Field apply_pointwise(const Nonlinearity& fn, int order, const Field& u) {
  Array out(u.values().size());
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = fn.eval(u.values()[i], order);
  Field f(u.grid(), std::move(out));
  if (!f.all_finite()) throw invalid_input("nonlinearity produced non-finite values");
  return f;
}

TaylorExpansion taylor_expand(const Nonlinearity& fn, const Field& u, int order,
                              const PartitionScheme& p, Flavor fl) {
  if (order < 1 || order > 3) throw invalid_input("taylor_expand: order must be 1..3");
  TaylorExpansion ex;
  ex.order = order;
  ex.flavor = fl;

  // dealiased powers u^0..u^order
  std::vector<Field> upow;
  upow.push_back(Field::constant(u.grid(), 1.0));
  upow.push_back(u);
  for (int k = 2; k <= order; ++k) upow.push_back(dealiased_product(upow.back(), u));

  Field fu = apply_pointwise(fn, 0, u);
  Field sum = Field::zero(u.grid());
  for (int n = 1; n <= order; ++n) {
    const Field dn = apply_pointwise(fn, n, u);
    for (int j = 0; j < n; ++j) {
      const double coeff = ((j % 2) ? -1.0 : 1.0) * binom(n, j) / factorial(n);
      Field modulator = (j == 0) ? dn : dealiased_product(upow[static_cast<size_t>(j)], dn);
      const Field& carrier = upow[static_cast<size_t>(n - j)];
      Field term = flavored_para(fl, modulator, carrier, p);
      sum = sum + coeff * term;
      ex.terms.push_back({coeff, std::move(modulator), n - j});
    }
  }
  ex.term_sum = sum;
  ex.remainder = fu - sum;
  return ex;
}

TaylorExpansion paralinearize(const Nonlinearity& fn, const Field& u,
                              const PartitionScheme& p, Flavor fl) {
  return taylor_expand(fn, u, 1, p, fl);
}

double taylor_lipschitz_probe(const Nonlinearity& fn, const Field& u, const Field& v,
                              int order, double alpha, const PartitionScheme& p) {
  const double denom = besov_norm(u - v, alpha, p).norm;
  if (denom == 0.0) return 0.0;
  const Field ru = taylor_expand(fn, u, order, p).remainder;
  const Field rv = taylor_expand(fn, v, order, p).remainder;
  return besov_norm(ru - rv, (order + 1) * alpha, p).norm / denom;
}

}  // namespace paracalc
