#include "paracalc/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <unordered_map>
#include <vector>

namespace paracalc {
namespace {

Eigen::FFT<double>& engine_for(int n) {
  thread_local std::unordered_map<int, Eigen::FFT<double>> engines;
  return engines[n];
}

using CVec = std::vector<cplx>;

// Unnormalized sum conventions: fwd_k = sum_j x_j e^{-ikx_j},
// inv_j = sum_k X_k e^{+ikx_j}.
void fft_1d(CVec& data, int n, bool forward) {
  auto& fft = engine_for(n);
  CVec out(n);
  if (forward) {
    fft.fwd(out, data);
  } else {
    fft.inv(out, data);
    for (auto& v : out) v *= double(n);  // Eigen's inv divides by n
  }
  data.swap(out);
}

CVec to_cvec(const CArray& a) {
  return CVec(a.data(), a.data() + a.size());
}

CArray to_carray(const CVec& v) {
  CArray a(static_cast<Eigen::Index>(v.size()));
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = v[static_cast<size_t>(i)];
  return a;
}

CArray transform_nd(const TorusGrid& g, const CArray& in, bool forward) {
  const int n = g.n;
  if (g.dim == 1) {
    CVec buf = to_cvec(in);
    fft_1d(buf, n, forward);
    return to_carray(buf);
  }
  // dim 2, row-major: rows first (contiguous), then columns.
  CArray work = in;
  CVec buf(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) buf[c] = work[std::int64_t(r) * n + c];
    fft_1d(buf, n, forward);
    for (int c = 0; c < n; ++c) work[std::int64_t(r) * n + c] = buf[c];
  }
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) buf[r] = work[std::int64_t(r) * n + c];
    fft_1d(buf, n, forward);
    for (int r = 0; r < n; ++r) work[std::int64_t(r) * n + c] = buf[r];
  }
  return work;
}

// Fine-grid index of axis wavenumber k, N = fine axis size.
inline int fine_index(int k, int N) { return k >= 0 ? k : N + k; }

}  // namespace

namespace fourier {

CArray forward_raw(const TorusGrid& g, const CArray& values) {
  return transform_nd(g, values, true);
}

CArray inverse_raw(const TorusGrid& g, const CArray& spectrum) {
  return transform_nd(g, spectrum, false);
}

CArray forward(const TorusGrid& g, const Array& values) {
  CArray tmp = values.cast<cplx>();
  tmp = transform_nd(g, tmp, true);
  tmp /= double(g.size());
  return tmp;
}

Array inverse(const TorusGrid& g, const CArray& spectrum) {
  CArray tmp = transform_nd(g, spectrum, false);
  return tmp.real();
}

double imaginary_residue(const TorusGrid& g, const CArray& spectrum) {
  CArray tmp = transform_nd(g, spectrum, false);
  return tmp.imag().abs().maxCoeff();
}

CArray pad_spectrum(const TorusGrid& g, const CArray& spec, TorusGrid& padded_out) {
  const int n = g.n, N = 2 * n;
  padded_out = TorusGrid(g.dim, N);
  CArray out = CArray::Zero(padded_out.size());

  // Targets of an axis wavenumber: itself, or the split coarse Nyquist.
  auto targets = [&](int k, int (&idx)[2], double (&w)[2]) -> int {
    if (k == -n / 2) {
      idx[0] = fine_index(n / 2, N);
      idx[1] = fine_index(-n / 2, N);
      w[0] = w[1] = 0.5;
      return 2;
    }
    idx[0] = fine_index(k, N);
    w[0] = 1.0;
    return 1;
  };

  for (std::int64_t i = 0; i < g.size(); ++i) {
    const cplx c = spec[i];
    if (c == cplx(0.0, 0.0)) continue;
    auto kv = g.wavevector(i);
    int i1[2], i2[2];
    double w1[2], w2[2];
    const int m1 = targets(kv[0], i1, w1);
    if (g.dim == 1) {
      for (int a = 0; a < m1; ++a) out[i1[a]] += w1[a] * c;
    } else {
      const int m2 = targets(kv[1], i2, w2);
      for (int a = 0; a < m1; ++a)
        for (int b = 0; b < m2; ++b)
          out[std::int64_t(i1[a]) * N + i2[b]] += w1[a] * w2[b] * c;
    }
  }
  return out;
}

CArray truncate_spectrum(const TorusGrid& fine, const CArray& spec,
                         const TorusGrid& coarse) {
  const int n = coarse.n, N = fine.n;
  if (N != 2 * n || fine.dim != coarse.dim)
    throw invalid_input("truncate_spectrum: fine grid is not the 2x pad of coarse");
  CArray out = CArray::Zero(coarse.size());

  auto sources = [&](int k, int (&idx)[2]) -> int {
    if (k == -n / 2) {
      idx[0] = fine_index(n / 2, N);
      idx[1] = fine_index(-n / 2, N);
      return 2;
    }
    idx[0] = fine_index(k, N);
    return 1;
  };

  for (std::int64_t i = 0; i < coarse.size(); ++i) {
    auto kv = coarse.wavevector(i);
    int i1[2], i2[2];
    const int m1 = sources(kv[0], i1);
    cplx acc(0.0, 0.0);
    if (coarse.dim == 1) {
      for (int a = 0; a < m1; ++a) acc += spec[i1[a]];
    } else {
      const int m2 = sources(kv[1], i2);
      for (int a = 0; a < m1; ++a)
        for (int b = 0; b < m2; ++b) acc += spec[std::int64_t(i1[a]) * N + i2[b]];
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace fourier

const CArray& Field::spectrum() const {
  if (!spectrum_)
    spectrum_ = std::make_shared<const CArray>(fourier::forward(grid_, values_));
  return *spectrum_;
}

Field Field::from_spectrum(TorusGrid g, CArray spec) {
  if (spec.size() != g.size())
    throw invalid_input("from_spectrum: spectrum size does not match grid");
  Field f(g, fourier::inverse(g, spec));
  f.spectrum_ = std::make_shared<const CArray>(std::move(spec));
  return f;
}

Field transform_roundtrip(const Field& f) {
  if (!f.all_finite()) throw invalid_input("transform_roundtrip: non-finite values");
  return Field(f.grid(), fourier::inverse(f.grid(), fourier::forward(f.grid(), f.values())));
}

Field apply_multiplier(const Field& f, const Multiplier& m) {
  const TorusGrid& g = f.grid();
  const CArray& spec = f.spectrum();
  CArray out(spec.size());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const cplx s = m.symbol(g.wavevector(i));
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw invalid_input("apply_multiplier: symbol '" + m.label +
                          "' non-finite at a grid wavenumber");
    out[i] = s * spec[i];
  }
  return Field::from_spectrum(g, std::move(out));
}

Multiplier heat_multiplier(double t) {
  return {[t](const std::array<int, 2>& k) {
            const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1];
            return cplx(std::exp(-t * k2), 0.0);
          },
          "heat(t=" + std::to_string(t) + ")"};
}

Multiplier laplacian_multiplier() {
  return {[](const std::array<int, 2>& k) {
            return cplx(double(k[0]) * k[0] + double(k[1]) * k[1], 0.0);
          },
          "L"};
}

Multiplier inverse_laplacian_multiplier() {
  return {[](const std::array<int, 2>& k) {
            const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1];
            return k2 == 0.0 ? cplx(0.0, 0.0) : cplx(1.0 / k2, 0.0);
          },
          "L^-1"};
}

Multiplier derivative_multiplier(int axis, int n) {
  return {[axis, n](const std::array<int, 2>& k) {
            const int ka = k[axis];
            if (ka == -n / 2) return cplx(0.0, 0.0);  // Nyquist has no partner
            return cplx(0.0, double(ka));
          },
          "d/dx" + std::to_string(axis + 1)};
}

Multiplier identity_multiplier() {
  return {[](const std::array<int, 2>&) { return cplx(1.0, 0.0); }, "id"};
}

Field heat_propagate(const Field& f, double t) {
  if (t < 0.0) throw invalid_input("heat_propagate: t must be nonnegative");
  if (t == 0.0) return f;
  return apply_multiplier(f, heat_multiplier(t));
}

Field laplacian(const Field& f) { return apply_multiplier(f, laplacian_multiplier()); }

Field inverse_laplacian(const Field& f) {
  return apply_multiplier(f, inverse_laplacian_multiplier());
}

Field derivative(const Field& f, int axis) {
  if (axis < 0 || axis >= f.grid().dim)
    throw unsupported_dimension("derivative: axis out of range for grid dim");
  return apply_multiplier(f, derivative_multiplier(axis, f.grid().n));
}

Field dealiased_product(const Field& a, const Field& b) {
  require_same_grid(a, b);
  const TorusGrid& g = a.grid();
  TorusGrid fine;
  CArray pa = fourier::pad_spectrum(g, a.spectrum(), fine);
  CArray pb = fourier::pad_spectrum(g, b.spectrum(), fine);
  Array va = fourier::inverse(fine, pa);
  Array vb = fourier::inverse(fine, pb);
  CArray prod = (va * vb).cast<cplx>();
  prod = fourier::forward_raw(fine, prod);
  prod /= double(fine.size());
  return Field::from_spectrum(g, fourier::truncate_spectrum(fine, prod, g));
}

}  // namespace paracalc
