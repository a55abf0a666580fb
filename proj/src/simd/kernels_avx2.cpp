#include "weylwig/simd.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

// Complex multiply-accumulate with AVX2+FMA. A 256-bit lane holds two complex
// doubles as [re0, im0, re1, im1]; the product uses the movedup/unpackhi +
// fmaddsub idiom, which keeps rounding identical to a*c-b*d / a*d+b*c up to
// the usual FMA contraction (tests compare against scalar with tolerances,
// never bitwise).

namespace weylwig::simd {

namespace {

// returns x * y per complex pair
inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d xr = _mm256_movedup_pd(x);                       // [a, a, c, c]
  const __m256d xi = _mm256_unpackhi_pd(x, x);                   // [b, b, d, d]
  const __m256d ys = _mm256_permute_pd(y, 0b0101);               // [im, re, ...]
  return _mm256_fmaddsub_pd(xr, y, _mm256_mul_pd(xi, ys));
}

// acc += x * y
inline __m256d cfma(__m256d acc, __m256d x, __m256d y) {
  return _mm256_add_pd(acc, cmul(x, y));
}

inline cdouble hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return {t[0] + t[2], t[1] + t[3]};
}

cdouble avx2_cdotu(const cdouble* x, const cdouble* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = cfma(acc, _mm256_loadu_pd(xd + 2 * i), _mm256_loadu_pd(yd + 2 * i));
  }
  cdouble s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

cdouble avx2_cdotc(const cdouble* x, const cdouble* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  const __m256d conj_mask = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xc = _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i), conj_mask);
    acc = cfma(acc, xc, _mm256_loadu_pd(yd + 2 * i));
  }
  cdouble s = hsum(acc);
  for (; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

void avx2_caxpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d prod = cmul(av, _mm256_loadu_pd(xd + 2 * i));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void avx2_cmul_add(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  double* od = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d prod = cmul(_mm256_loadu_pd(xd + 2 * i), _mm256_loadu_pd(yd + 2 * i));
    _mm256_storeu_pd(od + 2 * i, _mm256_add_pd(_mm256_loadu_pd(od + 2 * i), prod));
  }
  for (; i < n; ++i) out[i] += x[i] * y[i];
}

void avx2_cscale(cdouble a, cdouble* x, std::size_t n) {
  double* xd = reinterpret_cast<double*>(x);
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(xd + 2 * i, cmul(av, _mm256_loadu_pd(xd + 2 * i)));
  }
  for (; i < n; ++i) x[i] *= a;
}

}  // namespace

const KernelTable avx2_table = {avx2_cdotu, avx2_cdotc, avx2_caxpy, avx2_cmul_add,
                                avx2_cscale};

}  // namespace weylwig::simd

#endif  // x86
