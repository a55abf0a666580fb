#include "weylwig/simd.hpp"

#include <stdexcept>
#include <vector>

#include "weylwig/threads.hpp"

namespace weylwig::simd {

namespace {

bool detect_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend g_forced = Backend::kAuto;

const KernelTable& resolve() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool have_avx2 = detect_avx2();
  if (g_forced == Backend::kAvx2) return avx2_table;
  if (g_forced == Backend::kScalar) return scalar_table;
  return have_avx2 ? avx2_table : scalar_table;
#else
  return scalar_table;
#endif
}

}  // namespace

bool avx2_available() { return detect_avx2(); }

void set_backend(Backend b) {
  if (b == Backend::kAvx2 && !avx2_available()) {
    throw std::invalid_argument("simd backend avx2 not available on this cpu");
  }
  g_forced = b;
}

Backend active_backend() {
  if (g_forced != Backend::kAuto) return g_forced;
  return avx2_available() ? Backend::kAvx2 : Backend::kScalar;
}

std::string backend_name() {
  return active_backend() == Backend::kAvx2 ? "avx2" : "scalar";
}

const KernelTable& kernels() { return resolve(); }

cdouble cdotu(const cdouble* x, const cdouble* y, std::size_t n) {
  return resolve().cdotu(x, y, n);
}
cdouble cdotc(const cdouble* x, const cdouble* y, std::size_t n) {
  return resolve().cdotc(x, y, n);
}
void caxpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n) {
  resolve().caxpy(a, x, y, n);
}
void cmul_add(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n) {
  resolve().cmul_add(x, y, out, n);
}
void cscale(cdouble a, cdouble* x, std::size_t n) { resolve().cscale(a, x, n); }

void matmul(const cdouble* A, const cdouble* B, cdouble* C, std::size_t n,
            cdouble scale, int threads) {
  const KernelTable& kt = resolve();
  parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      cdouble* crow = C + i * n;
      for (std::size_t k = 0; k < n; ++k) crow[k] = 0.0;
      const cdouble* arow = A + i * n;
      for (std::size_t c = 0; c < n; ++c) {
        const cdouble a = scale * arow[c];
        if (a == cdouble{0.0, 0.0}) continue;
        kt.caxpy(a, B + c * n, crow, n);
      }
    }
  });
}

}  // namespace weylwig::simd
