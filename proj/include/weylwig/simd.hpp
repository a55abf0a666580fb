#ifndef WEYLWIG_SIMD_HPP
#define WEYLWIG_SIMD_HPP

#include <complex>
#include <cstddef>
#include <string>

// Low-level complex-double kernels. Every primitive has a scalar reference
// implementation and (on x86) an AVX2+FMA variant; the active backend is
// selected at runtime from CPUID and can be forced for equivalence testing.

namespace weylwig::simd {

using cdouble = std::complex<double>;

enum class Backend { kAuto, kScalar, kAvx2 };

// Force a backend (kAuto re-enables detection). Throws std::invalid_argument
// if the requested backend is not available on this machine.
void set_backend(Backend b);
Backend active_backend();
std::string backend_name();
bool avx2_available();

struct KernelTable {
  // sum_i x[i] * y[i]
  cdouble (*cdotu)(const cdouble* x, const cdouble* y, std::size_t n);
  // sum_i conj(x[i]) * y[i]
  cdouble (*cdotc)(const cdouble* x, const cdouble* y, std::size_t n);
  // y[i] += a * x[i]
  void (*caxpy)(cdouble a, const cdouble* x, cdouble* y, std::size_t n);
  // out[i] += x[i] * y[i]
  void (*cmul_add)(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n);
  // x[i] *= a
  void (*cscale)(cdouble a, cdouble* x, std::size_t n);
};

const KernelTable& kernels();

cdouble cdotu(const cdouble* x, const cdouble* y, std::size_t n);
cdouble cdotc(const cdouble* x, const cdouble* y, std::size_t n);
void caxpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n);
void cmul_add(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n);
void cscale(cdouble a, cdouble* x, std::size_t n);

// C = scale * A * B, row-major n x n, axpy-based (unit stride inner loops)
void matmul(const cdouble* A, const cdouble* B, cdouble* C, std::size_t n,
            cdouble scale, int threads = 1);

extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(__i386__)
extern const KernelTable avx2_table;
#endif

}  // namespace weylwig::simd

#endif
