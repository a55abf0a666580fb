#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "weylwig/simd.hpp"

namespace simd = weylwig::simd;
using simd::cdouble;

namespace {

std::vector<cdouble> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cdouble> v(n);
  for (cdouble& x : v) x = cdouble{u(rng), u(rng)};
  return v;
}

double max_diff(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

// restores detection when a test section ends
struct BackendGuard {
  ~BackendGuard() { simd::set_backend(simd::Backend::kAuto); }
};

}  // namespace

TEST_CASE("simd: backend selection and naming") {
  BackendGuard guard;
  simd::set_backend(simd::Backend::kScalar);
  CHECK(simd::active_backend() == simd::Backend::kScalar);
  CHECK(simd::backend_name() == "scalar");
  if (simd::avx2_available()) {
    simd::set_backend(simd::Backend::kAvx2);
    CHECK(simd::active_backend() == simd::Backend::kAvx2);
    CHECK(simd::backend_name() == "avx2");
  } else {
    CHECK_THROWS_AS(simd::set_backend(simd::Backend::kAvx2), std::invalid_argument);
  }
  simd::set_backend(simd::Backend::kAuto);
  CHECK(simd::kernels().cdotu != nullptr);
  CHECK(simd::kernels().cdotc != nullptr);
  CHECK(simd::kernels().caxpy != nullptr);
  CHECK(simd::kernels().cmul_add != nullptr);
  CHECK(simd::kernels().cscale != nullptr);
}

TEST_CASE("simd: scalar primitives against straightforward loops") {
  std::mt19937_64 rng(1);
  // odd length exercises the vector tail path on every backend
  const std::size_t n = 257;
  const std::vector<cdouble> x = random_vec(rng, n);
  const std::vector<cdouble> y = random_vec(rng, n);

  cdouble dotu{0.0, 0.0}, dotc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    dotu += x[i] * y[i];
    dotc += std::conj(x[i]) * y[i];
  }
  CHECK(std::abs(simd::cdotu(x.data(), y.data(), n) - dotu) <= 1e-13 * n);
  CHECK(std::abs(simd::cdotc(x.data(), y.data(), n) - dotc) <= 1e-13 * n);

  const cdouble a{0.3, -0.8};
  std::vector<cdouble> y1 = y, y2 = y;
  simd::caxpy(a, x.data(), y1.data(), n);
  for (std::size_t i = 0; i < n; ++i) y2[i] += a * x[i];
  CHECK(max_diff(y1, y2) <= 1e-14);

  std::vector<cdouble> o1(n, cdouble{0.1, 0.2}), o2 = o1;
  simd::cmul_add(x.data(), y.data(), o1.data(), n);
  for (std::size_t i = 0; i < n; ++i) o2[i] += x[i] * y[i];
  CHECK(max_diff(o1, o2) <= 1e-14);

  std::vector<cdouble> s1 = x, s2 = x;
  simd::cscale(a, s1.data(), n);
  for (cdouble& v : s2) v *= a;
  CHECK(max_diff(s1, s2) <= 1e-14);
}

#if defined(__x86_64__) || defined(__i386__)
TEST_CASE("simd: avx2 path agrees with the scalar reference") {
  if (!simd::avx2_available()) return;
  std::mt19937_64 rng(2);
  for (const std::size_t n : {1u, 2u, 3u, 4u, 7u, 64u, 255u}) {
    const std::vector<cdouble> x = random_vec(rng, n);
    const std::vector<cdouble> y = random_vec(rng, n);
    const cdouble a{-0.4, 0.9};

    CHECK(std::abs(simd::avx2_table.cdotu(x.data(), y.data(), n) -
                   simd::scalar_table.cdotu(x.data(), y.data(), n)) <= 1e-13 * (n + 1));
    CHECK(std::abs(simd::avx2_table.cdotc(x.data(), y.data(), n) -
                   simd::scalar_table.cdotc(x.data(), y.data(), n)) <= 1e-13 * (n + 1));

    std::vector<cdouble> y1 = y, y2 = y;
    simd::avx2_table.caxpy(a, x.data(), y1.data(), n);
    simd::scalar_table.caxpy(a, x.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) <= 1e-13);

    std::vector<cdouble> o1(n, cdouble{0.0, 0.0}), o2 = o1;
    simd::avx2_table.cmul_add(x.data(), y.data(), o1.data(), n);
    simd::scalar_table.cmul_add(x.data(), y.data(), o2.data(), n);
    CHECK(max_diff(o1, o2) <= 1e-13);

    std::vector<cdouble> s1 = x, s2 = x;
    simd::avx2_table.cscale(a, s1.data(), n);
    simd::scalar_table.cscale(a, s2.data(), n);
    CHECK(max_diff(s1, s2) <= 1e-13);
  }
}
#endif

TEST_CASE("simd: matmul equivalence between backends") {
  std::mt19937_64 rng(3);
  const std::size_t n = 33;
  const std::vector<cdouble> A = random_vec(rng, n * n);
  const std::vector<cdouble> B = random_vec(rng, n * n);
  const cdouble scale{0.5, 0.25};

  BackendGuard guard;
  simd::set_backend(simd::Backend::kScalar);
  std::vector<cdouble> Cs(n * n, cdouble{0.0, 0.0});
  simd::matmul(A.data(), B.data(), Cs.data(), n, scale);

  // naive triple loop
  std::vector<cdouble> Cn(n * n, cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cdouble aik = A[i * n + k];
      for (std::size_t j = 0; j < n; ++j) Cn[i * n + j] += aik * B[k * n + j];
    }
  }
  for (cdouble& v : Cn) v *= scale;
  CHECK(max_diff(Cs, Cn) <= 1e-12 * static_cast<double>(n));

  if (simd::avx2_available()) {
    simd::set_backend(simd::Backend::kAvx2);
    std::vector<cdouble> Cv(n * n, cdouble{0.0, 0.0});
    simd::matmul(A.data(), B.data(), Cv.data(), n, scale);
    CHECK(max_diff(Cs, Cv) <= 1e-12 * static_cast<double>(n));
  }

  // same backend, same thread count: bitwise reproducible
  simd::set_backend(simd::Backend::kAuto);
  std::vector<cdouble> C1(n * n, cdouble{0.0, 0.0});
  std::vector<cdouble> C2(n * n, cdouble{0.0, 0.0});
  simd::matmul(A.data(), B.data(), C1.data(), n, scale, 2);
  simd::matmul(A.data(), B.data(), C2.data(), n, scale, 2);
  CHECK(max_diff(C1, C2) == 0.0);
}
