#include "weylwig/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "weylwig/simd.hpp"

namespace weylwig {

double GridSpec::dp() const { return 2.0 * std::numbers::pi * hbar / (N * dq()); }

GridSpec make_grid(int N, double L, double hbar) {
  if (N < 4) throw std::invalid_argument("make_grid: N must be >= 4, got " + std::to_string(N));
  if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be > 0");
  if (!(hbar > 0.0)) throw std::invalid_argument("make_grid: hbar must be > 0");
  return GridSpec{N, L, hbar};
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("grid mismatch between operands");
}

cvector momentum_eigenvector(const GridSpec& g, double p) {
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * g.hbar);
  cvector v(g.N);
  for (int j = 0; j < g.N; ++j) v[j] = std::polar(norm, g.q(j) * p / g.hbar);
  return v;
}

namespace {

void check_length(const GridSpec& g, const cvector& v, const char* who) {
  if (static_cast<int>(v.size()) != g.N) {
    throw std::invalid_argument(std::string(who) + ": vector length does not match grid N");
  }
}

}  // namespace

cvector to_momentum(const GridSpec& g, const cvector& v) {
  check_length(g, v, "to_momentum");
  const int N = g.N;
  const double w = g.dq() / std::sqrt(2.0 * std::numbers::pi * g.hbar);
  cvector phases(N), out(N);
  for (int k = 0; k < N; ++k) {
    const double pk = g.p(k);
    for (int j = 0; j < N; ++j) phases[j] = std::polar(w, -g.q(j) * pk / g.hbar);
    out[k] = simd::cdotu(phases.data(), v.data(), static_cast<std::size_t>(N));
  }
  return out;
}

cvector from_momentum(const GridSpec& g, const cvector& v) {
  check_length(g, v, "from_momentum");
  const int N = g.N;
  const double w = g.dp() / std::sqrt(2.0 * std::numbers::pi * g.hbar);
  cvector phases(N), out(N);
  for (int j = 0; j < N; ++j) {
    const double qj = g.q(j);
    for (int k = 0; k < N; ++k) phases[k] = std::polar(w, qj * g.p(k) / g.hbar);
    out[j] = simd::cdotu(phases.data(), v.data(), static_cast<std::size_t>(N));
  }
  return out;
}

cvector fourier_matrix(const GridSpec& g) {
  const int N = g.N;
  const double w = g.dq() / std::sqrt(2.0 * std::numbers::pi * g.hbar);
  cvector m(static_cast<std::size_t>(N) * N);
  for (int k = 0; k < N; ++k) {
    const double pk = g.p(k);
    for (int j = 0; j < N; ++j) {
      m[static_cast<std::size_t>(k) * N + j] = std::polar(w, -g.q(j) * pk / g.hbar);
    }
  }
  return m;
}

cvector fourier_inverse_matrix(const GridSpec& g) {
  const int N = g.N;
  const double w = g.dp() / std::sqrt(2.0 * std::numbers::pi * g.hbar);
  cvector m(static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j) {
    const double qj = g.q(j);
    for (int k = 0; k < N; ++k) {
      m[static_cast<std::size_t>(j) * N + k] = std::polar(w, qj * g.p(k) / g.hbar);
    }
  }
  return m;
}

}  // namespace weylwig
