#include "weylwig/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "weylwig/simd.hpp"
#include "weylwig/states.hpp"
#include "weylwig/threads.hpp"

namespace weylwig {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t sq(int n) { return static_cast<std::size_t>(n) * n; }

// q0 as an exact multiple of dq (a lattice shift, not necessarily a lattice
// point); |steps| must stay below N
int shift_steps(const GridSpec& g, double q0, const char* who) {
  const double raw = q0 / g.dq();
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 1e-9 || std::abs(rounded) >= g.N) {
    throw std::invalid_argument(std::string(who) +
                                ": displacement must be an exact lattice shift");
  }
  return static_cast<int>(rounded);
}
}  // namespace

OperatorKernel zero_operator(const GridSpec& g) {
  return OperatorKernel{g, cvector(sq(g.N))};
}

double op_trace_real(const OperatorKernel& A) { return op_trace(A).real(); }

cdouble op_trace(const OperatorKernel& A) {
  cdouble s = 0.0;
  for (int a = 0; a < A.grid.N; ++a) s += A.at(a, a);
  return s * A.grid.dq();
}

OperatorKernel op_matmul(const OperatorKernel& A, const OperatorKernel& B, int threads) {
  require_same_grid(A.grid, B.grid);
  OperatorKernel C = zero_operator(A.grid);
  simd::matmul(A.k.data(), B.k.data(), C.k.data(), static_cast<std::size_t>(A.grid.N),
               A.grid.dq(), threads);
  return C;
}

OperatorKernel op_dagger(const OperatorKernel& A) {
  OperatorKernel D = zero_operator(A.grid);
  for (int a = 0; a < A.grid.N; ++a) {
    for (int b = 0; b < A.grid.N; ++b) D.at(a, b) = std::conj(A.at(b, a));
  }
  return D;
}

OperatorKernel op_add(const OperatorKernel& A, const OperatorKernel& B) {
  require_same_grid(A.grid, B.grid);
  OperatorKernel C = A;
  for (std::size_t i = 0; i < C.k.size(); ++i) C.k[i] += B.k[i];
  return C;
}

OperatorKernel op_scale(cdouble s, const OperatorKernel& A) {
  OperatorKernel C = A;
  simd::cscale(s, C.k.data(), C.k.size());
  return C;
}

cvector op_apply(const OperatorKernel& A, const cvector& v) {
  if (static_cast<int>(v.size()) != A.grid.N) {
    throw std::invalid_argument("op_apply: vector length does not match grid N");
  }
  const int N = A.grid.N;
  cvector out(N);
  for (int a = 0; a < N; ++a) {
    out[a] = A.grid.dq() * simd::cdotu(&A.k[static_cast<std::size_t>(a) * N], v.data(),
                                       static_cast<std::size_t>(N));
  }
  return out;
}

double herm_defect(const OperatorKernel& A) {
  double d = 0.0;
  for (int a = 0; a < A.grid.N; ++a) {
    for (int b = 0; b <= a; ++b) {
      d = std::max(d, std::abs(A.at(a, b) - std::conj(A.at(b, a))));
    }
  }
  return d;
}

double op_max_abs(const OperatorKernel& A) {
  double m = 0.0;
  for (const cdouble& z : A.k) m = std::max(m, std::abs(z));
  return m;
}

double op_frobenius(const OperatorKernel& A) {
  double s = 0.0;
  for (const cdouble& z : A.k) s += std::norm(z);
  return std::sqrt(s);
}

OperatorKernel op_identity(const GridSpec& g) {
  OperatorKernel A = zero_operator(g);
  const double v = 1.0 / g.dq();
  for (int a = 0; a < g.N; ++a) A.at(a, a) = v;
  return A;
}

OperatorKernel op_position(const GridSpec& g) {
  OperatorKernel A = zero_operator(g);
  for (int a = 0; a < g.N; ++a) A.at(a, a) = g.q(a) / g.dq();
  return A;
}

OperatorKernel op_momentum(const GridSpec& g) {
  const int N = g.N;
  // K[a][b] depends only on r = a - b:
  //   f(r) = (dp / 2 pi hbar) sum_k p_k e^{i r dq p_k / hbar}
  cvector f(2 * static_cast<std::size_t>(N) - 1);
  const double scale = g.dp() / (kTwoPi * g.hbar);
  for (int r = -(N - 1); r <= N - 1; ++r) {
    cdouble s = 0.0;
    for (int k = 0; k < N; ++k) s += g.p(k) * std::polar(1.0, r * g.dq() * g.p(k) / g.hbar);
    f[static_cast<std::size_t>(r + N - 1)] = scale * s;
  }
  OperatorKernel A = zero_operator(g);
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) A.at(a, b) = f[static_cast<std::size_t>(a - b + N - 1)];
  }
  return A;
}

OperatorKernel op_parity(const GridSpec& g) {
  OperatorKernel A = zero_operator(g);
  const double v = 1.0 / g.dq();
  for (int a = 0; a < g.N; ++a) A.at(a, g.reflect(a)) = v;
  return A;
}

OperatorKernel op_displacement(const GridSpec& g, double q0, double p0) {
  const int s = shift_steps(g, q0, "op_displacement");
  const int N = g.N;
  // exp{i(p0 q - q0 p)/hbar} = e^{-i p0 q0/2hbar} e^{i p0 q/hbar} e^{-i q0 p/hbar};
  // the momentum factor is the cyclic lattice shift psi(q) -> psi(q - q0).
  // Wrapped rows keep the operator exactly unitary; the conjugation property
  // U q U^dag = q - q0 holds on the rows that do not wrap.
  OperatorKernel A = zero_operator(g);
  const double inv_dq = 1.0 / g.dq();
  for (int a = 0; a < N; ++a) {
    const int b = ((a - s) % N + N) % N;
    A.at(a, b) = std::polar(inv_dq, (p0 * g.q(a) - 0.5 * p0 * q0) / g.hbar);
  }
  return A;
}

OperatorKernel op_weyl(const GridSpec& g, double x, double kk) {
  const int s = shift_steps(g, x, "op_weyl");
  const int N = g.N;
  // <q_a| exp{i(x p - k q)/hbar} |q_b> = delta_{q_b, q_a + x}/dq
  //   * e^{-i k (q_a + q_b)/(2 hbar)}.
  // Same generator as op_displacement(-x, -k); the phase is written through
  // q_a + x/2 so wrapped rows (kept for exact unitarity) match that product
  // form, while on ordinary rows q_a + x/2 = (q_a + q_b)/2 literally.
  OperatorKernel A = zero_operator(g);
  const double inv_dq = 1.0 / g.dq();
  for (int a = 0; a < N; ++a) {
    const int b = ((a + s) % N + N) % N;
    A.at(a, b) = std::polar(inv_dq, -kk * (g.q(a) + 0.5 * x) / g.hbar);
  }
  return A;
}

OperatorKernel op_ordered_delta(const GridSpec& g, double q0, double p0, DeltaOrder order) {
  const int j0 = lattice_index(g, q0);
  const int N = g.N;
  OperatorKernel A = zero_operator(g);
  const double mag = 1.0 / (kTwoPi * g.hbar * g.dq());
  // standard order |q0><q0|p0><p0|: K[a][b] = delta_{a,j0} <q0|p0><p0|q_b>/dq
  for (int b = 0; b < N; ++b) {
    const cdouble v = std::polar(mag, p0 * (q0 - g.q(b)) / g.hbar);
    if (order == DeltaOrder::standard) {
      A.at(j0, b) = v;
    } else {
      A.at(b, j0) = std::conj(v);
    }
  }
  return A;
}

cdouble expectation(const OperatorKernel& rho, const OperatorKernel& A) {
  require_same_grid(rho.grid, A.grid);
  const int N = rho.grid.N;
  cdouble s = 0.0;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) s += rho.at(a, b) * A.at(b, a);
  }
  const double dq = rho.grid.dq();
  return dq * dq * s;
}

int lattice_index(const GridSpec& g, double q0) {
  const double raw = q0 / g.dq() + 0.5 * (g.N - 1);
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 1e-9 || rounded < 0 || rounded >= g.N) {
    throw std::invalid_argument("q0 is not a lattice point of this grid");
  }
  return static_cast<int>(rounded);
}

OperatorKernel random_bandlimited_operator(const GridSpec& g, std::mt19937_64& rng,
                                           int terms, bool hermitize) {
  std::uniform_real_distribution<double> uq(-2.0, 2.0), up(-1.5, 1.5), us(0.8, 1.25),
      uc(-1.0, 1.0);
  OperatorKernel A = zero_operator(g);
  const int N = g.N;
  for (int t = 0; t < terms; ++t) {
    const cvector u = coherent_wavefunction(g, uq(rng), up(rng), us(rng));
    const cvector v = coherent_wavefunction(g, uq(rng), up(rng), us(rng));
    const cdouble c{uc(rng), uc(rng)};
    for (int a = 0; a < N; ++a) {
      const cdouble cu = c * u[a];
      for (int b = 0; b < N; ++b) A.at(a, b) += cu * std::conj(v[b]);
    }
  }
  if (hermitize) {
    OperatorKernel D = op_dagger(A);
    for (std::size_t i = 0; i < A.k.size(); ++i) A.k[i] = 0.5 * (A.k[i] + D.k[i]);
  }
  const double m = op_max_abs(A);
  if (m > 0.0) simd::cscale(1.0 / m, A.k.data(), A.k.size());
  return A;
}

}  // namespace weylwig
