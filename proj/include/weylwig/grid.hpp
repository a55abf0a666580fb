#ifndef WEYLWIG_GRID_HPP
#define WEYLWIG_GRID_HPP

#include <complex>
#include <vector>

namespace weylwig {

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

// Symmetric half-offset position lattice on [-L, L) with its two conjugate
// momentum lattices. q_j = (j - (N-1)/2) * dq, so the lattice is exactly
// reflection-symmetric (q_{N-1-j} = -q_j) and never contains q = 0 for even N.
struct GridSpec {
  int N = 0;
  double L = 0.0;
  double hbar = 1.0;

  double dq() const { return 2.0 * L / N; }
  // conjugate momentum spacing; the p lattice spans one full Fourier period
  double dp() const;
  // Wigner momentum spacing (half of dp); chord transforms live on this lattice
  double dpw() const { return 0.5 * dp(); }

  double q(int j) const { return (j - 0.5 * (N - 1)) * dq(); }
  double p(int k) const { return (k - 0.5 * (N - 1)) * dp(); }
  double pw(int k) const { return (k - 0.5 * (N - 1)) * dpw(); }

  int reflect(int j) const { return N - 1 - j; }

  bool operator==(const GridSpec&) const = default;
};

// throws std::invalid_argument unless N >= 4, L > 0, hbar > 0
GridSpec make_grid(int N, double L, double hbar);

void require_same_grid(const GridSpec& a, const GridSpec& b);

// <q_j | p> sampled momentum eigenvector, (2*pi*hbar)^{-1/2} e^{i q_j p / hbar}
cvector momentum_eigenvector(const GridSpec& g, double p);

// psi~(p_k) = sum_j dq (2*pi*hbar)^{-1/2} e^{-i q_j p_k / hbar} psi(q_j).
// Exactly unitary between the dq- and dp-weighted norms.
cvector to_momentum(const GridSpec& g, const cvector& v);
// inverse transform; from_momentum(to_momentum(v)) == v to roundoff
cvector from_momentum(const GridSpec& g, const cvector& v);

// Explicit transform matrices (row-major N x N) for bulk use.
// fourier_matrix[k][j]   = dq (2*pi*hbar)^{-1/2} e^{-i q_j p_k / hbar}
// fourier_inverse[j][k]  = dp (2*pi*hbar)^{-1/2} e^{+i q_j p_k / hbar}
cvector fourier_matrix(const GridSpec& g);
cvector fourier_inverse_matrix(const GridSpec& g);

}  // namespace weylwig

#endif
