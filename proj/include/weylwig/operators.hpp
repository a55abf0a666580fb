#ifndef WEYLWIG_OPERATORS_HPP
#define WEYLWIG_OPERATORS_HPP

#include <random>

#include "weylwig/grid.hpp"

namespace weylwig {

// Sampled position-space kernel, K[a][b] = <q_a| A |q_b>, row-major.
// Quadrature weight dq is carried by the operations (trace, matmul, apply),
// never folded into the stored entries.
struct OperatorKernel {
  GridSpec grid;
  cvector k;  // N*N row-major

  cdouble& at(int a, int b) { return k[static_cast<std::size_t>(a) * grid.N + b]; }
  const cdouble& at(int a, int b) const {
    return k[static_cast<std::size_t>(a) * grid.N + b];
  }
};

OperatorKernel zero_operator(const GridSpec& g);

double op_trace_real(const OperatorKernel& A);
cdouble op_trace(const OperatorKernel& A);

// C = A * B with the dq completeness weight: C[a][b] = dq * sum_c A[a][c] B[c][b]
OperatorKernel op_matmul(const OperatorKernel& A, const OperatorKernel& B, int threads = 1);

OperatorKernel op_dagger(const OperatorKernel& A);
OperatorKernel op_add(const OperatorKernel& A, const OperatorKernel& B);
OperatorKernel op_scale(cdouble s, const OperatorKernel& A);

// (A psi)(q_a) = dq * sum_b K[a][b] psi(q_b)
cvector op_apply(const OperatorKernel& A, const cvector& v);

double herm_defect(const OperatorKernel& A);   // max |K[a][b] - conj(K[b][a])|
double op_max_abs(const OperatorKernel& A);
double op_frobenius(const OperatorKernel& A);  // sqrt(sum |K|^2), unweighted

// ---- operator zoo -------------------------------------------------------

OperatorKernel op_identity(const GridSpec& g);   // delta_ab / dq, trace == N
OperatorKernel op_position(const GridSpec& g);   // q_a delta_ab / dq
// F^dagger diag(p_k) F via the explicit-phase lattice transform
OperatorKernel op_momentum(const GridSpec& g);
OperatorKernel op_parity(const GridSpec& g);     // delta_{a, N-1-b} / dq

// U(q0,p0) = exp{i (p0 q̂ - q0 p̂)/hbar}, factorized as
// (position-boost phase) x (cyclic lattice shift) x e^{-i p0 q0 / 2 hbar}.
// q0 must be lattice aligned: q0 = s * dq with integer s (|s| < N).
// Unitary exactly; U q̂ U† = q̂ - q0 holds away from the wrapped rows.
OperatorKernel op_displacement(const GridSpec& g, double q0, double p0);

// exp{i (x p̂ - k q̂)/hbar}: K[a][b] = delta_{q_b, q_a + x}/dq * e^{-i k (q_a+q_b)/(2 hbar)}.
// Equals op_displacement(-x, -k) exactly. x must be lattice aligned.
OperatorKernel op_weyl(const GridSpec& g, double x, double kk);

// delta(q̂ - q0) delta(p̂ - p0) = |q0><q0|p0><p0| (standard order, all q̂ left
// of p̂), rank one; antistandard is its adjoint. q0 must be lattice aligned,
// p0 is free. trace == 1/(2 pi hbar) either way.
enum class DeltaOrder { standard, antistandard };
OperatorKernel op_ordered_delta(const GridSpec& g, double q0, double p0, DeltaOrder order);

cdouble expectation(const OperatorKernel& rho, const OperatorKernel& A);

// index of the lattice point equal to q0; throws std::invalid_argument if q0
// is not lattice aligned within 1e-9 * dq
int lattice_index(const GridSpec& g, double q0);

// ---- random band-limited test operators ---------------------------------

// Superposition sum_i c_i |coh_i><coh_j| of coherent-state dyads with centers
// capped well inside the 6-sigma window, so kernels and symbols are
// band-limited on the grid. hermitize adds the dagger.
OperatorKernel random_bandlimited_operator(const GridSpec& g, std::mt19937_64& rng,
                                           int terms = 4, bool hermitize = true);

}  // namespace weylwig

#endif
