#ifndef WEYLWIG_WIGNER_HPP
#define WEYLWIG_WIGNER_HPP

#include "weylwig/kernels.hpp"
#include "weylwig/operators.hpp"

namespace weylwig {

// A function on the N x N phase-space lattice, row-major in (j, k):
// value(j, k) at (q_j, P(k)) where P is g.p for the conjugate lattice
// (spacing dp, used by representatives) or g.pw for the Wigner lattice
// (spacing dp/2, used by symbols and distributions).
struct PhaseSpaceFunction {
  GridSpec grid;
  bool wigner_lattice = false;
  cvector f;  // N*N

  double pcoord(int k) const { return wigner_lattice ? grid.pw(k) : grid.p(k); }
  double pstep() const { return wigner_lattice ? grid.dpw() : grid.dp(); }
  cdouble& at(int j, int k) { return f[static_cast<std::size_t>(j) * grid.N + k]; }
  const cdouble& at(int j, int k) const {
    return f[static_cast<std::size_t>(j) * grid.N + k];
  }
};

// ---- left / right representatives (conjugate lattice) ---------------------

// A_l(q_j, p_k) = (2 pi hbar)^{-1/2} <q_j|A|p_k> e^{-i q_j p_k/hbar}
//              = dq/(2 pi hbar) * sum_b K[j][b] e^{i (q_b - q_j) p_k / hbar}
PhaseSpaceFunction left_rep(const OperatorKernel& A, int threads = 1);
// A_r(q_j, p_k) = <p_k|A|q_j> <q_j|p_k>, roles of q and p interchanged
PhaseSpaceFunction right_rep(const OperatorKernel& A, int threads = 1);

struct RepMarginals {
  cvector q_profile;  // dp-weighted p-sum: <q_j|A|q_j>, exact on the lattice
  cvector p_profile;  // dq-weighted q-sum: <p_k|A|p_k>, exact on the lattice
};
// throws std::invalid_argument if F is on the wigner lattice
RepMarginals rep_marginals(const PhaseSpaceFunction& F);

// dq dp sum = tr A, exact
cdouble rep_trace(const PhaseSpaceFunction& rep);

// C_l(q_j, p_k) = sum_{j',k'} dq dp A_l(q_j, p_{k'})
//                 e^{i (q_j - q_{j'})(p_{k'} - p_k)/hbar} B_l(q_{j'}, p_k),
// factorized through phase tables into three N^3 products. Exact lattice
// identity: equals left_rep(op_matmul(A, B)).
PhaseSpaceFunction compose_left(const PhaseSpaceFunction& Al, const PhaseSpaceFunction& Bl,
                                int threads = 1);
// unfactorized O(N^4) form, kept as the reference for the factorized path
PhaseSpaceFunction compose_left_naive(const PhaseSpaceFunction& Al,
                                      const PhaseSpaceFunction& Bl);

// tr(AB) = sum_{x,x'} dq dp dq' dp' A_l(x) e^{i(q-q')(p-p')/hbar} B_l(x'),
// factorized, O(N^3). Exact lattice identity; symmetric under swap.
cdouble product_trace_via_K(const PhaseSpaceFunction& Al, const PhaseSpaceFunction& Bl,
                            int threads = 1);
cdouble product_trace_via_K_naive(const PhaseSpaceFunction& Al,
                                  const PhaseSpaceFunction& Bl);

// tr(AB) = (1/2 pi hbar) sum dq dpw A(x) B(x) over Weyl symbols
cdouble trace_pairing(const PhaseSpaceFunction& Aw, const PhaseSpaceFunction& Bw);

// ---- Weyl symbol map (wigner lattice) --------------------------------------

// chord sum A(q_j, pw_k) = 2 dq sum_m K[j-m][j+m] e^{2 i pw_k m dq / hbar},
// out-of-window chords contributing zero. On this lattice the identity
// operator maps to the constant 2 (only even chords sample the delta).
PhaseSpaceFunction weyl_symbol(const OperatorKernel& A, int threads = 1);

// same chord sum at lattice q and arbitrary p; throws std::invalid_argument
// for off-lattice q
cdouble weyl_symbol_at(const OperatorKernel& A, double q, double p);

// Inverse of weyl_symbol: even (a+b) entries invert the chord sum exactly;
// odd (a+b) midpoints are filled by trigonometric interpolation of F in q.
// Spectrally accurate for band-limited operators. Throws on conjugate-lattice
// input.
OperatorKernel weyl_quantize(const PhaseSpaceFunction& F, int threads = 1);

// W = weyl_symbol(rho) / (2 pi hbar)
PhaseSpaceFunction wigner_distribution(const OperatorKernel& rho, int threads = 1);

// dpw-weighted p-sum: position density K[j][j], exact on the lattice
std::vector<double> wigner_marginal_q(const PhaseSpaceFunction& W);
// dq-weighted q-sum: momentum density at pw_k, spectrally accurate
std::vector<double> wigner_marginal_p(const PhaseSpaceFunction& W);

// xi route to the symbol: sqrt(2 pi hbar) * damped Riemann sum over the
// conjugate lattice of xi(at; x') A_l(x'), regulator e^{-eps(q'^2+p'^2)},
// extrapolated through `damping` (same validation as check_xi_sqrt).
std::vector<cdouble> xi_transform(const PhaseSpaceFunction& Al,
                                  const std::vector<PhasePoint>& at,
                                  const std::vector<double>& damping);

// ---- phase-point operators --------------------------------------------------

// W(q_{j0}, p0)[a][b] = delta_{a+b, 2 j0} e^{i p0 (q_a - q_b)/hbar}/(pi hbar dq);
// equals U(q0,p0) P U(q0,p0)^dagger / (pi hbar) masked to the in-window
// anti-diagonal. Hermitian exactly; q0 must be lattice aligned.
OperatorKernel phase_point_op(const GridSpec& g, double q0, double p0);

// dpw-weighted momentum sum: exactly the projector |q0><q0| (sampled kernel
// entry 1/dq^2 at (j0, j0), zero elsewhere)
OperatorKernel phase_point_q_projector(const GridSpec& g, double q0);
// dq-weighted position sum: (1/pi hbar) e^{i p0 (q_a-q_b)/hbar} on even
// anti-diagonals and zero on odd ones; the continuum |p0><p0| appears only
// in the smeared sense
OperatorKernel phase_point_p_smear(const GridSpec& g, double p0);
// dq dpw sum over both: exactly op_identity (trace N)
OperatorKernel phase_point_resolution(const GridSpec& g);

struct AnticomCheck {
  double q_defect = 0.0;      // max entry of {q̂,W}/2 - q0 W; zero by structure
  double p_defect_raw = 0.0;  // same for p̂ via Fourier conjugation; exact only
                              // when the anti-diagonal does not wrap (q0 = 0)
  double p_defect = 0.0;      // momentum defect smeared against band-limited
                              // probes; decays spectrally with N
  double scale = 0.0;         // max |W| entry
};
AnticomCheck phase_point_anticom_check(const GridSpec& g, double q0, double p0,
                                       std::uint64_t seed = 12345);

struct SymplecticFourierResult {
  double defect = 0.0;  // frobenius norm of (reconstruction - W)
  double scale = 0.0;   // frobenius norm of W
  int x_cutoff = 0;
};
// Reconstructs phase_point_op(q0, p0) as the symplectic Fourier sum
//   sum_{x,k} (dq dk/(2 pi hbar)^2) e^{-i (x p0 - k q0)/hbar} op_weyl(x, k)
// over chord-lattice x with |x| <= cutoff*dq and a 2N-point dp-spaced k comb.
// Entries with |a-b| <= cutoff are reproduced exactly; the defect is the
// norm of the missing tail, reaching round-off at cutoff N-1.
SymplecticFourierResult symplectic_fourier_once(const GridSpec& g, double q0, double p0,
                                                int x_cutoff);
std::vector<SymplecticFourierResult> symplectic_fourier_check(
    const GridSpec& g, double q0, double p0, const std::vector<int>& x_cutoffs);

}  // namespace weylwig

#endif
