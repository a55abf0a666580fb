#ifndef WEYLWIG_ORACLE_HPP
#define WEYLWIG_ORACLE_HPP

#include <functional>
#include <string>

#include "weylwig/operators.hpp"

namespace weylwig {

// Brute-force and closed-form references, deliberately slow and simple.
// Oracles consume analytic kernels, never the lattice discretizations, so
// they share no code path with the library under test. trace_oracle is the
// one exception: it is the matrix-trace reference for lattice identities.

// analytic position-space kernel <x|A|y>
using AnalyticKernel = std::function<cdouble(double, double)>;

AnalyticKernel analytic_coherent_kernel(double q0, double p0, double sigma, double hbar);
AnalyticKernel analytic_fock_kernel(int n, double sigma, double hbar);
// Boltzmann mixture over number states in closed (Mehler) form
AnalyticKernel analytic_thermal_kernel(double nbar, double sigma, double hbar);

// Plain-trapezoid chord integral
//   integral dy <q - y/2 | A | q + y/2> e^{i p y / hbar}
// on a fine grid whose node count scales with `refinement` (>= 2, enforced;
// doubling it must not move validated-family outputs by more than 1e-10).
cdouble quad_weyl_symbol(const AnalyticKernel& kernel, double q, double p, double hbar,
                         int refinement);

// ---- closed-form Wigner functions ------------------------------------------

// coherent: (1/pi hbar) exp{-(q-q0)^2/sigma^2 - sigma^2 (p-p0)^2/hbar^2}
double oracle_wigner_coherent(double q, double p, double q0, double p0, double sigma,
                              double hbar);
// ((-1)^n/pi hbar) e^{-r^2} L_n(2 r^2), r^2 = q^2/sigma^2 + sigma^2 p^2/hbar^2
double oracle_wigner_fock(int n, double q, double p, double sigma, double hbar);
// (pi hbar (2 nbar + 1))^{-1} exp{-r^2/(2 nbar + 1)}
double oracle_wigner_thermal(double nbar, double q, double p, double sigma, double hbar);

// dispatcher over family name "coherent" | "fock" | "thermal"; throws
// std::invalid_argument on anything else
double closed_form_wigner(const std::string& family, double q, double p, double q0,
                          double p0, double n_or_nbar, double sigma, double hbar);

// Agreement gate: closed_form_wigner vs quad_weyl_symbol/(2 pi hbar) at 20
// seeded random points per family, relative error <= 1e-8. Every suite that
// consumes the closed forms must run this first; on failure the acceptance
// driver aborts with its own exit code.
bool oracle_gate(double hbar, std::uint64_t seed, double* worst_rel_err = nullptr);

// continuum left representative of the width-sigma vacuum state
cdouble oracle_left_rep_vacuum(double q, double p, double sigma, double hbar);

// A_l(q_j, p) as <q_j|A|p><p|q_j> through explicit momentum eigenvectors
cdouble oracle_left_rep_at(const OperatorKernel& A, int j, double p);

// matrix-trace reference: tr(AB) = dq^2 sum_{ab} A[a][b] B[b][a]
cdouble trace_oracle(const OperatorKernel& A, const OperatorKernel& B);

// Laguerre polynomial by recurrence, exposed for the gate's own unit test
double laguerre_poly(int n, double x);

}  // namespace weylwig

#endif
