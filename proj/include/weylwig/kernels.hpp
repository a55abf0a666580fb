#ifndef WEYLWIG_KERNELS_HPP
#define WEYLWIG_KERNELS_HPP

#include <functional>
#include <vector>

#include "weylwig/grid.hpp"

namespace weylwig {

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

// product-trace kernel: K_l((q,p),(q',p')) = exp{ i (q - q') (p - p') / hbar }.
// With the second argument taken at (q', p) and the first at (q, p') this is
// the composition kernel exp{ i (q - q')(p' - p) / hbar }; one convention
// covers both uses.
cdouble kernel_K(const PhasePoint& a, const PhasePoint& b, double hbar);

// square-root kernel: xi = sqrt(2/(pi hbar)) exp{ 2 i (q - q') (p - p') / hbar }
cdouble kernel_xi(const PhasePoint& a, const PhasePoint& b, double hbar);

// ---- kernel identity checks ----------------------------------------------

struct MarginalCheckResult {
  double q_error = 0.0;  // relative: |lattice sum against f - 2 pi hbar f(q)|
  double p_error = 0.0;  // same with the roles of q and p exchanged
  int N = 0;
};

// Smeared delta recovery: sum_{j,k} dq dp K_l(at, (q_j, p_k)) f(q_j) should
// equal 2 pi hbar f(at.q), and the p analog likewise. `at` should be kept off
// the lattice so the sweep below has a genuine finite-N error to shrink.
MarginalCheckResult check_K_marginals(const GridSpec& g, const PhasePoint& at,
                                      const std::function<cdouble(double)>& test_fn);

// convergence sweep at fixed (L, hbar)
std::vector<MarginalCheckResult> sweep_K_marginals(const std::vector<int>& Ns, double L,
                                                   double hbar, const PhasePoint& at,
                                                   const std::function<cdouble(double)>& test_fn);

struct XiSqrtResult {
  cdouble extrapolated;             // damping -> 0 limit of the integral
  cdouble target;                   // kernel_K(a, b)
  double error = 0.0;               // |extrapolated - target|
  std::vector<double> raw_errors;   // |I(eps_i) - target| per damping value
  std::vector<double> stage_errors; // error after each extrapolation depth
};

// Integral over the middle point (u, v) of xi((u,v), a) xi((u,v), b) with the
// regulator e^{-eps (u^2 + v^2)}, extrapolated through the damping sequence to
// eps = 0; equals kernel_K(a, b) in the limit. Fresnel-conditional, hence the
// regulator. The damping sequence must be positive and strictly decreasing or
// std::invalid_argument is thrown.
XiSqrtResult check_xi_sqrt(const PhasePoint& a, const PhasePoint& b, double hbar,
                           const std::vector<double>& damping);

// throws std::invalid_argument unless positive and strictly decreasing
void require_damping(const std::vector<double>& damping);

// Neville polynomial extrapolation of values(eps_i) to eps = 0, shared by the
// damped-quadrature checks. depth limits how many trailing points take part
// (0 or >= size: all of them).
cdouble extrapolate_to_zero(const std::vector<double>& eps,
                            const std::vector<cdouble>& values, std::size_t depth = 0);

}  // namespace weylwig

#endif
