#ifndef WEYLWIG_STATES_HPP
#define WEYLWIG_STATES_HPP

#include <string>

#include "weylwig/operators.hpp"

namespace weylwig {

// ---- wavefunctions sampled on the position lattice -----------------------

// (pi sigma^2)^{-1/4} exp{-(q-q0)^2/(2 sigma^2) + i p0 q/hbar - i p0 q0/(2 hbar)}
cvector coherent_wavefunction(const GridSpec& g, double q0, double p0, double sigma = 1.0);

// harmonic-oscillator number state (width sigma ground state); n <= 30
cvector fock_wavefunction(const GridSpec& g, int n, double sigma = 1.0);

// normalized coh(q0,p0) + e^{i phase} coh(-q0,-p0)
cvector cat_wavefunction(const GridSpec& g, double q0, double p0,
                         double sigma = 1.0, double phase = 0.0);

double norm_squared(const GridSpec& g, const cvector& v);  // dq * sum |v|^2
cvector normalized(const GridSpec& g, const cvector& v);

// rho = |v><v| as a sampled kernel: K[a][b] = v[a] conj(v[b])
OperatorKernel pure_state_operator(const GridSpec& g, const cvector& v);

// ---- density states with validation metadata ------------------------------

struct DensityValidation {
  double herm_defect_rel = 0.0;  // vs max |K|
  double trace_defect = 0.0;     // |dq tr K - 1|
  double min_eigenvalue = 0.0;   // of M = dq K
  bool ok = false;
};

struct DensityState {
  OperatorKernel rho;
  DensityValidation validation;
};

// Hermiticity, unit trace and positivity of M = dq * K; positivity tolerance
// scales with N * machine epsilon * max eigenvalue so round-off is not flagged.
DensityValidation validate_density(const OperatorKernel& rho);

// throws std::domain_error naming the failing bound if not a valid density op
void require_density(const OperatorKernel& rho, const std::string& label);

// Support rule shared by all state builders and the CLI: the interval
// [center - 6 width, center + 6 width] must fit inside [-L, L]; throws
// std::domain_error naming the failing bound.
void require_support(const GridSpec& g, double center, double width,
                     const std::string& label);

// state builders; all validate and throw std::domain_error on support
// violations (6 sigma rule) or parameter bounds (n <= 30, nbar >= 0)
DensityState state_coherent(const GridSpec& g, double q0, double p0, double sigma = 1.0);
DensityState state_fock(const GridSpec& g, int n, double sigma = 1.0);
DensityState state_cat(const GridSpec& g, double q0, double p0,
                       double sigma = 1.0, double phase = 0.0);
// sum_n p_n |n><n| with p_n = nbar^n/(1+nbar)^{n+1}, truncated once the
// cumulative weight reaches 1 - 1e-12 (then renormalized); purity 1/(2 nbar + 1)
DensityState state_thermal(const GridSpec& g, double nbar, double sigma = 1.0);

// random mixed state: convex mixture of a few random coherent pure states
DensityState state_random_mixture(const GridSpec& g, std::mt19937_64& rng, int terms = 4);

}  // namespace weylwig

#endif
