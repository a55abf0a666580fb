#include "weylwig/states.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "weylwig/eig.hpp"
#include "weylwig/simd.hpp"

namespace weylwig {

namespace {
constexpr double kPi = std::numbers::pi;

void check_sigma(double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("state width sigma must be > 0");
}

// normalized recurrence phi_{m+1} = xi sqrt(2/(m+1)) phi_m - sqrt(m/(m+1)) phi_{m-1};
// every intermediate stays O(1), so no large normalization constants appear and
// arbitrary n is safe (the public n <= 30 cap is a support-rule contract, not a
// stability one)
cvector fock_samples(const GridSpec& g, int n, double sigma) {
  const double norm = std::pow(kPi * sigma * sigma, -0.25);
  cvector v(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double xi = g.q(j) / sigma;
    double prev = 0.0;
    double cur = norm * std::exp(-0.5 * xi * xi);
    for (int m = 0; m < n; ++m) {
      const double next =
          xi * std::sqrt(2.0 / (m + 1)) * cur - std::sqrt(double(m) / (m + 1)) * prev;
      prev = cur;
      cur = next;
    }
    v[j] = cur;
  }
  return v;
}

}  // namespace

cvector coherent_wavefunction(const GridSpec& g, double q0, double p0, double sigma) {
  check_sigma(sigma);
  const double norm = std::pow(kPi * sigma * sigma, -0.25);
  cvector v(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double q = g.q(j);
    const double u = (q - q0) / sigma;
    v[j] = std::polar(norm * std::exp(-0.5 * u * u),
                      (p0 * q - 0.5 * p0 * q0) / g.hbar);
  }
  return v;
}

cvector fock_wavefunction(const GridSpec& g, int n, double sigma) {
  check_sigma(sigma);
  if (n < 0 || n > 30) throw std::domain_error("fock index n must be in [0, 30]");
  return fock_samples(g, n, sigma);
}

cvector cat_wavefunction(const GridSpec& g, double q0, double p0, double sigma,
                         double phase) {
  const cvector a = coherent_wavefunction(g, q0, p0, sigma);
  const cvector b = coherent_wavefunction(g, -q0, -p0, sigma);
  const cdouble w = std::polar(1.0, phase);
  cvector v(g.N);
  for (int j = 0; j < g.N; ++j) v[j] = a[j] + w * b[j];
  return normalized(g, v);
}

double norm_squared(const GridSpec& g, const cvector& v) {
  double s = 0.0;
  for (const cdouble& z : v) s += std::norm(z);
  return g.dq() * s;
}

cvector normalized(const GridSpec& g, const cvector& v) {
  const double n2 = norm_squared(g, v);
  if (!(n2 > 0.0)) throw std::domain_error("cannot normalize a zero vector");
  cvector out = v;
  simd::cscale(1.0 / std::sqrt(n2), out.data(), out.size());
  return out;
}

OperatorKernel pure_state_operator(const GridSpec& g, const cvector& v) {
  if (static_cast<int>(v.size()) != g.N) {
    throw std::invalid_argument("pure_state_operator: vector length mismatch");
  }
  OperatorKernel A = zero_operator(g);
  for (int a = 0; a < g.N; ++a) {
    for (int b = 0; b < g.N; ++b) A.at(a, b) = v[a] * std::conj(v[b]);
  }
  return A;
}

DensityValidation validate_density(const OperatorKernel& rho) {
  DensityValidation r;
  const double scale = std::max(op_max_abs(rho), std::numeric_limits<double>::min());
  r.herm_defect_rel = herm_defect(rho) / scale;
  r.trace_defect = std::abs(op_trace(rho) - cdouble{1.0, 0.0});

  // eigenvalues of M = dq K (the dimensionless density matrix)
  cvector m = rho.k;
  simd::cscale(rho.grid.dq(), m.data(), m.size());
  const std::vector<double> ev = hermitian_eigenvalues(std::move(m), rho.grid.N);
  r.min_eigenvalue = ev.front();
  const double lmax = std::max(ev.back(), 0.0);
  const double eig_tol =
      std::max(1e-10, rho.grid.N * std::numeric_limits<double>::epsilon() * lmax);
  r.ok = r.herm_defect_rel <= 1e-10 && r.trace_defect <= 1e-10 &&
         r.min_eigenvalue >= -eig_tol;
  return r;
}

void require_density(const OperatorKernel& rho, const std::string& label) {
  const DensityValidation v = validate_density(rho);
  if (v.ok) return;
  std::ostringstream os;
  os << label << " is not a valid density operator:";
  if (v.herm_defect_rel > 1e-10) os << " hermiticity defect " << v.herm_defect_rel << " > 1e-10;";
  if (v.trace_defect > 1e-10) os << " trace defect " << v.trace_defect << " > 1e-10;";
  if (v.min_eigenvalue < -1e-10) os << " min eigenvalue " << v.min_eigenvalue << " < -1e-10;";
  throw std::domain_error(os.str());
}

void require_support(const GridSpec& g, double center, double width,
                     const std::string& label) {
  const double lo = center - 6.0 * width;
  const double hi = center + 6.0 * width;
  if (lo < -g.L || hi > g.L) {
    std::ostringstream os;
    os << label << ": support [" << lo << ", " << hi
       << "] (center " << center << ", 6 x width " << 6.0 * width
       << ") exceeds the grid window (-" << g.L << ", " << g.L << ")";
    throw std::domain_error(os.str());
  }
}

namespace {

DensityState finish_pure(const GridSpec& g, const cvector& psi) {
  DensityState s{pure_state_operator(g, normalized(g, psi)), {}};
  s.validation = validate_density(s.rho);
  return s;
}

}  // namespace

DensityState state_coherent(const GridSpec& g, double q0, double p0, double sigma) {
  check_sigma(sigma);
  require_support(g, q0, sigma, "state_coherent");
  return finish_pure(g, coherent_wavefunction(g, q0, p0, sigma));
}

DensityState state_fock(const GridSpec& g, int n, double sigma) {
  check_sigma(sigma);
  if (n < 0 || n > 30) throw std::domain_error("state_fock: n must be in [0, 30]");
  require_support(g, 0.0, sigma, "state_fock");
  return finish_pure(g, fock_wavefunction(g, n, sigma));
}

DensityState state_cat(const GridSpec& g, double q0, double p0, double sigma, double phase) {
  check_sigma(sigma);
  require_support(g, q0, sigma, "state_cat");
  require_support(g, -q0, sigma, "state_cat");
  return finish_pure(g, cat_wavefunction(g, q0, p0, sigma, phase));
}

DensityState state_thermal(const GridSpec& g, double nbar, double sigma) {
  check_sigma(sigma);
  if (nbar < 0.0) throw std::domain_error("state_thermal: nbar must be >= 0");
  if (nbar == 0.0) return state_fock(g, 0, sigma);
  require_support(g, 0.0, sigma, "state_thermal");

  const double lam = nbar / (1.0 + nbar);
  OperatorKernel A = zero_operator(g);
  double cum = 0.0;
  double total = 0.0;
  constexpr int kMaxLevels = 200;  // internal cap; weights decay geometrically
  for (int n = 0; n < kMaxLevels && cum < 1.0 - 1e-12; ++n) {
    const double pn = std::pow(lam, n) * (1.0 - lam);
    cum += pn;
    const cvector v = fock_samples(g, n, sigma);
    const double vn = norm_squared(g, v);
    if (!(vn > 0.0)) continue;
    const double w = pn / vn;  // renormalizes each truncated level exactly
    total += pn;
    for (int a = 0; a < g.N; ++a) {
      for (int b = 0; b < g.N; ++b) A.at(a, b) += w * v[a] * std::conj(v[b]);
    }
  }
  simd::cscale(1.0 / total, A.k.data(), A.k.size());
  DensityState s{std::move(A), {}};
  s.validation = validate_density(s.rho);
  return s;
}

DensityState state_random_mixture(const GridSpec& g, std::mt19937_64& rng, int terms) {
  std::uniform_real_distribution<double> uq(-2.0, 2.0), up(-1.5, 1.5), us(0.8, 1.25),
      uw(0.2, 1.0);
  OperatorKernel A = zero_operator(g);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const cvector v = normalized(g, coherent_wavefunction(g, uq(rng), up(rng), us(rng)));
    const double w = uw(rng);
    total += w;
    for (int a = 0; a < g.N; ++a) {
      for (int b = 0; b < g.N; ++b) A.at(a, b) += w * v[a] * std::conj(v[b]);
    }
  }
  simd::cscale(1.0 / total, A.k.data(), A.k.size());
  DensityState s{std::move(A), {}};
  s.validation = validate_density(s.rho);
  return s;
}

}  // namespace weylwig
