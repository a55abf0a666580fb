#include "weylwig/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace weylwig {

namespace {
constexpr double kPi = std::numbers::pi;
}

cdouble kernel_K(const PhasePoint& a, const PhasePoint& b, double hbar) {
  return std::polar(1.0, (a.q - b.q) * (a.p - b.p) / hbar);
}

cdouble kernel_xi(const PhasePoint& a, const PhasePoint& b, double hbar) {
  return std::polar(std::sqrt(2.0 / (kPi * hbar)), 2.0 * (a.q - b.q) * (a.p - b.p) / hbar);
}

MarginalCheckResult check_K_marginals(const GridSpec& g, const PhasePoint& at,
                                      const std::function<cdouble(double)>& test_fn) {
  const int N = g.N;
  const double dq = g.dq(), dp = g.dp(), hbar = g.hbar;
  const double two_pi_hbar = 2.0 * kPi * hbar;

  // sum_{j,k} dq dp K_l(at, (q_j, p_k)) f(q_j)  vs  2 pi hbar f(at.q)
  cdouble sq = 0.0;
  // and the analog weighted by f(p_k)          vs  2 pi hbar f(at.p)
  cdouble sp = 0.0;
  for (int j = 0; j < N; ++j) {
    const double dq_j = at.q - g.q(j);
    const cdouble fq = test_fn(g.q(j));
    cdouble row_q = 0.0, row_p = 0.0;
    for (int k = 0; k < N; ++k) {
      const cdouble K = std::polar(1.0, dq_j * (at.p - g.p(k)) / hbar);
      row_q += K;
      row_p += K * test_fn(g.p(k));
    }
    sq += fq * row_q;
    sp += row_p;
  }
  sq *= dq * dp;
  sp *= dq * dp;

  MarginalCheckResult r;
  r.N = N;
  const cdouble tq = two_pi_hbar * test_fn(at.q);
  const cdouble tp = two_pi_hbar * test_fn(at.p);
  // relative error against the target; absolute when the target vanishes
  r.q_error = std::abs(tq) > 0.0 ? std::abs(sq - tq) / std::abs(tq) : std::abs(sq);
  r.p_error = std::abs(tp) > 0.0 ? std::abs(sp - tp) / std::abs(tp) : std::abs(sp);
  return r;
}

std::vector<MarginalCheckResult> sweep_K_marginals(
    const std::vector<int>& Ns, double L, double hbar, const PhasePoint& at,
    const std::function<cdouble(double)>& test_fn) {
  std::vector<MarginalCheckResult> out;
  out.reserve(Ns.size());
  for (int n : Ns) out.push_back(check_K_marginals(make_grid(n, L, hbar), at, test_fn));
  return out;
}

void require_damping(const std::vector<double>& damping) {
  if (damping.empty()) throw std::invalid_argument("damping sequence must be non-empty");
  double prev = std::numeric_limits<double>::infinity();
  for (double e : damping) {
    if (!(e > 0.0) || !(e < prev)) {
      throw std::invalid_argument("damping sequence must be positive and strictly decreasing");
    }
    prev = e;
  }
}

cdouble extrapolate_to_zero(const std::vector<double>& eps,
                            const std::vector<cdouble>& values, std::size_t depth) {
  if (eps.size() != values.size() || eps.empty()) {
    throw std::invalid_argument("extrapolate_to_zero: mismatched inputs");
  }
  std::size_t n = eps.size();
  std::size_t first = 0;
  if (depth != 0 && depth < n) first = n - depth;
  // Neville tableau evaluated at eps = 0
  std::vector<cdouble> t(values.begin() + first, values.end());
  std::vector<double> x(eps.begin() + first, eps.end());
  const std::size_t m = t.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double xi = x[i], xj = x[i + level];
      t[i] = ((0.0 - xj) * t[i] - (0.0 - xi) * t[i + 1]) / (xi - xj);
    }
  }
  return t[0];
}

namespace {

// Regulated Fresnel integral
//   I(eps) = integral du dv xi((u,v),a) xi((u,v),b) e^{-eps (u^2 + v^2)}
// by trapezoid on [-R, R]^2. The exponent is linear in v for fixed u, so the
// inner sweep is a single phase recurrence (refreshed periodically so the
// rotation never drifts).
cdouble xi_pair_integral(const PhasePoint& a, const PhasePoint& b, double hbar,
                         double eps, double R, int M) {
  const double du = 2.0 * R / (M - 1);
  const double pref = 2.0 / (kPi * hbar);  // |xi|^2 of the two kernels
  // exponent/(i) = (2/hbar) [ 2uv - u (a.p + b.p) - v (a.q + b.q) + a.q a.p + b.q b.p ]
  const double c0 = 2.0 / hbar * (a.q * a.p + b.q * b.p);
  const double sp = a.p + b.p, sq = a.q + b.q;

  cdouble total = 0.0;
  for (int i = 0; i < M; ++i) {
    const double u = -R + i * du;
    const double wu = (i == 0 || i == M - 1) ? 0.5 : 1.0;
    const double gu = std::exp(-eps * u * u) * wu;
    const double theta = 2.0 / hbar * (2.0 * u - sq) * du;  // per-step v rotation
    const cdouble step = std::polar(1.0, theta);
    // v-independent part of the phase at v = -R
    const double phi0 = 2.0 / hbar * (-u * sp) + c0 + 2.0 / hbar * (2.0 * u - sq) * (-R);
    cdouble rot = std::polar(1.0, phi0);
    cdouble row = 0.0;
    for (int j = 0; j < M; ++j) {
      const double v = -R + j * du;
      const double wv = (j == 0 || j == M - 1) ? 0.5 : 1.0;
      row += (std::exp(-eps * v * v) * wv) * rot;
      rot *= step;
      if ((j & 511) == 511) {
        rot = std::polar(1.0, phi0 + theta * (j + 1));
      }
    }
    total += gu * row;
  }
  return pref * du * du * total;
}

}  // namespace

XiSqrtResult check_xi_sqrt(const PhasePoint& a, const PhasePoint& b, double hbar,
                           const std::vector<double>& damping) {
  require_damping(damping);
  // Node spacing is set by the largest phase gradient 4R/hbar; the 2 pi/du
  // alias frequency stays several regulator widths above it.
  const double R = 14.0;
  const int M = 1201;

  XiSqrtResult r;
  r.target = kernel_K(a, b, hbar);
  std::vector<cdouble> vals;
  vals.reserve(damping.size());
  for (double eps : damping) {
    vals.push_back(xi_pair_integral(a, b, hbar, eps, R, M));
    r.raw_errors.push_back(std::abs(vals.back() - r.target));
  }
  for (std::size_t depth = 1; depth <= vals.size(); ++depth) {
    const cdouble e = extrapolate_to_zero(damping, vals, depth);
    r.stage_errors.push_back(std::abs(e - r.target));
    if (depth == vals.size()) r.extrapolated = e;
  }
  r.error = std::abs(r.extrapolated - r.target);
  return r;
}

}  // namespace weylwig
