#include "weylwig/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "weylwig/eig.hpp"
#include "weylwig/kernels.hpp"
#include "weylwig/operators.hpp"
#include "weylwig/oracle.hpp"
#include "weylwig/states.hpp"
#include "weylwig/threads.hpp"
#include "weylwig/wigner.hpp"

namespace weylwig {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CheckEntry make_entry(std::string name, double measured, double tolerance) {
  CheckEntry e;
  e.name = std::move(name);
  e.measured = measured;
  e.tolerance = tolerance;
  e.pass = std::isfinite(measured) && measured <= tolerance;
  return e;
}

double max_abs(const cvector& v) {
  double m = 0.0;
  for (const cdouble& z : v) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const cvector& a, const cvector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double safe_div(double num, double den) { return num / std::max(den, 1e-300); }

// normalized oscillator eigenfunctions, local to the closed-form marginal
// references so the suite does not lean on the state builders it is checking
double hermite_fn(int n, double u) {
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
  for (int m = 0; m < n; ++m) {
    const double next =
        u * std::sqrt(2.0 / (m + 1)) * cur - std::sqrt(double(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

GridSpec odd_companion(const GridSpec& g) {
  return (g.N % 2 == 1) ? g : make_grid(g.N + 1, g.L, g.hbar);
}

// ---- reps ------------------------------------------------------------------

std::vector<CheckEntry> suite_reps(const GridSpec& g, std::uint64_t seed, int threads) {
  std::vector<CheckEntry> out;
  std::mt19937_64 rng(seed + 0x101);
  const double two_pi_hbar = 2.0 * kPi * g.hbar;

  {
    PhaseSpaceFunction F = left_rep(op_identity(g), threads);
    double d = 0.0;
    for (const cdouble& z : F.f) d = std::max(d, std::abs(z - 1.0 / two_pi_hbar));
    out.push_back(make_entry("reps.identity-flat", d * two_pi_hbar, 1e-12));
  }
  {
    PhaseSpaceFunction F = left_rep(state_coherent(g, 0.0, 0.0, 1.0).rho, threads);
    double d = 0.0;
    double scale = 0.0;
    for (int j = 0; j < g.N; ++j) {
      for (int k = 0; k < g.N; ++k) {
        const cdouble ref = oracle_left_rep_vacuum(g.q(j), g.p(k), 1.0, g.hbar);
        scale = std::max(scale, std::abs(ref));
        d = std::max(d, std::abs(F.at(j, k) - ref));
      }
    }
    out.push_back(make_entry("reps.vacuum-value", safe_div(d, scale), 1e-10));
  }
  {
    OperatorKernel A = random_bandlimited_operator(g, rng, 4, false);
    PhaseSpaceFunction R = right_rep(A, threads);
    PhaseSpaceFunction Ld = left_rep(op_dagger(A), threads);
    double d = 0.0;
    for (std::size_t i = 0; i < R.f.size(); ++i) {
      d = std::max(d, std::abs(R.f[i] - std::conj(Ld.f[i])));
    }
    out.push_back(make_entry("reps.dagger-conjugate", safe_div(d, max_abs(R.f)), 1e-12));
  }
  {
    OperatorKernel A = random_bandlimited_operator(g, rng, 4, true);
    RepMarginals m = rep_marginals(left_rep(A, threads));
    double dmax = 0.0;
    double scale = 0.0;
    for (int j = 0; j < g.N; ++j) {
      dmax = std::max(dmax, std::abs(m.q_profile[j] - A.at(j, j)));
      scale = std::max(scale, std::abs(A.at(j, j)));
    }
    const double w = g.dq() * g.dq();
    for (int k = 0; k < g.N; ++k) {
      const cvector v = momentum_eigenvector(g, g.p(k));
      cdouble acc{0.0, 0.0};
      for (int a = 0; a < g.N; ++a) {
        cdouble row{0.0, 0.0};
        for (int b = 0; b < g.N; ++b) row += A.at(a, b) * v[b];
        acc += std::conj(v[a]) * row;
      }
      acc *= w;
      dmax = std::max(dmax, std::abs(m.p_profile[k] - acc));
      scale = std::max(scale, std::abs(acc));
    }
    out.push_back(make_entry("reps.marginals-exact", safe_div(dmax, scale), 1e-10));
  }
  OperatorKernel A = random_bandlimited_operator(g, rng, 4, false);
  OperatorKernel B = random_bandlimited_operator(g, rng, 4, false);
  PhaseSpaceFunction Al = left_rep(A, threads);
  PhaseSpaceFunction Bl = left_rep(B, threads);
  {
    PhaseSpaceFunction C = compose_left(Al, Bl, threads);
    PhaseSpaceFunction ref = left_rep(op_matmul(A, B, threads), threads);
    out.push_back(make_entry("reps.compose-matmul",
                             safe_div(max_abs_diff(C.f, ref.f), max_abs(ref.f)), 1e-10));
  }
  {
    const cdouble t1 = product_trace_via_K(Al, Bl, threads);
    const cdouble t2 = product_trace_via_K(Bl, Al, threads);
    const cdouble ref = trace_oracle(A, B);
    const double scale = std::max(std::abs(ref), 1e-12);
    CheckEntry e = make_entry(
        "reps.product-trace",
        std::max(std::abs(t1 - ref), std::abs(t1 - t2)) / scale, 1e-10);
    e.meta["trace_re"] = fmt(ref.real());
    e.meta["trace_im"] = fmt(ref.imag());
    out.push_back(std::move(e));
  }
  return out;
}

// ---- kernels ---------------------------------------------------------------

std::vector<CheckEntry> suite_kernels(const GridSpec& g, std::uint64_t seed, int threads) {
  (void)threads;
  std::vector<CheckEntry> out;
  std::mt19937_64 rng(seed + 0x202);
  std::uniform_real_distribution<double> u(-3.0, 3.0);

  {
    // e^{-i} at hbar = 1, independent of the grid under test
    const cdouble got = kernel_K({0.0, 2.0}, {1.0, 1.0}, 1.0);
    const cdouble want{0.54030230586813977, -0.84147098480789650};
    out.push_back(make_entry("kernels.K-frozen-value", std::abs(got - want), 1e-14));
  }
  {
    double d = 0.0;
    for (int i = 0; i < 20; ++i) {
      const PhasePoint a{u(rng), u(rng)};
      const PhasePoint b{u(rng), u(rng)};
      const PhasePoint t{u(rng), u(rng)};
      const PhasePoint at{a.q + t.q, a.p + t.p};
      const PhasePoint bt{b.q + t.q, b.p + t.p};
      d = std::max(d, std::abs(kernel_K(at, bt, g.hbar) - kernel_K(a, b, g.hbar)));
    }
    out.push_back(make_entry("kernels.K-translation", d, 1e-12));
  }
  {
    const double want = std::sqrt(2.0 / (kPi * g.hbar));
    double d = 0.0;
    for (int i = 0; i < 20; ++i) {
      const PhasePoint a{u(rng), u(rng)};
      const PhasePoint b{u(rng), u(rng)};
      d = std::max(d, std::abs(std::abs(kernel_xi(a, b, g.hbar)) - want));
    }
    out.push_back(make_entry("kernels.xi-modulus", d / want, 1e-14));
  }
  const PhasePoint at{0.37, 0.53};
  const auto gauss = [](double x) { return cdouble{std::exp(-0.5 * x * x), 0.0}; };
  {
    const MarginalCheckResult r = check_K_marginals(g, at, gauss);
    CheckEntry e = make_entry("kernels.marginal-recovery",
                              std::max(r.q_error, r.p_error), 1e-8);
    e.meta["q_error"] = fmt(r.q_error);
    e.meta["p_error"] = fmt(r.p_error);
    out.push_back(std::move(e));
  }
  {
    const auto sweep = sweep_K_marginals({8, 16, 32}, 8.0, g.hbar, at, gauss);
    double worst_ratio = 0.0;
    CheckEntry e;
    for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
      worst_ratio = std::max(worst_ratio, safe_div(sweep[i + 1].q_error, sweep[i].q_error));
      worst_ratio = std::max(worst_ratio, safe_div(sweep[i + 1].p_error, sweep[i].p_error));
    }
    e = make_entry("kernels.marginal-convergence", worst_ratio, 1.0);
    for (const auto& r : sweep) {
      e.meta["q_error_N" + std::to_string(r.N)] = fmt(r.q_error);
      e.meta["p_error_N" + std::to_string(r.N)] = fmt(r.p_error);
    }
    out.push_back(std::move(e));
  }
  return out;
}

// ---- symbol ----------------------------------------------------------------

std::vector<CheckEntry> suite_symbol(const GridSpec& g, std::uint64_t seed, int threads) {
  std::vector<CheckEntry> out;
  std::mt19937_64 rng(seed + 0x303);
  const double pih = kPi * g.hbar;

  {
    PhaseSpaceFunction F = weyl_symbol(op_identity(g), threads);
    double d = 0.0;
    for (const cdouble& z : F.f) d = std::max(d, std::abs(z - 2.0));
    out.push_back(make_entry("symbol.identity-two", 0.5 * d, 1e-12));
  }
  {
    double worst = 0.0;
    for (int c = 0; c < 10; ++c) {
      OperatorKernel A = random_bandlimited_operator(g, rng, 4, true);
      PhaseSpaceFunction F = weyl_symbol(A, threads);
      double im = 0.0;
      for (const cdouble& z : F.f) im = std::max(im, std::abs(z.imag()));
      worst = std::max(worst, safe_div(im, max_abs(F.f)));
    }
    out.push_back(make_entry("symbol.reality", worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (int c = 0; c < 3; ++c) {
      OperatorKernel A = random_bandlimited_operator(g, rng, 4, false);
      PhaseSpaceFunction F = weyl_symbol(A, threads);
      OperatorKernel A2 = weyl_quantize(F, threads);
      PhaseSpaceFunction F2 = weyl_symbol(A2, threads);
      worst = std::max(worst, safe_div(max_abs_diff(A2.k, A.k), op_max_abs(A)));
      worst = std::max(worst, safe_div(max_abs_diff(F2.f, F.f), max_abs(F.f)));
    }
    out.push_back(make_entry("symbol.roundtrip", worst, 1e-6));
  }
  {
    const OperatorKernel rho = state_coherent(g, 0.7, -0.4, 1.0).rho;
    PhaseSpaceFunction F = weyl_symbol(rho, threads);
    const int n = g.N;
    const std::pair<int, int> pts[] = {
        {n / 2, n / 2}, {n / 4, 3 * n / 4}, {3 * n / 4, n / 8}, {5, 7}, {n - 3, n - 2}};
    double d = 0.0;
    for (const auto& [j, k] : pts) {
      const OperatorKernel W = phase_point_op(g, g.q(j), g.pw(k));
      const cdouble lhs = 2.0 * kPi * g.hbar * trace_oracle(rho, W);
      d = std::max(d, std::abs(lhs - F.at(j, k)));
    }
    out.push_back(make_entry("symbol.phase-point-pairing", safe_div(d, max_abs(F.f)), 1e-10));
  }
  {
    const int j0 = g.N / 2 + 3;
    const double q0 = g.q(j0);
    const double p0 = 0.7;
    PhaseSpaceFunction F =
        weyl_symbol(op_ordered_delta(g, q0, p0, DeltaOrder::standard), threads);
    double d = 0.0;
    for (int j = 0; j < g.N; ++j) {
      for (int k = 0; k < g.N; ++k) {
        const int b = 2 * j - j0;
        cdouble want{0.0, 0.0};
        if (b >= 0 && b < g.N) {
          want = std::polar(1.0 / pih,
                            2.0 * (g.q(j) - q0) * (g.pw(k) - p0) / g.hbar);
        }
        d = std::max(d, std::abs(F.at(j, k) - want));
      }
    }
    out.push_back(make_entry("symbol.ordered-delta", d * pih, 1e-10));
  }
  {
    // xi route needs its own damped-quadrature grid; keep it at a fixed size
    const GridSpec gx = make_grid(128, 8.0, g.hbar);
    PhaseSpaceFunction Al = left_rep(state_coherent(gx, 0.0, 0.0, 1.0).rho, threads);
    const std::vector<PhasePoint> targets{{0.0, 0.0}, {0.5, -0.3}, {-1.1, 0.7}};
    const std::vector<cdouble> got = xi_transform(Al, targets, {0.4, 0.2, 0.1});
    double d = 0.0;
    double scale = 0.0;
    CheckEntry e;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const double want = 2.0 * kPi * gx.hbar *
                          oracle_wigner_coherent(targets[i].q, targets[i].p, 0.0, 0.0,
                                                 1.0, gx.hbar);
      scale = std::max(scale, std::abs(want));
      d = std::max(d, std::abs(got[i] - want));
      e.meta["err_" + std::to_string(i)] = fmt(std::abs(got[i] - want));
    }
    CheckEntry base = make_entry("symbol.xi-transform", safe_div(d, scale), 5e-2);
    base.meta = std::move(e.meta);
    out.push_back(std::move(base));
  }
  return out;
}

// ---- phase-point -----------------------------------------------------------

std::vector<CheckEntry> suite_phase_point(const GridSpec& g, std::uint64_t seed,
                                          int threads) {
  std::vector<CheckEntry> out;
  const GridSpec go = odd_companion(g);
  const double pih = kPi * g.hbar;

  {
    const OperatorKernel W = phase_point_op(go, 0.0, 0.6);
    const double herm_rel = safe_div(herm_defect(W), op_max_abs(W));

    const OperatorKernel WW = op_matmul(W, W, threads);
    const double want_diag = 1.0 / (go.dq() * pih * pih);
    double inv_d = 0.0;
    for (int a = 0; a < go.N; ++a) {
      for (int b = 0; b < go.N; ++b) {
        const cdouble want = (a == b) ? cdouble{want_diag, 0.0} : cdouble{0.0, 0.0};
        inv_d = std::max(inv_d, std::abs(WW.at(a, b) - want));
      }
    }
    const double inv_rel = inv_d / want_diag;

    cvector m = W.k;
    const cdouble s{go.dq() * pih, 0.0};
    for (cdouble& z : m) z *= s;
    const std::vector<double> ev = hermitian_eigenvalues(std::move(m), go.N);
    double eig_d = 0.0;
    for (double lam : ev) {
      eig_d = std::max(eig_d, std::min(std::abs(lam - 1.0), std::abs(lam + 1.0)));
    }

    CheckEntry e = make_entry("phase-point.algebra-center",
                              std::max({herm_rel, inv_rel, eig_d}), 1e-10);
    e.meta["herm"] = fmt(herm_rel);
    e.meta["involution"] = fmt(inv_rel);
    e.meta["eigenvalue"] = fmt(eig_d);
    out.push_back(std::move(e));
  }
  {
    const OperatorKernel W0 = phase_point_op(go, 0.0, 0.0);
    const OperatorKernel P = op_parity(go);
    double d = 0.0;
    for (std::size_t i = 0; i < W0.k.size(); ++i) {
      d = std::max(d, std::abs(W0.k[i] - P.k[i] / pih));
    }
    out.push_back(
        make_entry("phase-point.center-parity", d * pih * go.dq(), 1e-14));
  }
  {
    const int j0 = g.N / 2 + 2;
    const OperatorKernel Pq = phase_point_q_projector(g, g.q(j0));
    const double amp = 1.0 / (g.dq() * g.dq());
    double d = 0.0;
    for (int a = 0; a < g.N; ++a) {
      for (int b = 0; b < g.N; ++b) {
        const cdouble want = (a == j0 && b == j0) ? cdouble{amp, 0.0} : cdouble{0.0, 0.0};
        d = std::max(d, std::abs(Pq.at(a, b) - want));
      }
    }
    out.push_back(make_entry("phase-point.q-projector", d / amp, 1e-12));
  }
  {
    const OperatorKernel R = phase_point_resolution(g);
    const OperatorKernel I = op_identity(g);
    double d = safe_div(max_abs_diff(R.k, I.k), 1.0 / g.dq());

    const OperatorKernel S = phase_point_p_smear(g, 0.8);
    for (int a = 0; a < g.N; ++a) {
      for (int b = 0; b < g.N; ++b) {
        const double mod = std::abs(S.at(a, b));
        if ((a + b) % 2 == 1) {
          if (mod != 0.0) d = std::max(d, 1.0);
        } else {
          d = std::max(d, std::abs(mod - 1.0 / pih) * pih);
        }
      }
    }
    out.push_back(make_entry("phase-point.p-smear-resolution", d, 1e-12));
  }
  {
    const AnticomCheck ac = phase_point_anticom_check(go, 0.0, 0.8, seed + 0x404);
    CheckEntry e = make_entry("phase-point.anticom",
                              std::max(ac.q_defect, ac.p_defect), 1e-8);
    e.meta["q_defect"] = fmt(ac.q_defect);
    e.meta["p_defect"] = fmt(ac.p_defect);
    e.meta["p_defect_raw"] = fmt(ac.p_defect_raw);
    out.push_back(std::move(e));
  }
  {
    const GridSpec gs = make_grid(32, 8.0, g.hbar);
    const double q0 = gs.q(16);  // closest lattice point to the origin
    const auto res = symplectic_fourier_check(gs, q0, 0.5, {6, 14, 22, 30});
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < res.size(); ++i) {
      if (res[i + 1].defect > res[i].defect) monotone = false;
    }
    const double final_rel = safe_div(res.back().defect, res.back().scale);
    CheckEntry e = make_entry("phase-point.symplectic-tail",
                              monotone ? final_rel : 1.0, 1e-10);
    for (const auto& r : res) {
      e.meta["defect_cut" + std::to_string(r.x_cutoff)] = fmt(safe_div(r.defect, r.scale));
    }
    out.push_back(std::move(e));
  }
  return out;
}

// ---- marginals -------------------------------------------------------------

std::vector<CheckEntry> suite_marginals(const GridSpec& g, std::uint64_t seed,
                                        int threads) {
  (void)seed;
  std::vector<CheckEntry> out;
  const double hbar = g.hbar;

  {
    const OperatorKernel rho = state_cat(g, 2.0, 0.0, 1.0, 0.0).rho;
    const PhaseSpaceFunction W = wigner_distribution(rho, threads);
    const std::vector<double> mq = wigner_marginal_q(W);
    double d = 0.0;
    double scale = 0.0;
    for (int j = 0; j < g.N; ++j) {
      d = std::max(d, std::abs(mq[j] - rho.at(j, j).real()));
      scale = std::max(scale, std::abs(rho.at(j, j).real()));
    }
    out.push_back(make_entry("marginals.q-exact", safe_div(d, scale), 1e-10));
  }
  {
    // closed-form densities; sigma = 1 throughout
    struct Case {
      std::string name;
      OperatorKernel rho;
      std::function<double(double)> nq;
      std::function<double(double)> np;
    };
    std::vector<Case> cases;
    {
      const double q0 = 1.2, p0 = -0.8;
      cases.push_back({"coherent", state_coherent(g, q0, p0, 1.0).rho,
                       [=](double q) {
                         return std::exp(-(q - q0) * (q - q0)) / std::sqrt(kPi);
                       },
                       [=](double p) {
                         return std::exp(-(p - p0) * (p - p0) / (hbar * hbar)) /
                                (std::sqrt(kPi) * hbar);
                       }});
    }
    cases.push_back({"fock3", state_fock(g, 3, 1.0).rho,
                     [](double q) { return hermite_fn(3, q) * hermite_fn(3, q); },
                     [=](double p) {
                       const double u = p / hbar;
                       return hermite_fn(3, u) * hermite_fn(3, u) / hbar;
                     }});
    {
      // nbar = 0.5 keeps the Boltzmann tail inside the Wigner-lattice momentum
      // window at the default N = 64: Fock components with sqrt(2n+1) beyond
      // pi hbar / (2 dq) fold in wigner_marginal_p, and their weights must sit
      // well under the 1e-8 budget.
      const double nbar = 0.5;
      const double s2 = 2.0 * nbar + 1.0;
      cases.push_back({"thermal", state_thermal(g, nbar, 1.0).rho,
                       [=](double q) {
                         return std::exp(-q * q / s2) / std::sqrt(kPi * s2);
                       },
                       [=](double p) {
                         return std::exp(-p * p / (s2 * hbar * hbar)) /
                                (std::sqrt(kPi * s2) * hbar);
                       }});
    }
    double worst = 0.0;
    CheckEntry e;
    for (const Case& c : cases) {
      const PhaseSpaceFunction W = wigner_distribution(c.rho, threads);
      const std::vector<double> mq = wigner_marginal_q(W);
      const std::vector<double> mp = wigner_marginal_p(W);
      double dq_err = 0.0, dp_err = 0.0, qs = 0.0, ps = 0.0;
      for (int j = 0; j < g.N; ++j) {
        dq_err = std::max(dq_err, std::abs(mq[j] - c.nq(g.q(j))));
        qs = std::max(qs, c.nq(g.q(j)));
      }
      for (int k = 0; k < g.N; ++k) {
        dp_err = std::max(dp_err, std::abs(mp[k] - c.np(g.pw(k))));
        ps = std::max(ps, c.np(g.pw(k)));
      }
      const double err = std::max(safe_div(dq_err, qs), safe_div(dp_err, ps));
      e.meta[c.name] = fmt(err);
      worst = std::max(worst, err);
    }
    CheckEntry base = make_entry("marginals.closed-forms", worst, 1e-8);
    base.meta = std::move(e.meta);
    out.push_back(std::move(base));
  }
  {
    const OperatorKernel rho = state_thermal(g, 0.8, 1.0).rho;
    const PhaseSpaceFunction W = wigner_distribution(rho, threads);
    const std::vector<double> mq = wigner_marginal_q(W);
    double mass = 0.0;
    for (double v : mq) mass += v;
    mass *= g.dq();
    out.push_back(make_entry("marginals.mass", std::abs(mass - 1.0), 1e-10));
  }
  {
    // first interference fringe of the even cat away from p = 0
    const double q0 = 2.0;
    const OperatorKernel rho = state_cat(g, q0, 0.0, 1.0, 0.0).rho;
    const PhaseSpaceFunction W = wigner_distribution(rho, threads);
    const std::vector<double> mp = wigner_marginal_p(W);

    const auto density = [&](double p) {
      const double u = p / hbar;
      const double c = std::cos(q0 * u);
      return 2.0 * std::exp(-u * u) * c * c /
             (std::sqrt(kPi) * hbar * (1.0 + std::exp(-q0 * q0)));
    };
    const double p1 = kPi * hbar / q0;  // naive fringe center, refined by scan
    double pstar = 0.0, vstar = -1.0;
    for (double p = 0.5 * p1; p <= 1.5 * p1; p += 1e-4 * p1) {
      const double v = density(p);
      if (v > vstar) {
        vstar = v;
        pstar = p;
      }
    }

    double mp_max = 0.0;
    for (double v : mp) mp_max = std::max(mp_max, v);
    int kbest = -1;
    for (int k = 1; k + 1 < g.N; ++k) {
      const double pw = g.pw(k);
      if (pw < 0.5 * p1 || pw > 1.5 * p1) continue;
      if (mp[k] < 0.02 * mp_max) continue;
      if (mp[k] >= mp[k - 1] && mp[k] >= mp[k + 1] && (kbest < 0 || mp[k] > mp[kbest])) {
        kbest = k;
      }
    }
    double measured = 1.0;
    CheckEntry e;
    if (kbest > 0) {
      const double ym = mp[kbest - 1], y0 = mp[kbest], yp = mp[kbest + 1];
      const double denom = ym - 2.0 * y0 + yp;
      const double shift = (denom != 0.0) ? 0.5 * (ym - yp) / denom : 0.0;
      const double phat = g.pw(kbest) + shift * g.dpw();
      const double vhat = y0 - 0.125 * (ym - yp) * (ym - yp) / ((denom != 0.0) ? denom : 1.0);
      measured = std::max(std::abs(phat - pstar) / pstar, std::abs(vhat - vstar) / vstar);
      e.meta["fringe_p"] = fmt(phat);
      e.meta["fringe_height"] = fmt(vhat);
      e.meta["predicted_p"] = fmt(pstar);
      e.meta["predicted_height"] = fmt(vstar);
    }
    CheckEntry base = make_entry("marginals.cat-fringes", measured, 5e-2);
    base.meta = std::move(e.meta);
    out.push_back(std::move(base));
  }
  {
    const GridSpec go = odd_companion(g);
    const OperatorKernel rho = state_fock(go, 1, 1.0).rho;
    const std::vector<double> mq = wigner_marginal_q(wigner_distribution(rho, threads));
    const int j0 = (go.N - 1) / 2;  // q = 0 on the odd lattice
    double mx = 0.0;
    for (double v : mq) mx = std::max(mx, v);
    out.push_back(make_entry("marginals.fock1-dip", safe_div(std::abs(mq[j0]), mx), 1e-6));
  }
  return out;
}

// ---- bounds ----------------------------------------------------------------

std::vector<CheckEntry> suite_bounds(const GridSpec& g, std::uint64_t seed, int threads) {
  std::vector<CheckEntry> out;
  std::mt19937_64 rng(seed + 0x606);
  const double bound = 1.0 / (kPi * g.hbar);

  const auto wigner_max = [&](const OperatorKernel& rho) {
    return max_abs(wigner_distribution(rho, threads).f);
  };

  {
    std::vector<std::pair<std::string, OperatorKernel>> zoo;
    zoo.emplace_back("coherent(0,0)", state_coherent(g, 0.0, 0.0, 1.0).rho);
    zoo.emplace_back("coherent(1.2,-0.8)", state_coherent(g, 1.2, -0.8, 1.0).rho);
    for (int n = 0; n <= 4; ++n) {
      zoo.emplace_back("fock" + std::to_string(n), state_fock(g, n, 1.0).rho);
    }
    zoo.emplace_back("cat-even", state_cat(g, 2.0, 0.0, 1.0, 0.0).rho);
    zoo.emplace_back("cat-odd", state_cat(g, 2.0, 0.0, 1.0, kPi).rho);
    zoo.emplace_back("thermal0.5", state_thermal(g, 0.5, 1.0).rho);
    zoo.emplace_back("thermal2.3", state_thermal(g, 2.3, 1.0).rho);
    double worst = -1.0;
    std::string worst_name;
    for (const auto& [name, rho] : zoo) {
      const double excess = wigner_max(rho) - bound;
      if (excess > worst) {
        worst = excess;
        worst_name = name;
      }
    }
    CheckEntry e = make_entry("bounds.zoo", worst, 1e-9);
    e.meta["worst_state"] = worst_name;
    out.push_back(std::move(e));
  }
  {
    double worst = -1.0;
    for (int c = 0; c < 50; ++c) {
      worst = std::max(worst, wigner_max(state_random_mixture(g, rng, 4).rho) - bound);
    }
    out.push_back(make_entry("bounds.random-mixtures", worst, 1e-9));
  }
  {
    double worst = 0.0;
    for (const OperatorKernel& rho :
         {state_coherent(g, 1.2, -0.8, 1.0).rho, state_fock(g, 2, 1.0).rho,
          state_cat(g, 2.0, 0.0, 1.0, 0.0).rho}) {
      worst = std::max(worst, std::abs(trace_oracle(rho, rho).real() - 1.0));
    }
    const double thermal_purity = trace_oracle(state_thermal(g, 0.5, 1.0).rho,
                                               state_thermal(g, 0.5, 1.0).rho)
                                      .real();
    worst = std::max(worst, std::abs(thermal_purity - 0.5));
    CheckEntry e = make_entry("bounds.purity", worst, 1e-10);
    e.meta["thermal_purity"] = fmt(thermal_purity);
    out.push_back(std::move(e));
  }
  {
    const OperatorKernel rho = state_coherent(g, 0.5, 0.3, 1.0).rho;
    const int s = 3, m = 4;
    const double a = s * g.dq();
    const double b = m * g.dpw();
    const OperatorKernel U = op_displacement(g, a, b);
    const OperatorKernel shifted = op_matmul(op_matmul(U, rho, threads), op_dagger(U), threads);
    const PhaseSpaceFunction W = wigner_distribution(rho, threads);
    const PhaseSpaceFunction Ws = wigner_distribution(shifted, threads);
    double d = 0.0;
    for (int j = s; j < g.N; ++j) {
      for (int k = m; k < g.N; ++k) {
        d = std::max(d, std::abs(Ws.at(j, k) - W.at(j - s, k - m)));
      }
    }
    out.push_back(
        make_entry("bounds.translation-covariance", safe_div(d, max_abs(W.f)), 1e-8));
  }
  return out;
}

// ---- xi-sqrt ---------------------------------------------------------------

std::vector<CheckEntry> suite_xi_sqrt(const GridSpec& g, std::uint64_t seed, int threads) {
  (void)seed;
  (void)threads;
  std::vector<CheckEntry> out;
  const std::vector<double> damping{0.4, 0.2, 0.1};
  const std::pair<PhasePoint, PhasePoint> pairs[] = {
      {{0.0, 0.0}, {1.0, 0.5}},
      {{0.3, -0.2}, {-0.4, 0.6}},
      {{1.0, 1.0}, {1.0, 1.0}},
      {{-1.2, 0.4}, {0.8, -0.3}},
      {{2.0, -1.0}, {-0.5, 0.5}},
  };
  XiSqrtResult gain_probe;
  for (int i = 0; i < 5; ++i) {
    const XiSqrtResult r = check_xi_sqrt(pairs[i].first, pairs[i].second, g.hbar, damping);
    if (i == 1) gain_probe = r;
    CheckEntry e = make_entry("xi-sqrt.pair-" + std::to_string(i + 1), r.error, 5e-2);
    for (std::size_t k = 0; k < r.raw_errors.size(); ++k) {
      e.meta["raw_eps" + fmt(damping[k])] = fmt(r.raw_errors[k]);
    }
    out.push_back(std::move(e));
  }
  {
    const double first = gain_probe.stage_errors.front();
    const double last = gain_probe.stage_errors.back();
    CheckEntry e = make_entry("xi-sqrt.extrapolation-gain", safe_div(last, first), 1.0);
    for (std::size_t k = 0; k < gain_probe.stage_errors.size(); ++k) {
      e.meta["stage" + std::to_string(k)] = fmt(gain_probe.stage_errors[k]);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

bool CheckReport::all_pass() const {
  if (entries.empty()) return false;
  for (const CheckEntry& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

std::vector<std::string> known_suites() {
  return {"reps", "kernels", "symbol", "phase-point", "marginals", "bounds", "xi-sqrt"};
}

CheckReport run_check_suites(const GridSpec& g, const std::vector<std::string>& suites,
                             double tol_override, std::uint64_t seed, int threads) {
  const int nthreads = resolve_threads(threads);
  const std::vector<std::string> known = known_suites();

  std::vector<std::string> selected;
  const auto push_unique = [&](const std::string& s) {
    if (std::find(selected.begin(), selected.end(), s) == selected.end()) {
      selected.push_back(s);
    }
  };
  const std::vector<std::string> requested =
      suites.empty() ? std::vector<std::string>{"default"} : suites;
  for (const std::string& s : requested) {
    if (s == "default") {
      for (const std::string& k : known) {
        if (k != "xi-sqrt") push_unique(k);
      }
    } else if (std::find(known.begin(), known.end(), s) != known.end()) {
      push_unique(s);
    } else {
      std::string msg = "unknown suite '" + s + "'; known suites: default";
      for (const std::string& k : known) msg += ", " + k;
      throw std::invalid_argument(msg);
    }
  }

  CheckReport report;
  report.grid = g;
  for (const std::string& s : selected) {
    std::vector<CheckEntry> es;
    if (s == "reps") es = suite_reps(g, seed, nthreads);
    else if (s == "kernels") es = suite_kernels(g, seed, nthreads);
    else if (s == "symbol") es = suite_symbol(g, seed, nthreads);
    else if (s == "phase-point") es = suite_phase_point(g, seed, nthreads);
    else if (s == "marginals") es = suite_marginals(g, seed, nthreads);
    else if (s == "bounds") es = suite_bounds(g, seed, nthreads);
    else es = suite_xi_sqrt(g, seed, nthreads);
    for (CheckEntry& e : es) report.entries.push_back(std::move(e));
  }

  if (tol_override > 0.0) {
    for (CheckEntry& e : report.entries) {
      e.tolerance = tol_override;
      e.pass = std::isfinite(e.measured) && e.measured <= tol_override;
    }
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const CheckEntry& a, const CheckEntry& b) { return a.name < b.name; });
  return report;
}

std::string check_report_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["grid"] = nlohmann::ordered_json{{"N", r.grid.N}, {"L", r.grid.L}, {"hbar", r.grid.hbar}};
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const CheckEntry& e : r.entries) {
    nlohmann::ordered_json je;
    je["name"] = e.name;
    je["measured"] = e.measured;
    je["tolerance"] = e.tolerance;
    je["pass"] = e.pass;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : e.meta) meta[k] = v;
    je["meta"] = meta;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  j["all_pass"] = r.all_pass();
  return j.dump(2) + "\n";
}

}  // namespace weylwig
