#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "test_helpers.hpp"
#include "weylwig/oracle.hpp"
#include "weylwig/states.hpp"
#include "weylwig/wigner.hpp"

using namespace weylwig;
using wtest::max_abs;
using wtest::max_abs_diff;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("left rep of the identity is the flat 1/(2 pi hbar)") {
  const GridSpec g = make_grid(32, 8.0, 1.0);
  const PhaseSpaceFunction F = left_rep(op_identity(g));
  CHECK_FALSE(F.wigner_lattice);
  double worst = 0.0;
  for (const cdouble& v : F.f) worst = std::max(worst, std::abs(v - cdouble{1.0 / kTwoPi, 0.0}));
  CHECK(worst <= 1e-14);
}

TEST_CASE("left rep of the vacuum matches the continuum value at the origin") {
  const GridSpec g = make_grid(129, 8.0, 1.0);
  const PhaseSpaceFunction F = left_rep(state_coherent(g, 0.0, 0.0).rho);
  const int c = (g.N - 1) / 2;  // q = 0 and p = 0 land on the odd lattice
  REQUIRE(g.q(c) == 0.0);
  REQUIRE(g.p(c) == 0.0);
  CHECK(std::abs(F.at(c, c) - oracle_left_rep_vacuum(0.0, 0.0, 1.0, 1.0)) <= 1e-8);
}

TEST_CASE("left rep matches the momentum-eigenvector oracle pointwise") {
  const GridSpec g = make_grid(32, 8.0, 1.0);
  std::mt19937_64 rng(101);
  const OperatorKernel A = random_bandlimited_operator(g, rng);
  const PhaseSpaceFunction F = left_rep(A);
  const double scale = max_abs(F);
  for (const int j : {0, 5, 16, 31}) {
    for (const int k : {2, 16, 29}) {
      CHECK(std::abs(F.at(j, k) - oracle_left_rep_at(A, j, g.p(k))) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("right rep is the conjugate of the left rep for hermitian operators") {
  const GridSpec g = make_grid(32, 8.0, 1.0);
  std::mt19937_64 rng(7);
  const OperatorKernel H = random_bandlimited_operator(g, rng, 4, true);
  const PhaseSpaceFunction L = left_rep(H);
  const PhaseSpaceFunction R = right_rep(H);
  const double scale = max_abs(L);
  double worst = 0.0;
  for (std::size_t i = 0; i < L.f.size(); ++i) {
    worst = std::max(worst, std::abs(R.f[i] - std::conj(L.f[i])));
  }
  CHECK(worst <= 1e-12 * scale);

  // general A: A_r = conj((A^dagger)_l)
  const OperatorKernel A = random_bandlimited_operator(g, rng, 4, false);
  const PhaseSpaceFunction Ra = right_rep(A);
  const PhaseSpaceFunction Ld = left_rep(op_dagger(A));
  worst = 0.0;
  for (std::size_t i = 0; i < Ra.f.size(); ++i) {
    worst = std::max(worst, std::abs(Ra.f[i] - std::conj(Ld.f[i])));
  }
  CHECK(worst <= 1e-12 * max_abs(Ra));
}

TEST_CASE("rep marginals recover the kernel diagonals exactly") {
  const GridSpec g = make_grid(64, 8.0, 1.0);
  const OperatorKernel rho = state_cat(g, 2.0, 0.5).rho;
  const PhaseSpaceFunction F = left_rep(rho);
  const RepMarginals m = rep_marginals(F);
  REQUIRE(static_cast<int>(m.q_profile.size()) == g.N);
  REQUIRE(static_cast<int>(m.p_profile.size()) == g.N);

  const double scale = op_max_abs(rho);
  for (int j = 0; j < g.N; ++j) {
    CHECK(std::abs(m.q_profile[j] - rho.at(j, j)) <= 1e-12 * scale);
  }

  // p profile equals |psi tilde|^2 for a pure state
  const cvector psi = cat_wavefunction(g, 2.0, 0.5);
  const cvector tilde = to_momentum(g, psi);
  for (int k = 0; k < g.N; ++k) {
    CHECK(std::abs(m.p_profile[k] - cdouble{std::norm(tilde[k]), 0.0}) <= 1e-10);
  }

  // wigner-lattice input is rejected
  CHECK_THROWS_AS(rep_marginals(weyl_symbol(rho)), std::invalid_argument);
}

TEST_CASE("rep marginals of a one-hot projector") {
  const GridSpec g = make_grid(32, 8.0, 1.0);
  const int j0 = 20;
  cvector v(g.N, cdouble{0.0, 0.0});
  v[j0] = cdouble{1.0 / std::sqrt(g.dq()), 0.0};
  const OperatorKernel P = pure_state_operator(g, v);
  const RepMarginals m = rep_marginals(left_rep(P));

  for (int j = 0; j < g.N; ++j) {
    const double expected = (j == j0) ? 1.0 / g.dq() : 0.0;
    CHECK(std::abs(m.q_profile[j] - cdouble{expected, 0.0}) <= 1e-12 / g.dq());
  }
  // a position eigenstate spreads flat over momentum: dq/(2 pi hbar)
  const double flat = g.dq() / (kTwoPi * g.hbar);
  for (int k = 0; k < g.N; ++k) {
    CHECK(std::abs(m.p_profile[k] - cdouble{flat, 0.0}) <= 1e-12);
  }
}

TEST_CASE("rep trace equals the operator trace") {
  const GridSpec g = make_grid(48, 8.0, 1.0);
  std::mt19937_64 rng(55);
  const OperatorKernel A = random_bandlimited_operator(g, rng, 5, false);
  const cdouble t = op_trace(A);
  CHECK(std::abs(rep_trace(left_rep(A)) - t) <= 1e-10 * std::max(1.0, std::abs(t)));
  CHECK(std::abs(rep_trace(right_rep(A)) - t) <= 1e-10 * std::max(1.0, std::abs(t)));
}

TEST_CASE("composition in the left representation") {
  const GridSpec g = make_grid(24, 8.0, 1.0);
  std::mt19937_64 rng(13);
  const OperatorKernel A = random_bandlimited_operator(g, rng, 3, false);
  const OperatorKernel B = random_bandlimited_operator(g, rng, 3, false);
  const PhaseSpaceFunction Al = left_rep(A);
  const PhaseSpaceFunction Bl = left_rep(B);

  const PhaseSpaceFunction AB = left_rep(op_matmul(A, B));
  const PhaseSpaceFunction C = compose_left(Al, Bl);
  const double scale = std::max(max_abs(AB), 1e-30);
  CHECK(max_abs_diff(C, AB) <= 1e-10 * scale);

  // order matters: BA differs, and compose reproduces it too
  const PhaseSpaceFunction BA = left_rep(op_matmul(B, A));
  CHECK(max_abs_diff(compose_left(Bl, Al), BA) <= 1e-10 * scale);
  CHECK(max_abs_diff(AB, BA) > 1e-3 * scale);

  // factorized path equals the O(N^4) reference
  CHECK(max_abs_diff(C, compose_left_naive(Al, Bl)) <= 1e-11 * scale);

  // identity is neutral on either side
  const PhaseSpaceFunction Il = left_rep(op_identity(g));
  CHECK(max_abs_diff(compose_left(Al, Il), Al) <= 1e-11 * max_abs(Al));
  CHECK(max_abs_diff(compose_left(Il, Al), Al) <= 1e-11 * max_abs(Al));
}

TEST_CASE("product trace through the kernel K") {
  const GridSpec g = make_grid(32, 8.0, 1.0);
  std::mt19937_64 rng(17);
  const OperatorKernel A = random_bandlimited_operator(g, rng, 3, false);
  const OperatorKernel B = random_bandlimited_operator(g, rng, 3, false);
  const PhaseSpaceFunction Al = left_rep(A);
  const PhaseSpaceFunction Bl = left_rep(B);

  const cdouble ref = trace_oracle(A, B);
  const cdouble viaK = product_trace_via_K(Al, Bl);
  CHECK(std::abs(viaK - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
  CHECK(std::abs(product_trace_via_K(Bl, Al) - viaK) <= 1e-11 * std::max(1.0, std::abs(ref)));
  CHECK(std::abs(product_trace_via_K_naive(Al, Bl) - viaK) <=
        1e-10 * std::max(1.0, std::abs(ref)));

  // purity and orthogonality of simple densities
  const PhaseSpaceFunction f0 = left_rep(state_fock(g, 0).rho);
  const PhaseSpaceFunction f1 = left_rep(state_fock(g, 1).rho);
  CHECK(std::abs(product_trace_via_K(f0, f0) - cdouble{1.0, 0.0}) <= 1e-8);
  CHECK(std::abs(product_trace_via_K(f0, f1)) <= 1e-8);
}
