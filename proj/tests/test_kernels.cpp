#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "test_helpers.hpp"
#include "weylwig/kernels.hpp"

using namespace weylwig;

TEST_CASE("kernel_K: coincident arguments give 1") {
  CHECK(kernel_K({0.7, -1.3}, {0.7, -1.3}, 1.0) == cdouble{1.0, 0.0});
  CHECK(kernel_K({0.0, 2.0}, {0.0, 5.0}, 0.5) == cdouble{1.0, 0.0});  // q - q' = 0 suffices
}

TEST_CASE("kernel_K: pinned value exp(-i)") {
  const cdouble expected{0.54030230586813977, -0.84147098480789650};
  CHECK(std::abs(kernel_K({0.0, 2.0}, {1.0, 1.0}, 1.0) - expected) <= 1e-15);
  // (q,p)=(1,0) vs (0,1): (q-q')(p-p') = -1 again
  CHECK(std::abs(kernel_K({1.0, 0.0}, {0.0, 1.0}, 1.0) - expected) <= 1e-15);
}

TEST_CASE("kernel_K: unimodular and swap symmetric") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const PhasePoint a{coord(rng), coord(rng)};
    const PhasePoint b{coord(rng), coord(rng)};
    const double hbar = (i % 2) ? 1.0 : 0.7;
    const cdouble K = kernel_K(a, b, hbar);
    CHECK(std::abs(std::abs(K) - 1.0) <= 2e-16);
    // (q-q')(p-p') is even under swapping the slots, exactly so in IEEE
    CHECK(kernel_K(b, a, hbar) == K);
  }
}

TEST_CASE("kernel_K: translation invariance") {
  const PhasePoint a{1.25, -0.75};
  const PhasePoint b{0.5, 2.25};
  const cdouble base = kernel_K(a, b, 1.0);

  // dyadic shifts keep the differences bitwise identical
  for (const double t : {0.5, -0.25, 3.0}) {
    const cdouble shifted = kernel_K({a.q + t, a.p - t}, {b.q + t, b.p - t}, 1.0);
    CHECK(shifted == base);
  }

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const PhasePoint x{coord(rng), coord(rng)};
    const PhasePoint y{coord(rng), coord(rng)};
    const double tq = coord(rng), tp = coord(rng);
    const cdouble k0 = kernel_K(x, y, 1.0);
    const cdouble k1 = kernel_K({x.q + tq, x.p + tp}, {y.q + tq, y.p + tp}, 1.0);
    CHECK(std::abs(k0 - k1) <= 1e-12);
  }
}

TEST_CASE("kernel_xi: modulus, symmetry, square") {
  const double pi = 3.14159265358979323846;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (const double hbar : {1.0, 0.5}) {
    const double mod = std::sqrt(2.0 / (pi * hbar));
    for (int i = 0; i < 100; ++i) {
      const PhasePoint a{coord(rng), coord(rng)};
      const PhasePoint b{coord(rng), coord(rng)};
      const cdouble xi = kernel_xi(a, b, hbar);
      CHECK(std::abs(std::abs(xi) - mod) <= 1e-14);
      CHECK(kernel_xi(b, a, hbar) == xi);
      // xi carries twice the K phase: (pi hbar/2) xi^2 = K^4
      const cdouble K = kernel_K(a, b, hbar);
      CHECK(std::abs(xi * xi * (pi * hbar / 2.0) - K * K * K * K) <= 1e-14);
    }
  }
}

TEST_CASE("kernel marginals: smeared delta recovery") {
  const GridSpec g = make_grid(128, 8.0, 1.0);
  const PhasePoint at{0.3, 0.45};  // off both lattices
  const auto gauss = [](double x) { return cdouble{std::exp(-0.5 * x * x), 0.0}; };

  const MarginalCheckResult r = check_K_marginals(g, at, gauss);
  CHECK(r.N == 128);
  CHECK(r.q_error <= 1e-8);
  CHECK(r.p_error <= 1e-8);

  // zero test function: both sums and targets vanish identically
  const MarginalCheckResult z = check_K_marginals(g, at, [](double) { return cdouble{0.0, 0.0}; });
  CHECK(z.q_error == 0.0);
  CHECK(z.p_error == 0.0);
}

TEST_CASE("kernel marginals: error shrinks with N") {
  const PhasePoint at{0.3, 0.45};
  const auto gauss = [](double x) { return cdouble{std::exp(-0.5 * x * x), 0.0}; };
  const auto sweep = sweep_K_marginals({8, 16, 32}, 8.0, 1.0, at, gauss);
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[0].N == 8);
  CHECK(sweep[2].N == 32);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    const double prev = std::max(sweep[i - 1].q_error, sweep[i - 1].p_error);
    const double cur = std::max(sweep[i].q_error, sweep[i].p_error);
    CHECK(cur < prev);
  }
}

TEST_CASE("damping sequence validation") {
  CHECK_NOTHROW(require_damping({0.4, 0.2, 0.1}));
  CHECK_THROWS_AS(require_damping({}), std::invalid_argument);
  CHECK_THROWS_AS(require_damping({0.2, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(require_damping({0.4, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(require_damping({0.4, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(require_damping({-0.1}), std::invalid_argument);
}

TEST_CASE("extrapolate_to_zero: polynomial data is reproduced exactly") {
  const std::vector<double> eps{0.4, 0.2, 0.1};
  std::vector<cdouble> vals;
  for (double e : eps) vals.push_back(cdouble{3.0 + 2.0 * e - e * e, -1.0 + 0.5 * e});
  // three points pin a quadratic, so the eps -> 0 value is exact
  CHECK(std::abs(extrapolate_to_zero(eps, vals) - cdouble{3.0, -1.0}) <= 1e-13);
  // depth 1 keeps only the last sample
  CHECK(extrapolate_to_zero(eps, vals, 1) == vals.back());
  // depth 2 is the secant through the last two samples
  const cdouble lin = vals[1] + (vals[2] - vals[1]) * ((0.0 - eps[1]) / (eps[2] - eps[1]));
  CHECK(std::abs(extrapolate_to_zero(eps, vals, 2) - lin) <= 1e-12);
  CHECK_THROWS_AS(extrapolate_to_zero({0.1}, {}), std::invalid_argument);
}

TEST_CASE("xi squares to K under the damped quadrature") {
  const std::vector<double> damping{0.4, 0.2, 0.1};

  const XiSqrtResult same = check_xi_sqrt({0.3, -0.2}, {0.3, -0.2}, 1.0, damping);
  CHECK(same.target == cdouble{1.0, 0.0});
  CHECK(same.error <= 5e-2);

  const XiSqrtResult r = check_xi_sqrt({0.5, 0.0}, {0.0, 0.5}, 1.0, damping);
  CHECK(std::abs(r.target - std::exp(cdouble{0.0, -0.25})) <= 1e-15);
  CHECK(r.error <= 5e-2);
  CHECK(std::abs(r.extrapolated) >= 0.9);
  CHECK(std::abs(r.extrapolated) <= 1.1);
  REQUIRE(r.raw_errors.size() == damping.size());
  REQUIRE(!r.stage_errors.empty());
  // extrapolation should not be worse than the rawest stage
  CHECK(r.stage_errors.back() <= r.stage_errors.front() + 1e-12);

  CHECK_THROWS_AS(check_xi_sqrt({0.0, 0.0}, {0.0, 0.0}, 1.0, {0.1, 0.2}),
                  std::invalid_argument);
}
