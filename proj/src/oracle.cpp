#include "weylwig/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace weylwig {

namespace {

// normalized oscillator eigenfunction in the dimensionless variable u = x/sigma,
// psi_n(u) = pi^{-1/4} (2^n n!)^{-1/2} H_n(u) e^{-u^2/2}; local to the oracle
// on purpose so the reference shares nothing with the library state builders
double hermite_fn(int n, double u) {
    const double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
    if (n == 0) return h0;
    double prev = h0;
    double cur = std::sqrt(2.0) * u * h0;
    for (int k = 2; k <= n; ++k) {
        const double next =
            std::sqrt(2.0 / k) * u * cur - std::sqrt((k - 1.0) / k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace

AnalyticKernel analytic_coherent_kernel(double q0, double p0, double sigma, double hbar) {
    return [=](double x, double y) -> cdouble {
        const double norm = std::pow(std::numbers::pi * sigma * sigma, -0.25);
        const auto psi = [&](double t) {
            return std::polar(norm * std::exp(-0.5 * (t - q0) * (t - q0) / (sigma * sigma)),
                              p0 * t / hbar - 0.5 * p0 * q0 / hbar);
        };
        return psi(x) * std::conj(psi(y));
    };
}

AnalyticKernel analytic_fock_kernel(int n, double sigma, double hbar) {
    (void)hbar;
    if (n < 0) throw std::invalid_argument("analytic_fock_kernel: n must be >= 0");
    return [=](double x, double y) -> cdouble {
        const double s = 1.0 / std::sqrt(sigma);
        return cdouble{s * hermite_fn(n, x / sigma) * s * hermite_fn(n, y / sigma), 0.0};
    };
}

AnalyticKernel analytic_thermal_kernel(double nbar, double sigma, double hbar) {
    (void)hbar;
    if (nbar < 0.0) throw std::invalid_argument("analytic_thermal_kernel: nbar must be >= 0");
    // sum_n lambda^n (1 - lambda) psi_n(x) psi_n(y) in closed form via the
    // Mehler sum: sum_n lambda^n psi_n(x)psi_n(y)
    //   = (pi sigma^2 (1-lambda^2))^{-1/2}
    //     exp{ (4 xt yt lambda - (1+lambda^2)(xt^2+yt^2)) / (2 (1-lambda^2)) }
    const double lam = nbar / (1.0 + nbar);
    return [=](double x, double y) -> cdouble {
        const double xt = x / sigma, yt = y / sigma;
        const double denom = 1.0 - lam * lam;
        const double norm =
            (1.0 - lam) /
            std::sqrt(std::numbers::pi * sigma * sigma * denom);
        const double expo =
            (4.0 * xt * yt * lam - (1.0 + lam * lam) * (xt * xt + yt * yt)) /
            (2.0 * denom);
        return cdouble{norm * std::exp(expo), 0.0};
    };
}

cdouble quad_weyl_symbol(const AnalyticKernel& kernel, double q, double p, double hbar,
                         int refinement) {
    if (refinement < 2)
        throw std::invalid_argument("quad_weyl_symbol: refinement must be >= 2");
    // Chord integral: integral dy <q - y/2|A|q + y/2> e^{i p y/hbar}.
    // The integrand is gaussian-enveloped, so plain trapezoid on a window wide
    // enough for the envelope converges past truncation error immediately.
    const double Y = 24.0;
    const int M = 512 * refinement + 1;
    const double h = 2.0 * Y / (M - 1);
    cdouble acc{0.0, 0.0};
    for (int i = 0; i < M; ++i) {
        const double y = -Y + i * h;
        const double w = (i == 0 || i == M - 1) ? 0.5 : 1.0;
        acc += w * kernel(q - 0.5 * y, q + 0.5 * y) * std::polar(1.0, p * y / hbar);
    }
    return acc * h;
}

double oracle_wigner_coherent(double q, double p, double q0, double p0, double sigma,
                              double hbar) {
    const double a = (q - q0) / sigma;
    const double b = sigma * (p - p0) / hbar;
    return std::exp(-a * a - b * b) / (std::numbers::pi * hbar);
}

double oracle_wigner_fock(int n, double q, double p, double sigma, double hbar) {
    const double r2 = (q * q) / (sigma * sigma) + (sigma * sigma * p * p) / (hbar * hbar);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(-r2) * laguerre_poly(n, 2.0 * r2) / (std::numbers::pi * hbar);
}

double oracle_wigner_thermal(double nbar, double q, double p, double sigma, double hbar) {
    const double r2 = (q * q) / (sigma * sigma) + (sigma * sigma * p * p) / (hbar * hbar);
    const double width = 2.0 * nbar + 1.0;
    return std::exp(-r2 / width) / (std::numbers::pi * hbar * width);
}

double closed_form_wigner(const std::string& family, double q, double p, double q0,
                          double p0, double n_or_nbar, double sigma, double hbar) {
    if (family == "coherent")
        return oracle_wigner_coherent(q, p, q0, p0, sigma, hbar);
    if (family == "fock")
        return oracle_wigner_fock(static_cast<int>(n_or_nbar), q, p, sigma, hbar);
    if (family == "thermal")
        return oracle_wigner_thermal(n_or_nbar, q, p, sigma, hbar);
    throw std::invalid_argument("closed_form_wigner: unknown family '" + family + "'");
}

bool oracle_gate(double hbar, std::uint64_t seed, double* worst_rel_err) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uq(-2.0, 2.0);
    std::uniform_real_distribution<double> up(-2.0, 2.0);
    std::uniform_real_distribution<double> usig(0.8, 1.25);
    std::uniform_real_distribution<double> unbar(0.0, 3.0);
    std::uniform_int_distribution<int> un(0, 5);

    const double scale = 1.0 / (std::numbers::pi * hbar); // Wigner bound
    double worst = 0.0;
    const int refinement = 3;

    for (int i = 0; i < 20; ++i) {
        const double q = uq(rng), p = up(rng);
        const double q0 = uq(rng), p0 = up(rng), sig = usig(rng);
        const auto ker = analytic_coherent_kernel(q0, p0, sig, hbar);
        const double quad =
            (quad_weyl_symbol(ker, q, p, hbar, refinement) /
             (2.0 * std::numbers::pi * hbar)).real();
        const double closed = oracle_wigner_coherent(q, p, q0, p0, sig, hbar);
        worst = std::max(worst, std::abs(quad - closed) / scale);
    }
    for (int i = 0; i < 20; ++i) {
        const double q = uq(rng), p = up(rng);
        const int n = un(rng);
        const double sig = usig(rng);
        const auto ker = analytic_fock_kernel(n, sig, hbar);
        const double quad =
            (quad_weyl_symbol(ker, q, p, hbar, refinement) /
             (2.0 * std::numbers::pi * hbar)).real();
        const double closed = oracle_wigner_fock(n, q, p, sig, hbar);
        worst = std::max(worst, std::abs(quad - closed) / scale);
    }
    for (int i = 0; i < 20; ++i) {
        const double q = uq(rng), p = up(rng);
        const double nbar = unbar(rng), sig = usig(rng);
        const auto ker = analytic_thermal_kernel(nbar, sig, hbar);
        const double quad =
            (quad_weyl_symbol(ker, q, p, hbar, refinement) /
             (2.0 * std::numbers::pi * hbar)).real();
        const double closed = oracle_wigner_thermal(nbar, q, p, sig, hbar);
        worst = std::max(worst, std::abs(quad - closed) / scale);
    }

    if (worst_rel_err) *worst_rel_err = worst;
    return worst <= 1e-8;
}

cdouble oracle_left_rep_vacuum(double q, double p, double sigma, double hbar) {
    const double pi = std::numbers::pi;
    const double amp = std::pow(2.0 * pi * hbar, -0.5) *
                       std::pow(pi * sigma * sigma, -0.25) *
                       std::pow(pi * hbar * hbar / (sigma * sigma), -0.25) *
                       std::exp(-0.5 * q * q / (sigma * sigma) -
                                0.5 * sigma * sigma * p * p / (hbar * hbar));
    return std::polar(amp, -q * p / hbar);
}

cdouble oracle_left_rep_at(const OperatorKernel& A, int j, double p) {
    const GridSpec& g = A.grid;
    const cvector ket = momentum_eigenvector(g, p); // <q_b|p>
    cdouble s{0.0, 0.0};
    for (int b = 0; b < g.N; ++b)
        s += A.k[static_cast<std::size_t>(j) * g.N + b] * ket[b];
    s *= g.dq(); // <q_j|A|p>
    const double pref = std::pow(2.0 * std::numbers::pi * g.hbar, -0.5);
    return pref * s * std::polar(1.0, -g.q(j) * p / g.hbar);
}

cdouble trace_oracle(const OperatorKernel& A, const OperatorKernel& B) {
    require_same_grid(A.grid, B.grid);
    const int N = A.grid.N;
    cdouble s{0.0, 0.0};
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            s += A.k[static_cast<std::size_t>(a) * N + b] *
                 B.k[static_cast<std::size_t>(b) * N + a];
    const double dq = A.grid.dq();
    return s * (dq * dq);
}

double laguerre_poly(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre_poly: n must be >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 - x;
    for (int k = 2; k <= n; ++k) {
        const double next = ((2.0 * k - 1.0 - x) * cur - (k - 1.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace weylwig
