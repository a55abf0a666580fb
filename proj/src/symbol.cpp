#include "weylwig/wigner.hpp"

#include "weylwig/simd.hpp"
#include "weylwig/threads.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weylwig {

namespace {

void require_wigner_lattice(const PhaseSpaceFunction& f, const char* who) {
    if (!f.wigner_lattice)
        throw std::invalid_argument(std::string(who) +
                                    ": expects samples on the half-step Wigner lattice");
}

} // namespace

PhaseSpaceFunction weyl_symbol(const OperatorKernel& A, int threads) {
    const GridSpec& g = A.grid;
    const int N = g.N;
    const int M = (N - 1) / 2; // largest |m| with both chord ends in window
    const double c = 0.5 * (N - 1);
    const double two_pi = 2.0 * std::numbers::pi;

    // Chord matrix Cm[j][m + M] = K[j-m][j+m], zero outside the window, padded
    // to N columns so the product is a single square matmul with the phase
    // matrix P[m + M][k] = e^{2 pi i m (k - c)/N}.
    const std::size_t nn = static_cast<std::size_t>(N) * N;
    cvector Cm(nn, cdouble{0.0, 0.0});
    for (int j = 0; j < N; ++j) {
        const int mm = std::min(j, N - 1 - j);
        for (int m = -mm; m <= mm; ++m)
            Cm[static_cast<std::size_t>(j) * N + (m + M)] =
                A.k[static_cast<std::size_t>(j - m) * N + (j + m)];
    }
    cvector P(nn, cdouble{0.0, 0.0});
    for (int m = -M; m <= M; ++m)
        for (int k = 0; k < N; ++k)
            P[static_cast<std::size_t>(m + M) * N + k] =
                std::polar(1.0, two_pi * m * (k - c) / N);

    PhaseSpaceFunction out;
    out.grid = g;
    out.wigner_lattice = true;
    out.f.assign(nn, cdouble{0.0, 0.0});
    simd::matmul(Cm.data(), P.data(), out.f.data(), N, cdouble{2.0 * g.dq(), 0.0}, threads);
    return out;
}

cdouble weyl_symbol_at(const OperatorKernel& A, double q, double p) {
    const GridSpec& g = A.grid;
    const int j = lattice_index(g, q);
    const int mm = std::min(j, g.N - 1 - j);
    cdouble s{0.0, 0.0};
    for (int m = -mm; m <= mm; ++m)
        s += A.k[static_cast<std::size_t>(j - m) * g.N + (j + m)] *
             std::polar(1.0, 2.0 * p * m * g.dq() / g.hbar);
    return s * (2.0 * g.dq());
}

OperatorKernel weyl_quantize(const PhaseSpaceFunction& F, int threads) {
    require_wigner_lattice(F, "weyl_quantize");
    const GridSpec& g = F.grid;
    const int N = g.N;
    const double c = 0.5 * (N - 1);
    const double pi = std::numbers::pi;

    // Midpoint table G[a+b][k]: even a+b rows are rows of F; odd rows are
    // trigonometric interpolation of F at the half-step midpoint, using the
    // periodic cardinal function of the q lattice.
    const std::size_t cols = static_cast<std::size_t>(N);
    cvector G(static_cast<std::size_t>(2 * N - 1) * N, cdouble{0.0, 0.0});
    std::vector<double> w(N);
    for (int x2 = 0; x2 <= 2 * N - 2; ++x2) {
        cdouble* row = G.data() + static_cast<std::size_t>(x2) * cols;
        if (x2 % 2 == 0) {
            const cdouble* src = F.f.data() + static_cast<std::size_t>(x2 / 2) * cols;
            for (int k = 0; k < N; ++k) row[k] = src[k];
            continue;
        }
        for (int j = 0; j < N; ++j) {
            const double u = 0.5 * x2 - j; // half-integer, never zero
            if (N % 2 == 1)
                w[j] = std::sin(pi * u) / (N * std::sin(pi * u / N));
            else
                w[j] = std::sin(pi * u) / (N * std::tan(pi * u / N));
        }
        for (int j = 0; j < N; ++j) {
            const cdouble* src = F.f.data() + static_cast<std::size_t>(j) * cols;
            const double wj = w[j];
            for (int k = 0; k < N; ++k) row[k] += wj * src[k];
        }
    }

    // Phase rows ph[d][k] = e^{-i pi d (k - c)/N} for d = b - a >= 0; negative
    // d uses the conjugate, which keeps the output hermitian bitwise whenever
    // the input samples are real.
    cvector ph(static_cast<std::size_t>(N) * N);
    for (int d = 0; d < N; ++d)
        for (int k = 0; k < N; ++k)
            ph[static_cast<std::size_t>(d) * N + k] =
                std::polar(1.0, -pi * d * (k - c) / N);

    OperatorKernel out = zero_operator(g);
    const double scale = 1.0 / (2.0 * g.dq() * N);
    parallel_for(N, threads, [&](int lo, int hi) {
        for (int a = lo; a < hi; ++a)
            for (int b = 0; b < N; ++b) {
                const int d = b - a;
                const cdouble* grow = G.data() + static_cast<std::size_t>(a + b) * cols;
                const cdouble* prow =
                    ph.data() + static_cast<std::size_t>(d < 0 ? -d : d) * N;
                double sr = 0.0, si = 0.0;
                if (d >= 0) {
                    for (int k = 0; k < N; ++k) {
                        const cdouble gk = grow[k];
                        const cdouble pk = prow[k];
                        sr += gk.real() * pk.real() - gk.imag() * pk.imag();
                        si += gk.real() * pk.imag() + gk.imag() * pk.real();
                    }
                } else {
                    for (int k = 0; k < N; ++k) {
                        const cdouble gk = grow[k];
                        const cdouble pk = prow[k];
                        sr += gk.real() * pk.real() + gk.imag() * pk.imag();
                        si += -(gk.real() * pk.imag()) + gk.imag() * pk.real();
                    }
                }
                out.k[static_cast<std::size_t>(a) * N + b] =
                    cdouble{sr * scale, si * scale};
            }
    });
    return out;
}

cdouble trace_pairing(const PhaseSpaceFunction& Aw, const PhaseSpaceFunction& Bw) {
    require_same_grid(Aw.grid, Bw.grid);
    require_wigner_lattice(Aw, "trace_pairing");
    require_wigner_lattice(Bw, "trace_pairing");
    cdouble s{0.0, 0.0};
    for (std::size_t i = 0; i < Aw.f.size(); ++i) s += Aw.f[i] * Bw.f[i];
    const GridSpec& g = Aw.grid;
    return s * (g.dq() * g.dpw() / (2.0 * std::numbers::pi * g.hbar));
}

PhaseSpaceFunction wigner_distribution(const OperatorKernel& rho, int threads) {
    PhaseSpaceFunction W = weyl_symbol(rho, threads);
    const double scale = 1.0 / (2.0 * std::numbers::pi * rho.grid.hbar);
    for (cdouble& v : W.f) v *= scale;
    return W;
}

std::vector<double> wigner_marginal_q(const PhaseSpaceFunction& W) {
    require_wigner_lattice(W, "wigner_marginal_q");
    const int N = W.grid.N;
    std::vector<double> out(N, 0.0);
    for (int j = 0; j < N; ++j) {
        cdouble s{0.0, 0.0};
        for (int k = 0; k < N; ++k) s += W.at(j, k);
        out[j] = s.real() * W.grid.dpw();
    }
    return out;
}

std::vector<double> wigner_marginal_p(const PhaseSpaceFunction& W) {
    require_wigner_lattice(W, "wigner_marginal_p");
    const int N = W.grid.N;
    std::vector<double> out(N, 0.0);
    for (int k = 0; k < N; ++k) {
        cdouble s{0.0, 0.0};
        for (int j = 0; j < N; ++j) s += W.at(j, k);
        out[k] = s.real() * W.grid.dq();
    }
    return out;
}

} // namespace weylwig
