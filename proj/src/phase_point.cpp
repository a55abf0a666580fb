#include "weylwig/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weylwig {

OperatorKernel phase_point_op(const GridSpec& g, double q0, double p0) {
    const int j0 = lattice_index(g, q0);
    const int N = g.N;
    const double amp = 1.0 / (std::numbers::pi * g.hbar * g.dq());

    OperatorKernel W = zero_operator(g);
    for (int a = 0; a < N; ++a) {
        const int b = 2 * j0 - a;
        if (b < 0 || b >= N) continue;
        W.k[static_cast<std::size_t>(a) * N + b] =
            std::polar(amp, p0 * (g.q(a) - g.q(b)) / g.hbar);
    }
    return W;
}

OperatorKernel phase_point_q_projector(const GridSpec& g, double q0) {
    const int N = g.N;
    OperatorKernel acc = zero_operator(g);
    for (int k = 0; k < N; ++k) {
        const OperatorKernel W = phase_point_op(g, q0, g.pw(k));
        for (std::size_t i = 0; i < acc.k.size(); ++i) acc.k[i] += g.dpw() * W.k[i];
    }
    return acc;
}

OperatorKernel phase_point_p_smear(const GridSpec& g, double p0) {
    const int N = g.N;
    OperatorKernel acc = zero_operator(g);
    for (int j = 0; j < N; ++j) {
        const OperatorKernel W = phase_point_op(g, g.q(j), p0);
        for (std::size_t i = 0; i < acc.k.size(); ++i) acc.k[i] += g.dq() * W.k[i];
    }
    return acc;
}

OperatorKernel phase_point_resolution(const GridSpec& g) {
    const int N = g.N;
    const double w = g.dq() * g.dpw();
    OperatorKernel acc = zero_operator(g);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            const double amp = w / (std::numbers::pi * g.hbar * g.dq());
            const double p0 = g.pw(k);
            for (int a = 0; a < N; ++a) {
                const int b = 2 * j - a;
                if (b < 0 || b >= N) continue;
                acc.k[static_cast<std::size_t>(a) * N + b] +=
                    std::polar(amp, p0 * (g.q(a) - g.q(b)) / g.hbar);
            }
        }
    return acc;
}

AnticomCheck phase_point_anticom_check(const GridSpec& g, double q0, double p0,
                                       std::uint64_t seed) {
    const OperatorKernel W = phase_point_op(g, q0, p0);
    const OperatorKernel Q = op_position(g);
    const OperatorKernel P = op_momentum(g);

    AnticomCheck out;
    out.scale = op_max_abs(W);

    const auto sym_defect = [&](const OperatorKernel& X, double x0) {
        OperatorKernel D = op_add(op_matmul(X, W), op_matmul(W, X));
        D = op_add(op_scale(cdouble{0.5, 0.0}, D), op_scale(cdouble{-x0, 0.0}, W));
        return D;
    };

    const OperatorKernel Dq = sym_defect(Q, q0);
    out.q_defect = op_max_abs(Dq) / out.scale;

    const OperatorKernel Dp = sym_defect(P, p0);
    out.p_defect_raw = op_max_abs(Dp) / out.scale;

    // Smeared momentum defect: pair Dp against a few smooth band-limited
    // probes. The raw entrywise defect sits at the Brillouin edge and does not
    // shrink with N; traced against band-limited operators it decays
    // spectrally. Normalization: tr{W G} carries 1/(pi hbar), and the probe
    // momentum content is O(max(|p0|, sqrt(hbar))).
    std::mt19937_64 rng(seed);
    const double pchar = std::max(std::abs(p0), std::sqrt(g.hbar));
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
        const OperatorKernel G = random_bandlimited_operator(g, rng, 4, true);
        const cdouble t = op_trace(op_matmul(Dp, G));
        worst = std::max(worst, std::abs(t));
    }
    out.p_defect = worst * std::numbers::pi * g.hbar / pchar;
    return out;
}

SymplecticFourierResult symplectic_fourier_once(const GridSpec& g, double q0, double p0,
                                                int x_cutoff) {
    if (x_cutoff < 0 || x_cutoff >= g.N)
        throw std::invalid_argument("symplectic_fourier_once: x_cutoff must lie in [0, N)");
    const int N = g.N;
    const double dq = g.dq();
    const double dk = g.dp();
    const double two_pi_h = 2.0 * std::numbers::pi * g.hbar;
    const double coeff = dq * dk / (two_pi_h * two_pi_h);

    OperatorKernel R = zero_operator(g);
    for (int s = -x_cutoff; s <= x_cutoff; ++s) {
        const double x = s * dq;
        for (int m = 0; m < 2 * N; ++m) {
            const double kk = (m - 0.5 * (2 * N - 1)) * dk;
            const cdouble c =
                coeff * std::polar(1.0, -(x * p0 - kk * q0) / g.hbar);
            const OperatorKernel Wx = op_weyl(g, x, kk);
            // op_weyl has one nonzero per row at the cyclic shift; accumulate
            // just those entries.
            for (int a = 0; a < N; ++a) {
                const int b = ((a + s) % N + N) % N;
                const std::size_t i = static_cast<std::size_t>(a) * N + b;
                R.k[i] += c * Wx.k[i];
            }
        }
    }

    const OperatorKernel W = phase_point_op(g, q0, p0);
    const OperatorKernel D = op_add(R, op_scale(cdouble{-1.0, 0.0}, W));

    SymplecticFourierResult out;
    out.defect = op_frobenius(D);
    out.scale = op_frobenius(W);
    out.x_cutoff = x_cutoff;
    return out;
}

std::vector<SymplecticFourierResult> symplectic_fourier_check(
    const GridSpec& g, double q0, double p0, const std::vector<int>& x_cutoffs) {
    std::vector<SymplecticFourierResult> out;
    out.reserve(x_cutoffs.size());
    for (int c : x_cutoffs) out.push_back(symplectic_fourier_once(g, q0, p0, c));
    return out;
}

} // namespace weylwig
