#include "weylwig/wigner.hpp"

#include "weylwig/simd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weylwig {

namespace {

// E[j*N + k] = exp(i q_j p_k / hbar).  Shared by every representative map
// below; conj(E) doubles as its inverse because the entries are unimodular.
cvector phase_table(const GridSpec& g) {
    const int N = g.N;
    cvector E(static_cast<std::size_t>(N) * N);
    for (int j = 0; j < N; ++j) {
        const double qj = g.q(j);
        for (int k = 0; k < N; ++k)
            E[static_cast<std::size_t>(j) * N + k] =
                std::polar(1.0, qj * g.p(k) / g.hbar);
    }
    return E;
}

void require_position_lattice(const PhaseSpaceFunction& f, const char* who) {
    if (f.wigner_lattice)
        throw std::invalid_argument(std::string(who) +
                                    ": expects samples on the p lattice, not the half-step Wigner lattice");
}

} // namespace

PhaseSpaceFunction left_rep(const OperatorKernel& A, int threads) {
    const GridSpec& g = A.grid;
    const int N = g.N;
    const double two_pi_h = 2.0 * std::numbers::pi * g.hbar;

    // A_l(q_j, p_k) = (dq / 2 pi hbar) sum_b K[j][b] e^{i q_b p_k / hbar}
    //                 * e^{-i q_j p_k / hbar}
    // The sum is a plain matrix product K * E; the trailing factor is an
    // elementwise conjugate phase.
    const cvector E = phase_table(g);
    PhaseSpaceFunction out;
    out.grid = g;
    out.wigner_lattice = false;
    out.f.assign(static_cast<std::size_t>(N) * N, cdouble{0.0, 0.0});
    simd::matmul(A.k.data(), E.data(), out.f.data(), N, cdouble{g.dq() / two_pi_h, 0.0}, threads);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
            out.f[static_cast<std::size_t>(j) * N + k] *=
                std::conj(E[static_cast<std::size_t>(j) * N + k]);
    return out;
}

PhaseSpaceFunction right_rep(const OperatorKernel& A, int threads) {
    const GridSpec& g = A.grid;
    const int N = g.N;
    const double two_pi_h = 2.0 * std::numbers::pi * g.hbar;

    // A_r(q_j, p_k) = (dq / 2 pi hbar) sum_a e^{-i q_a p_k / hbar} K[a][j]
    //                 * e^{i q_j p_k / hbar}
    // Row/column order: compute conj(E)^T * K as matmul(F, A) with F = conj(E)
    // read transposed, i.e. T[k][j] = sum_a conj(E)[a][k] K[a][j].  matmul works
    // on row-major squares, so build F_t[k][a] = conj(E[a][k]) first.
    const cvector E = phase_table(g);
    cvector Ft(static_cast<std::size_t>(N) * N);
    for (int k = 0; k < N; ++k)
        for (int a = 0; a < N; ++a)
            Ft[static_cast<std::size_t>(k) * N + a] =
                std::conj(E[static_cast<std::size_t>(a) * N + k]);
    cvector T(static_cast<std::size_t>(N) * N, cdouble{0.0, 0.0});
    simd::matmul(Ft.data(), A.k.data(), T.data(), N, cdouble{g.dq() / two_pi_h, 0.0}, threads);

    PhaseSpaceFunction out;
    out.grid = g;
    out.wigner_lattice = false;
    out.f.assign(static_cast<std::size_t>(N) * N, cdouble{0.0, 0.0});
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
            out.f[static_cast<std::size_t>(j) * N + k] =
                T[static_cast<std::size_t>(k) * N + j] *
                E[static_cast<std::size_t>(j) * N + k];
    return out;
}

RepMarginals rep_marginals(const PhaseSpaceFunction& f) {
    require_position_lattice(f, "rep_marginals");
    const GridSpec& g = f.grid;
    const int N = g.N;
    RepMarginals m;
    m.q_profile.assign(N, cdouble{0.0, 0.0});
    m.p_profile.assign(N, cdouble{0.0, 0.0});
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            const cdouble v = f.f[static_cast<std::size_t>(j) * N + k];
            m.q_profile[j] += v;
            m.p_profile[k] += v;
        }
    for (int j = 0; j < N; ++j) m.q_profile[j] *= g.dp();
    for (int k = 0; k < N; ++k) m.p_profile[k] *= g.dq();
    return m;
}

cdouble rep_trace(const PhaseSpaceFunction& f) {
    require_position_lattice(f, "rep_trace");
    cdouble s{0.0, 0.0};
    for (const cdouble& v : f.f) s += v;
    return s * (f.grid.dq() * f.grid.dp());
}

PhaseSpaceFunction compose_left(const PhaseSpaceFunction& Al,
                                const PhaseSpaceFunction& Bl, int threads) {
    require_same_grid(Al.grid, Bl.grid);
    require_position_lattice(Al, "compose_left");
    require_position_lattice(Bl, "compose_left");
    const GridSpec& g = Al.grid;
    const int N = g.N;

    // C_l(j,k) = sum_{j',k'} dq dp A_l(j,k') e^{i (q_j - q_j')(p_k' - p_k)/hbar}
    //            B_l(j',k)
    // Split the phase: e^{i q_j p_k'} e^{-i q_j' p_k'} e^{i q_j' p_k} e^{-i q_j p_k}.
    // Then C = conj(E) o [ (A_l o E) * (F * (B_l o E^T-ish)) ] with two square
    // matmuls; o is the elementwise product.  Concretely:
    //   Bh[j'][k]  = E[j'][k] B_l[j'][k]
    //   Bt[k'][k]  = dq  * sum_j' conj(E)[j'][k'] Bh[j'][k]
    //   Ah[j][k']  = A_l[j][k'] E[j][k']
    //   C[j][k]    = dp * sum_k' Ah[j][k'] Bt[k'][k]   then o conj(E)
    const cvector E = phase_table(g);
    const std::size_t nn = static_cast<std::size_t>(N) * N;

    cvector Bh(nn);
    for (std::size_t i = 0; i < nn; ++i) Bh[i] = E[i] * Bl.f[i];

    cvector Ft(nn);
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j)
            Ft[static_cast<std::size_t>(k) * N + j] =
                std::conj(E[static_cast<std::size_t>(j) * N + k]);
    cvector Bt(nn, cdouble{0.0, 0.0});
    simd::matmul(Ft.data(), Bh.data(), Bt.data(), N, cdouble{g.dq(), 0.0}, threads);

    cvector Ah(nn);
    for (std::size_t i = 0; i < nn; ++i) Ah[i] = Al.f[i] * E[i];

    PhaseSpaceFunction out;
    out.grid = g;
    out.wigner_lattice = false;
    out.f.assign(nn, cdouble{0.0, 0.0});
    simd::matmul(Ah.data(), Bt.data(), out.f.data(), N, cdouble{g.dp(), 0.0}, threads);
    for (std::size_t i = 0; i < nn; ++i) out.f[i] *= std::conj(E[i]);
    return out;
}

PhaseSpaceFunction compose_left_naive(const PhaseSpaceFunction& Al,
                                      const PhaseSpaceFunction& Bl) {
    require_same_grid(Al.grid, Bl.grid);
    require_position_lattice(Al, "compose_left_naive");
    require_position_lattice(Bl, "compose_left_naive");
    const GridSpec& g = Al.grid;
    const int N = g.N;
    const double w = g.dq() * g.dp();

    PhaseSpaceFunction out;
    out.grid = g;
    out.wigner_lattice = false;
    out.f.assign(static_cast<std::size_t>(N) * N, cdouble{0.0, 0.0});
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            cdouble acc{0.0, 0.0};
            for (int jp = 0; jp < N; ++jp)
                for (int kp = 0; kp < N; ++kp) {
                    const double phase =
                        (g.q(j) - g.q(jp)) * (g.p(kp) - g.p(k)) / g.hbar;
                    acc += Al.f[static_cast<std::size_t>(j) * N + kp] *
                           std::polar(1.0, phase) *
                           Bl.f[static_cast<std::size_t>(jp) * N + k];
                }
            out.f[static_cast<std::size_t>(j) * N + k] = acc * w;
        }
    return out;
}

cdouble product_trace_via_K(const PhaseSpaceFunction& Al,
                            const PhaseSpaceFunction& Bl, int threads) {
    require_same_grid(Al.grid, Bl.grid);
    require_position_lattice(Al, "product_trace_via_K");
    require_position_lattice(Bl, "product_trace_via_K");
    const GridSpec& g = Al.grid;
    const int N = g.N;
    const std::size_t nn = static_cast<std::size_t>(N) * N;

    // T = sum (dq dp)^2 A_l(q,p) e^{i (q - q')(p - p')/hbar} B_l(q',p')
    //   = sum_{j,k,j',k'} Ah[j][k] conj(E)[j'][k] conj(E)[j][k'] Bh[j'][k']
    // with Ah = A_l o E and Bh = B_l o E elementwise.  Two matmuls:
    //   M1[k][k'] = sum_{j'} conj(E)[j'][k] Bh[j'][k']     (Ft * Bh)
    //   M2[j][k'] = sum_{k}  Ah[j][k] M1[k][k']            (Ah * M1)
    //   T = (dq dp)^2 sum_{j,k'} conj(E)[j][k'] M2[j][k']
    const cvector E = phase_table(g);
    cvector Ah(nn), Bh(nn);
    for (std::size_t i = 0; i < nn; ++i) {
        Ah[i] = Al.f[i] * E[i];
        Bh[i] = Bl.f[i] * E[i];
    }
    cvector Ft(nn);
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j)
            Ft[static_cast<std::size_t>(k) * N + j] =
                std::conj(E[static_cast<std::size_t>(j) * N + k]);
    cvector M1(nn, cdouble{0.0, 0.0});
    simd::matmul(Ft.data(), Bh.data(), M1.data(), N, cdouble{1.0, 0.0}, threads);
    cvector M2(nn, cdouble{0.0, 0.0});
    simd::matmul(Ah.data(), M1.data(), M2.data(), N, cdouble{1.0, 0.0}, threads);

    cdouble s{0.0, 0.0};
    for (std::size_t i = 0; i < nn; ++i) s += std::conj(E[i]) * M2[i];
    const double w = g.dq() * g.dp();
    return s * (w * w);
}

cdouble product_trace_via_K_naive(const PhaseSpaceFunction& Al,
                                  const PhaseSpaceFunction& Bl) {
    require_same_grid(Al.grid, Bl.grid);
    require_position_lattice(Al, "product_trace_via_K_naive");
    require_position_lattice(Bl, "product_trace_via_K_naive");
    const GridSpec& g = Al.grid;
    const int N = g.N;
    const double w = g.dq() * g.dp();

    cdouble s{0.0, 0.0};
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            const cdouble a = Al.f[static_cast<std::size_t>(j) * N + k];
            if (a == cdouble{0.0, 0.0}) continue;
            for (int jp = 0; jp < N; ++jp)
                for (int kp = 0; kp < N; ++kp) {
                    const cdouble kk = kernel_K({g.q(j), g.p(k)},
                                                {g.q(jp), g.p(kp)}, g.hbar);
                    s += a * kk * Bl.f[static_cast<std::size_t>(jp) * N + kp];
                }
        }
    return s * (w * w);
}

} // namespace weylwig
