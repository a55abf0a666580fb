#include "weylwig/wigner.hpp"

#include "weylwig/simd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weylwig {

// Damped Riemann sum for the xi route at one regulator strength:
//   S(eps) = sqrt(2 pi hbar) sum_{j,k} dq dp xi(at; (q_j, p_k))
//            e^{-eps (q_j^2 + p_k^2)} A_l(q_j, p_k)
// The phase of xi splits as e^{2i q p/hbar} e^{-2i q_j p/hbar}
// e^{-2i q p_k/hbar} e^{2i q_j p_k/hbar}; everything not involving the target
// point is folded into a per-eps matrix, leaving an O(N^2) contraction per
// target. The bare sum oscillates without converging; the gaussian regulator
// plus polynomial extrapolation through `damping` recovers the eps -> 0 limit.
std::vector<cdouble> xi_transform(const PhaseSpaceFunction& Al,
                                  const std::vector<PhasePoint>& at,
                                  const std::vector<double>& damping) {
    if (Al.wigner_lattice)
        throw std::invalid_argument(
            "xi_transform: A_l lives on the conjugate lattice, not the Wigner lattice");
    require_damping(damping);

    const GridSpec& g = Al.grid;
    const int N = g.N;
    const double pref = std::sqrt(2.0 * std::numbers::pi * g.hbar) *
                        std::sqrt(2.0 / (std::numbers::pi * g.hbar)) *
                        g.dq() * g.dp();

    std::vector<cdouble> out(at.size(), cdouble{0.0, 0.0});
    std::vector<std::vector<cdouble>> stages(at.size());

    cvector M(static_cast<std::size_t>(N) * N);
    cvector wk(N), tj(N);
    for (double eps : damping) {
        for (int j = 0; j < N; ++j) {
            const double qj = g.q(j);
            for (int k = 0; k < N; ++k) {
                const double pk = g.p(k);
                M[static_cast<std::size_t>(j) * N + k] =
                    Al.f[static_cast<std::size_t>(j) * N + k] *
                    std::polar(std::exp(-eps * (qj * qj + pk * pk)),
                               2.0 * qj * pk / g.hbar);
            }
        }
        for (std::size_t i = 0; i < at.size(); ++i) {
            const double q = at[i].q, p = at[i].p;
            for (int k = 0; k < N; ++k)
                wk[k] = std::polar(1.0, -2.0 * q * g.p(k) / g.hbar);
            for (int j = 0; j < N; ++j)
                tj[j] = simd::cdotu(M.data() + static_cast<std::size_t>(j) * N,
                                    wk.data(), N);
            cdouble s{0.0, 0.0};
            for (int j = 0; j < N; ++j)
                s += std::polar(1.0, -2.0 * g.q(j) * p / g.hbar) * tj[j];
            stages[i].push_back(pref * std::polar(1.0, 2.0 * q * p / g.hbar) * s);
        }
    }

    for (std::size_t i = 0; i < at.size(); ++i)
        out[i] = extrapolate_to_zero(damping, stages[i]);
    return out;
}

} // namespace weylwig
