#pragma once

#include "nhspec/model.hpp"

namespace nhspec {

/// Energy-distance damping of the coupling: omega * exp(-(e_i - e_j)^2).
inline Complex gaussian_coupling(const Complex& omega, double e_i, double e_j) {
    const double d = e_i - e_j;
    return omega * std::exp(-d * d);
}

namespace detail {
inline Complex pair_coupling(const Coupling& c, double e_i, double e_j) {
    return c.gaussian_modulated ? gaussian_coupling(c.omega, e_i, e_j) : c.omega;
}
}  // namespace detail

/// Two resonance levels coupled through a common channel.
inline ModelMatrix build_two_level(const LevelSet& levels, const Coupling& coupling) {
    if (levels.size() != 2)
        throw DimensionError("build_two_level: exactly 2 levels required");
    const Complex eps1 = levels.levels[0].eps();
    const Complex eps2 = levels.levels[1].eps();
    const Complex w = detail::pair_coupling(coupling, levels.levels[0].e, levels.levels[1].e);
    std::vector<Complex> m{eps1, w, w, eps2};
    return ModelMatrix(2, std::move(m), {eps1, eps2});
}

/// Gain/loss pair at common energy e. Balanced: diag(e - i*gamma/2, e + i*gamma/2).
/// Lossy variant (vanishing gain): diag(e - i*gamma/2, e).
inline ModelMatrix build_pt(double e, double gamma, double w, bool lossy_variant) {
    if (!is_finite(e) || !is_finite(gamma) || !is_finite(w))
        throw DomainError("build_pt: non-finite input");
    const Complex eps1{e, -0.5 * gamma};
    const Complex eps2 = lossy_variant ? Complex{e, 0.0} : Complex{e, 0.5 * gamma};
    std::vector<Complex> m{eps1, Complex{w, 0.0}, Complex{w, 0.0}, eps2};
    return ModelMatrix(2, std::move(m), {eps1, eps2});
}

/// Doorway topology: level 1 couples to levels 2 and 3, levels 2 and 3 are
/// not coupled directly (entry (2,3) = 0 exactly).
inline ModelMatrix build_three_level_doorway(const LevelSet& levels, const Coupling& coupling) {
    if (levels.size() != 3)
        throw DimensionError("build_three_level_doorway: exactly 3 levels required");
    const auto& ls = levels.levels;
    const Complex w12 = detail::pair_coupling(coupling, ls[0].e, ls[1].e);
    const Complex w13 = detail::pair_coupling(coupling, ls[0].e, ls[2].e);
    const Complex zero{0.0, 0.0};
    std::vector<Complex> m{
        ls[0].eps(), w12,         w13,
        w12,         ls[1].eps(), zero,
        w13,         zero,        ls[2].eps()};
    return ModelMatrix(3, std::move(m), {ls[0].eps(), ls[1].eps(), ls[2].eps()});
}

/// H = diag(hb) - i*alpha * V V^T  (one real channel).
inline ModelMatrix build_channel_model(const std::vector<double>& hb_diag,
                                       const ChannelVector& channel) {
    const std::size_t n = hb_diag.size();
    if (channel.v.size() != n)
        throw DimensionError("build_channel_model: diagonal/channel length mismatch");
    std::vector<Complex> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex z{0.0, -channel.alpha * channel.v[i] * channel.v[j]};
            if (i == j) z += hb_diag[i];
            m[i * n + j] = z;
        }
    }
    std::vector<Complex> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = m[i * n + i];
    return ModelMatrix(n, std::move(m), std::move(diag));
}

}  // namespace nhspec
