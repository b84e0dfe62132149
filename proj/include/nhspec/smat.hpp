#pragma once

#include <vector>

#include "nhspec/model.hpp"

namespace nhspec {

/// One resonance in the scattering convention: positive width.
struct Resonance {
    double energy = 0.0;
    double width = 0.0;

    Resonance(double e, double g) : energy(e), width(g) {
        if (!is_finite(e) || !is_finite(g)) throw DomainError("Resonance: non-finite input");
        if (!(g > 0.0)) throw DomainError("Resonance: width must be > 0");
    }
};

struct LineShape {
    std::vector<double> energies;
    std::vector<Complex> s_values;
    std::vector<double> sigma;  // |1 - S|^2
};

/// Unitary single-resonance form S = (E - E1 + i*G1/2) / (E - E1 - i*G1/2).
inline Complex breit_wigner(double E, const Resonance& res) {
    const Complex d{E - res.energy, -0.5 * res.width};
    return std::conj(d) / d;
}

inline Complex two_resonance_s(double E, const Resonance& r1, const Resonance& r2) {
    return breit_wigner(E, r1) * breit_wigner(E, r2);
}

/// Double-pole form at coalescence (E1 = E2 = Ed, G1 = G2 = Gd):
/// S = 1 + 2i*Gd/(E - Ed - i*Gd/2) - Gd^2/(E - Ed - i*Gd/2)^2.
inline Complex double_pole_s(double E, double ed, double gamma_d) {
    if (!(gamma_d > 0.0)) throw DomainError("double_pole_s: gamma_d must be > 0");
    const Complex d{E - ed, -0.5 * gamma_d};
    return 1.0 + Complex{0.0, 2.0 * gamma_d} / d - gamma_d * gamma_d / (d * d);
}

/// sigma(E) = |1 - S(E)|^2 with unit proportionality constant.
inline LineShape cross_section(std::vector<double> energies, std::vector<Complex> s_values) {
    if (energies.empty() || energies.size() != s_values.size())
        throw DimensionError("cross_section: grid/value size mismatch or empty grid");
    LineShape out;
    out.sigma.reserve(energies.size());
    for (const Complex& s : s_values) out.sigma.push_back(std::norm(1.0 - s));
    out.energies = std::move(energies);
    out.s_values = std::move(s_values);
    return out;
}

}  // namespace nhspec
