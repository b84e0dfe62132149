#pragma once

#include <algorithm>
#include <array>

#include "nhspec/model.hpp"

namespace nhspec {

struct TwoLevelEigen {
    Complex lambda_plus;
    Complex lambda_minus;
    Complex z;  // half-splitting: lambda_pm = mean +- z
};

enum class RegimeTag { LevelRepulsion, WidthBifurcation, ExceptionalPoint };

struct Regime {
    RegimeTag tag;
    double margin;  // |discriminant|
};

struct StructureError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BranchDegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Discriminant D = (eps1 - eps2)^2 + 4 omega^2 of the 2x2 model; Z = sqrt(D)/2.
inline Complex two_level_discriminant(const ModelMatrix& m) {
    if (m.size() != 2) throw DimensionError("two_level_discriminant: N=2 required");
    const Complex d = m.at(0, 0) - m.at(1, 1);
    const Complex w = m.at(0, 1);
    return d * d + 4.0 * w * w;
}

inline TwoLevelEigen two_level_eigenvalues(const ModelMatrix& m) {
    if (m.size() != 2) throw DimensionError("two_level_eigenvalues: N=2 required");
    const Complex mean = 0.5 * (m.at(0, 0) + m.at(1, 1));
    const Complex z = 0.5 * std::sqrt(two_level_discriminant(m));
    return {mean + z, mean - z, z};
}

inline Regime classify_two_level(const ModelMatrix& m, double tolerance = 1e-9) {
    const Complex d = two_level_discriminant(m);
    const double margin = std::abs(d);
    if (margin <= tolerance) return {RegimeTag::ExceptionalPoint, margin};
    // Real discriminant: sign decides between repulsion (Z real) and width
    // bifurcation (Z imaginary). A genuinely complex discriminant never
    // vanishes on the sweep and behaves like an avoided crossing.
    if (d.real() < 0.0 && std::abs(d.imag()) <= tolerance)
        return {RegimeTag::WidthBifurcation, margin};
    return {RegimeTag::LevelRepulsion, margin};
}

/// Balanced pair: lambda_pm = e +- sqrt(4w^2 - gamma^2)/2.
/// Lossy variant:  lambda_pm = e - i*gamma/4 +- sqrt(4w^2 - gamma^2/4)/2.
inline TwoLevelEigen pt_eigenvalues(double e, double gamma, double w, bool lossy_variant) {
    if (!is_finite(e) || !is_finite(gamma) || !is_finite(w))
        throw DomainError("pt_eigenvalues: non-finite input");
    if (lossy_variant) {
        const Complex mean{e, -0.25 * gamma};
        const Complex z = 0.5 * std::sqrt(Complex{4.0 * w * w - 0.25 * gamma * gamma, 0.0});
        return {mean + z, mean - z, z};
    }
    const Complex mean{e, 0.0};
    const Complex z = 0.5 * std::sqrt(Complex{4.0 * w * w - gamma * gamma, 0.0});
    return {mean + z, mean - z, z};
}

/// Asymptotic lossy-variant modes for gamma >> w: (e, e - i*gamma/2).
inline std::array<Complex, 2> pt_large_gamma_limit(double e, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("pt_large_gamma_limit: gamma > 0 required");
    return {Complex{e, 0.0}, Complex{e, -0.5 * gamma}};
}

/// Half-splitting written out in terms of e_i, gamma_i. Algebraically equal to
/// two_level_eigenvalues().z; kept as an independent cross-check route.
inline Complex mixed_sign_z(const ModelMatrix& m) {
    if (m.size() != 2) throw DimensionError("mixed_sign_z: N=2 required");
    const double e1 = m.at(0, 0).real(), e2 = m.at(1, 1).real();
    const double g1 = 2.0 * m.at(0, 0).imag(), g2 = 2.0 * m.at(1, 1).imag();
    const Complex w = m.at(0, 1);
    const double de = e1 - e2, dg = g1 - g2;
    const Complex arg = Complex{de * de - 0.25 * dg * dg, de * dg} + 4.0 * w * w;
    return 0.5 * std::sqrt(arg);
}

struct CubicSolution {
    std::array<Complex, 3> lambdas;
    Complex r, s, t;  // monic cubic coefficients: l^3 + r*l^2 + s*l + t = 0
    Complex p, q;     // depressed cubic y^3 + p*y + q = 0
    Complex u, v;
};

/// Cardano solution for the doorway 3x3 model (entry (2,3) must vanish).
inline CubicSolution cardano_eigenvalues(const ModelMatrix& m) {
    if (m.size() != 3) throw DimensionError("cardano_eigenvalues: N=3 required");
    double scale = 0.0;
    for (const auto& z : m.entries()) scale = std::max(scale, std::abs(z));
    if (std::abs(m.at(1, 2)) > 1e-14 * std::max(1.0, scale))
        throw StructureError("cardano_eigenvalues: doorway structure requires entry (2,3) = 0");

    const Complex e1 = m.at(0, 0), e2 = m.at(1, 1), e3 = m.at(2, 2);
    const Complex w12 = m.at(0, 1), w13 = m.at(0, 2);

    CubicSolution out;
    out.r = -(e1 + e2 + e3);
    out.s = e1 * e2 + e1 * e3 + e2 * e3 - w12 * w12 - w13 * w13;
    out.t = w12 * w12 * e3 + w13 * w13 * e2 - e1 * e2 * e3;
    out.p = (3.0 * out.s - out.r * out.r) / 3.0;
    out.q = 2.0 * out.r * out.r * out.r / 27.0 - out.r * out.s / 3.0 + out.t;

    const Complex shift = -out.r / 3.0;
    const double mag = std::max({1.0, std::abs(out.p), std::abs(out.q)});
    if (std::abs(out.p) <= 1e-15 * mag && std::abs(out.q) <= 1e-15 * mag * mag) {
        out.u = out.v = Complex{0.0, 0.0};
        out.lambdas = {shift, shift, shift};
        return out;
    }

    const Complex inner =
        std::sqrt(std::pow(out.p / 3.0, 3) + std::pow(out.q / 2.0, 2));
    const Complex s_plus = -out.q / 2.0 + inner;
    const Complex s_minus = -out.q / 2.0 - inner;
    const Complex chosen = std::abs(s_plus) >= std::abs(s_minus) ? s_plus : s_minus;
    out.u = std::pow(chosen, 1.0 / 3.0);
    if (std::abs(out.u) < 1e-14 * std::cbrt(mag))
        throw BranchDegeneracyError("cardano_eigenvalues: cube-root branch degenerate, use numeric solver");
    out.v = -out.p / (3.0 * out.u);

    const Complex uv = out.u + out.v;
    const Complex split = Complex{0.0, std::sqrt(3.0) / 2.0} * (out.u - out.v);
    out.lambdas = {uv + shift, -0.5 * uv + shift + split, -0.5 * uv + shift - split};
    return out;
}

/// Eigenvalues of the v = -u family at the triple crossing:
/// (-R/3, -R/3 + i*u*sqrt(3), -R/3 - i*u*sqrt(3)) with R = -(eps1+eps2+eps3).
inline std::array<Complex, 3> triple_crossing_limit(const std::array<Complex, 3>& eps,
                                                    const Complex& u) {
    const Complex shift = (eps[0] + eps[1] + eps[2]) / 3.0;
    const Complex split = Complex{0.0, std::sqrt(3.0)} * u;
    return {shift, shift + split, shift - split};
}

}  // namespace nhspec
