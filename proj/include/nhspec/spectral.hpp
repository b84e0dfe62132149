#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "nhspec/model.hpp"

namespace nhspec {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reported norms and mixing magnitudes are capped here near an EP.
inline constexpr double kDivergenceCap = 1e12;

/// Rigidity below this marks a row as too close to an EP for the
/// biorthogonality tolerances to be meaningful.
inline constexpr double kNearEpRigidity = 5e-3;

struct Eigenpair {
    Complex lambda;
    Eigen::VectorXcd phi;  // right eigenvector
};

struct Spectrum {
    std::vector<Eigenpair> pairs;
    std::vector<double> a_norm;      // A_i = <phi_i|phi_i>  (Hermitian, >= 1)
    std::vector<double> rigidity;    // r_i = 1/A_i
    Eigen::MatrixXd b_overlap;       // |<phi_i|phi_j>|
    std::vector<bool> near_ep_flags;

    std::size_t size() const { return pairs.size(); }
};

struct MixingTable {
    Eigen::MatrixXcd b;          // b_ij: components of phi_i in the H0 basis
    Eigen::MatrixXd magnitude;   // |b_ij|, capped
    Eigen::MatrixXd phase;       // theta_ij = atan2(Im b_ij, Re b_ij)
};

struct AngleDiagnostic {
    double cos_omega_mag;  // in [0, 1]
    Complex raw_overlap;
};

namespace detail {

inline Complex bilinear(const Eigen::VectorXcd& u, const Eigen::VectorXcd& w) {
    return (u.transpose() * w)(0);  // no conjugation
}

inline void fix_reference_sign(Eigen::VectorXcd& phi) {
    Eigen::Index jmax = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < phi.size(); ++j) {
        if (std::abs(phi[j]) > best) {
            best = std::abs(phi[j]);
            jmax = j;
        }
    }
    const Complex lead = phi[jmax];
    if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0)) phi = -phi;
}

}  // namespace detail

/// Scale each right eigenvector so the bilinear self-overlap <phi*|phi> is 1
/// (which also makes Im<phi*|phi> = 0), then compute the Hermitian diagnostics.
/// `tolerance` is the eigenvalue-separation scale used for near-EP flagging.
inline Spectrum biorthonormalize(std::vector<Eigenpair> pairs, double tolerance = 1e-9) {
    const std::size_t n = pairs.size();
    Spectrum out;
    out.a_norm.assign(n, 0.0);
    out.rigidity.assign(n, 0.0);
    out.near_ep_flags.assign(n, false);

    double scale = 0.0;
    for (const auto& p : pairs) scale = std::max(scale, std::abs(p.lambda));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(pairs[i].lambda - pairs[j].lambda) <= tolerance * std::max(1.0, scale)) {
                out.near_ep_flags[i] = true;
                out.near_ep_flags[j] = true;
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXcd& phi = pairs[i].phi;
        const double h2 = phi.squaredNorm();
        if (h2 == 0.0) throw SolverError("biorthonormalize: zero eigenvector");
        const Complex c = detail::bilinear(phi, phi);
        if (std::abs(c) < 1e-12 * h2) {
            // Self-orthogonal within roundoff: leave at unit Hermitian norm
            // and report the divergence cap.
            phi /= std::sqrt(h2);
            out.near_ep_flags[i] = true;
            out.a_norm[i] = kDivergenceCap;
            out.rigidity[i] = 1.0 / kDivergenceCap;
        } else {
            phi /= std::sqrt(c);  // principal branch
            double a = phi.squaredNorm();
            double r = 1.0 / a;
            if (r < kNearEpRigidity) out.near_ep_flags[i] = true;
            if (a > kDivergenceCap) a = kDivergenceCap;
            out.a_norm[i] = a;
            out.rigidity[i] = r;
        }
        detail::fix_reference_sign(phi);
    }

    out.b_overlap.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double o = std::abs(pairs[i].phi.dot(pairs[j].phi));
            out.b_overlap(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::min(o, kDivergenceCap);
        }
    out.pairs = std::move(pairs);
    return out;
}

inline Eigen::MatrixXcd to_eigen(const ModelMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            h(i, j) = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return h;
}

inline Spectrum eigendecompose(const ModelMatrix& m, double tolerance = 1e-9) {
    if (m.size() < 2) throw DimensionError("eigendecompose: N >= 2 required");
    const Eigen::MatrixXcd h = to_eigen(m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw SolverError("eigendecompose: eigensolver did not converge");

    const double hnorm = h.norm();
    std::vector<Eigenpair> pairs;
    pairs.reserve(m.size());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        Eigenpair p{solver.eigenvalues()[k], solver.eigenvectors().col(k)};
        const double resid = (h * p.phi - p.lambda * p.phi).norm();
        if (resid > 1e-9 * std::max(1.0, hnorm) * p.phi.norm())
            throw SolverError("eigendecompose: residual bound violated, |Hx-lx| = " +
                              std::to_string(resid));
        pairs.push_back(std::move(p));
    }
    return biorthonormalize(std::move(pairs), tolerance);
}

/// b_ij: components of the normalized Phi_i in the unit basis of the
/// diagonal H0 recorded on the matrix.
inline MixingTable mixing_coefficients(const Spectrum& s, const ModelMatrix& m) {
    const auto n = static_cast<Eigen::Index>(s.size());
    if (m.h0_diagonal().size() != s.size())
        throw DimensionError("mixing_coefficients: basis size mismatch");
    MixingTable t;
    t.b.resize(n, n);
    t.magnitude.resize(n, n);
    t.phase.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex b = s.pairs[static_cast<std::size_t>(i)].phi[j];
            t.b(i, j) = b;
            t.magnitude(i, j) = std::min(std::abs(b), kDivergenceCap);
            t.phase(i, j) = std::atan2(b.imag(), b.real());
        }
    }
    return t;
}

inline AngleDiagnostic eigenvector_angle(const Eigen::VectorXcd& phi1,
                                         const Eigen::VectorXcd& phi2) {
    const double n1 = phi1.norm(), n2 = phi2.norm();
    if (n1 == 0.0 || n2 == 0.0) throw DomainError("eigenvector_angle: zero vector");
    const Complex raw = phi1.dot(phi2);  // Hermitian inner product
    double c = std::abs(raw) / (n1 * n2);
    return {std::clamp(c, 0.0, 1.0), raw};
}

struct TrackResult {
    std::vector<int> perm;  // prev index i -> next index perm[i]
    bool ambiguous = false;
};

/// Assign labels between adjacent sweep points: the bijection maximizing the
/// summed Hermitian overlaps. Ties within 1e-6 are broken by eigenvalue
/// distance and flagged.
inline TrackResult track(const Spectrum& prev, const Spectrum& next) {
    const std::size_t n = prev.size();
    if (next.size() != n) throw DimensionError("track: spectrum sizes differ");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);

    auto overlap_sum = [&](const std::vector<int>& p) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += std::abs(prev.pairs[i].phi.dot(next.pairs[static_cast<std::size_t>(p[i])].phi));
        return s;
    };
    auto lambda_dist = [&](const std::vector<int>& p) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += std::abs(prev.pairs[i].lambda - next.pairs[static_cast<std::size_t>(p[i])].lambda);
        return s;
    };

    std::vector<int> best = idx;
    double best_score = overlap_sum(idx);
    double second_score = -std::numeric_limits<double>::infinity();
    std::vector<int> p = idx;
    while (std::next_permutation(p.begin(), p.end())) {
        const double s = overlap_sum(p);
        if (s > best_score) {
            second_score = best_score;
            best_score = s;
            best = p;
        } else if (s > second_score) {
            second_score = s;
        }
    }

    TrackResult out;
    out.perm = best;
    if (best_score - second_score < 1e-6) {
        out.ambiguous = true;
        // Re-scan candidates within the tie band, prefer smaller eigenvalue motion.
        double best_dist = lambda_dist(best);
        p = idx;
        std::sort(p.begin(), p.end());
        do {
            if (best_score - overlap_sum(p) < 1e-6) {
                const double d = lambda_dist(p);
                if (d < best_dist) {
                    best_dist = d;
                    out.perm = p;
                }
            }
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
}

struct PhaseJump {
    std::size_t index;  // jump between samples index and index+1
    double delta;
};

struct PhaseTrajectory {
    std::vector<double> unwrapped;
    std::vector<PhaseJump> jumps;
};

/// Unwrap an ordered series of angles (mod 2*pi, minimizing step-to-step
/// change) and report steps exceeding pi/8 as jumps.
inline PhaseTrajectory phase_trajectory(const std::vector<double>& theta_series) {
    PhaseTrajectory out;
    out.unwrapped = theta_series;
    constexpr double two_pi = 2.0 * M_PI;
    for (std::size_t k = 1; k < out.unwrapped.size(); ++k) {
        double d = out.unwrapped[k] - out.unwrapped[k - 1];
        d -= two_pi * std::round(d / two_pi);
        out.unwrapped[k] = out.unwrapped[k - 1] + d;
        if (std::abs(d) > M_PI / 8.0) out.jumps.push_back({k - 1, d});
    }
    return out;
}

}  // namespace nhspec
