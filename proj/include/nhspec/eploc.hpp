#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "nhspec/closedform.hpp"
#include "nhspec/spectral.hpp"

namespace nhspec {

using MatrixFamily1D = std::function<ModelMatrix(double)>;
using MatrixFamily2D = std::function<ModelMatrix(double, double)>;

struct CoalescenceSample {
    double param = 0.0;
    double gap = 0.0;           // min over pairs of |lambda_i - lambda_j|
    double rigidity_min = 1.0;  // min_i r_i
};

struct ScanResult {
    std::vector<CoalescenceSample> samples;
    std::vector<std::pair<double, double>> brackets;  // around local gap minima
};

enum class EpKind { Single, PairMember, NotAnEp };

struct EpLocation {
    std::array<double, 2> params{0.0, 0.0};
    int nparams = 1;
    double residual = 0.0;              // |D| for 2x2 families, squared min-gap otherwise
    std::array<int, 2> pair{0, 1};      // indices of the coalescing eigenvalues
    EpKind kind = EpKind::Single;
    bool converged = false;
    int iterations = 0;
};

inline constexpr double kTolGap = 1e-8;

namespace detail {

inline std::vector<Complex> eigenvalues_only(const ModelMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), false);
    if (solver.info() != Eigen::Success)
        throw SolverError("eigenvalues_only: eigensolver did not converge");
    std::vector<Complex> out(static_cast<std::size_t>(solver.eigenvalues().size()));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = solver.eigenvalues()[static_cast<Eigen::Index>(k)];
    return out;
}

inline double min_gap(const std::vector<Complex>& lambdas, int* i_out = nullptr,
                      int* j_out = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
            const double g = std::abs(lambdas[i] - lambdas[j]);
            if (g < best) {
                best = g;
                if (i_out) *i_out = static_cast<int>(i);
                if (j_out) *j_out = static_cast<int>(j);
            }
        }
    return best;
}

}  // namespace detail

/// Sample the eigenvalue gap along a grid and bracket the local minima that
/// fall below threshold_factor times the median gap.
inline ScanResult scan_coalescence(const MatrixFamily1D& family, const std::vector<double>& grid,
                                   double threshold_factor = 0.05) {
    if (grid.size() < 3) throw DomainError("scan_coalescence: grid needs >= 3 points");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw DomainError("scan_coalescence: grid must be strictly increasing");

    ScanResult out;
    out.samples.reserve(grid.size());
    for (double a : grid) {
        const Spectrum s = eigendecompose(family(a));
        std::vector<Complex> l;
        l.reserve(s.size());
        for (const auto& p : s.pairs) l.push_back(p.lambda);
        CoalescenceSample cs;
        cs.param = a;
        cs.gap = detail::min_gap(l);
        cs.rigidity_min = *std::min_element(s.rigidity.begin(), s.rigidity.end());
        out.samples.push_back(cs);
    }

    std::vector<double> gaps;
    gaps.reserve(out.samples.size());
    for (const auto& s : out.samples) gaps.push_back(s.gap);
    std::vector<double> sorted = gaps;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                     sorted.end());
    const double threshold = threshold_factor * sorted[sorted.size() / 2];

    for (std::size_t k = 1; k + 1 < gaps.size(); ++k) {
        if (gaps[k] < threshold && gaps[k] <= gaps[k - 1] && gaps[k] <= gaps[k + 1]) {
            // Skip plateau duplicates: only open a bracket at the left edge.
            if (gaps[k] == gaps[k - 1] && k >= 2 && gaps[k - 1] <= gaps[k - 2]) continue;
            out.brackets.emplace_back(grid[k - 1], grid[k + 1]);
        }
    }
    return out;
}

/// Golden-section minimization of the gap inside a bracket. A minimum that
/// stays above 10 * kTolGap is reported as NotAnEp (avoided crossing).
inline EpLocation refine_ep_1d(const MatrixFamily1D& family,
                               std::pair<double, double> bracket, double tol = 1e-9) {
    if (!(bracket.second > bracket.first)) throw DomainError("refine_ep_1d: empty bracket");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;

    auto gap_at = [&](double a, int* i = nullptr, int* j = nullptr) {
        return detail::min_gap(detail::eigenvalues_only(family(a)), i, j);
    };

    double lo = bracket.first, hi = bracket.second;
    // The gap behaves like sqrt|x - x*| near a coalescence, so the parameter
    // must be pinned to machine precision for the gap itself to drop below
    // the NotAnEp threshold; tol only caps how coarse the refinement may be.
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    const double stop = std::min(tol, 8.0 * std::numeric_limits<double>::epsilon() * scale);
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = gap_at(x1), f2 = gap_at(x2);
    int iters = 0;
    while (hi - lo > stop && iters < 200) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = gap_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = gap_at(x2);
        }
        ++iters;
    }

    EpLocation out;
    out.nparams = 1;
    out.params[0] = 0.5 * (lo + hi);
    int pi = 0, pj = 1;
    const double g = gap_at(out.params[0], &pi, &pj);
    out.pair = {pi, pj};
    out.residual = g * g;
    out.iterations = iters;
    if (g > 10.0 * kTolGap) {
        out.kind = EpKind::NotAnEp;
        out.converged = false;
    } else {
        out.kind = EpKind::Single;
        out.converged = true;
    }
    return out;
}

/// Newton iteration in two parameters on the 2x2 discriminant
/// D(p,q) = (eps1 - eps2)^2 + 4 omega^2, with finite-difference Jacobian.
inline EpLocation refine_ep_2d(const MatrixFamily2D& family, std::pair<double, double> start,
                               double tol = 1e-12) {
    auto disc = [&](double p, double q) { return two_level_discriminant(family(p, q)); };

    double p = start.first, q = start.second;
    EpLocation out;
    out.nparams = 2;
    bool retried = false;
    for (int it = 0; it < 100; ++it) {
        const Complex d = disc(p, q);
        out.iterations = it;
        if (std::abs(d) < tol) {
            out.converged = true;
            out.kind = EpKind::Single;
            break;
        }
        const double h = 1e-7 * std::max({1.0, std::abs(p), std::abs(q)});
        const Complex dp = (disc(p + h, q) - disc(p - h, q)) / (2.0 * h);
        const Complex dq = (disc(p, q + h) - disc(p, q - h)) / (2.0 * h);
        // Solve J * step = -(Re d, Im d) in the least-squares sense. The
        // Jacobian can be rank-1 (families where D depends on the parameters
        // through a single combination), in which case the minimum-norm step
        // still walks onto the solution curve.
        Eigen::Matrix2d jac;
        jac << dp.real(), dq.real(), dp.imag(), dq.imag();
        if (jac.norm() < 1e-12 * std::max(1.0, std::abs(d))) {
            if (retried) break;
            retried = true;
            p += 1e-4 * std::max(1.0, std::abs(p));
            q -= 1e-4 * std::max(1.0, std::abs(q));
            continue;
        }
        Eigen::JacobiSVD<Eigen::Matrix2d> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
        svd.setThreshold(1e-10);
        const Eigen::Vector2d step_vec = svd.solve(Eigen::Vector2d(-d.real(), -d.imag()));
        double sp = step_vec[0];
        double sq = step_vec[1];
        // Bounded steps keep far starts from overshooting into divergence.
        const double step = std::hypot(sp, sq);
        const double cap = std::max(1.0, std::hypot(p, q));
        if (step > cap) {
            sp *= cap / step;
            sq *= cap / step;
        }
        p += sp;
        q += sq;
        if (!is_finite(p) || !is_finite(q)) break;
    }
    out.params = {p, q};
    out.residual = is_finite(p) && is_finite(q) ? std::abs(disc(p, q))
                                                : std::numeric_limits<double>::infinity();
    if (!out.converged) out.kind = EpKind::NotAnEp;
    return out;
}

}  // namespace nhspec
