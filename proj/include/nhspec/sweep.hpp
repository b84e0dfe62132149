#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include "nhspec/closedform.hpp"
#include "nhspec/eploc.hpp"
#include "nhspec/presets.hpp"
#include "nhspec/smat.hpp"
#include "nhspec/spectral.hpp"

namespace nhspec {

struct SweepRow {
    double param = 0.0;
    std::vector<double> energy;      // Re lambda_i
    std::vector<double> width_half;  // Im lambda_i (= Gamma_i / 2)
    std::vector<double> rigidity;
    std::vector<std::vector<double>> b_abs;   // N x N
    std::vector<std::vector<double>> theta;   // N x N, unwrapped along the sweep
    double cos_min = 0.0;  // pairwise |cos Omega|; min == max for N = 2
    double cos_max = 0.0;
    std::vector<bool> near_ep;
    std::string error;  // empty when the row is good
};

struct SweepResult {
    std::vector<SweepRow> rows;
    // theta jump reports per (i,j) component, indexed i*N+j.
    std::vector<std::vector<PhaseJump>> theta_jumps;
    std::size_t dim = 0;
};

namespace detail {

inline double closed_form_mismatch(const ModelMatrix& m, const std::vector<Complex>& numeric) {
    std::vector<Complex> cf;
    if (m.size() == 2) {
        const TwoLevelEigen e = two_level_eigenvalues(m);
        cf = {e.lambda_plus, e.lambda_minus};
    } else if (m.size() == 3) {
        try {
            const CubicSolution c = cardano_eigenvalues(m);
            cf.assign(c.lambdas.begin(), c.lambdas.end());
        } catch (const StructureError&) {
            return 0.0;  // not the doorway topology: no closed form to compare
        } catch (const BranchDegeneracyError&) {
            return 0.0;
        }
    } else {
        return 0.0;
    }

    std::vector<int> perm(cf.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    std::sort(perm.begin(), perm.end());
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < cf.size(); ++i)
            worst = std::max(worst,
                             std::abs(cf[static_cast<std::size_t>(perm[i])] - numeric[i]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace detail

inline SweepResult run_sweep(const Scenario& scenario) {
    scenario.validate();
    const std::vector<double> grid = scenario.grid();
    const std::size_t n = scenario.dimension();

    SweepResult out;
    out.dim = n;
    out.rows.reserve(grid.size());
    std::optional<Spectrum> prev;

    for (double x : grid) {
        SweepRow row;
        row.param = x;
        try {
            const ModelMatrix m = scenario.matrix_at(x);
            Spectrum s = eigendecompose(m);

            if (prev) {
                const TrackResult tr = track(*prev, s);
                Spectrum reordered;
                reordered.b_overlap.resize(s.b_overlap.rows(), s.b_overlap.cols());
                for (std::size_t i = 0; i < n; ++i) {
                    const auto src = static_cast<std::size_t>(tr.perm[i]);
                    reordered.pairs.push_back(s.pairs[src]);
                    reordered.a_norm.push_back(s.a_norm[src]);
                    reordered.rigidity.push_back(s.rigidity[src]);
                    reordered.near_ep_flags.push_back(s.near_ep_flags[src]);
                }
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        reordered.b_overlap(static_cast<Eigen::Index>(i),
                                            static_cast<Eigen::Index>(j)) =
                            s.b_overlap(tr.perm[i], tr.perm[j]);
                s = std::move(reordered);
                // Sign continuity along the sweep overrides the per-point
                // reference sign.
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex o = prev->pairs[i].phi.dot(s.pairs[i].phi);
                    if (o.real() < 0.0) s.pairs[i].phi = -s.pairs[i].phi;
                }
                if (tr.ambiguous) row.error = "tie";
            }

            std::vector<Complex> lambdas;
            for (const auto& p : s.pairs) lambdas.push_back(p.lambda);
            double lscale = 1.0;
            for (const auto& l : lambdas) lscale = std::max(lscale, std::abs(l));
            if (n <= 3) {
                const ModelMatrix check = scenario.matrix_at(x);
                if (detail::closed_form_mismatch(check, lambdas) > 1e-9 * lscale)
                    row.error = row.error.empty() ? "xcheck" : row.error + ";xcheck";
            }

            const MixingTable mix = mixing_coefficients(s, m);
            for (std::size_t i = 0; i < n; ++i) {
                row.energy.push_back(s.pairs[i].lambda.real());
                row.width_half.push_back(s.pairs[i].lambda.imag());
                row.rigidity.push_back(s.rigidity[i]);
                row.near_ep.push_back(s.near_ep_flags[i]);
                std::vector<double> babs, th;
                for (std::size_t j = 0; j < n; ++j) {
                    babs.push_back(mix.magnitude(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(j)));
                    th.push_back(mix.phase(static_cast<Eigen::Index>(i),
                                           static_cast<Eigen::Index>(j)));
                }
                row.b_abs.push_back(std::move(babs));
                row.theta.push_back(std::move(th));
            }
            row.cos_min = std::numeric_limits<double>::infinity();
            row.cos_max = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double c =
                        eigenvector_angle(s.pairs[i].phi, s.pairs[j].phi).cos_omega_mag;
                    row.cos_min = std::min(row.cos_min, c);
                    row.cos_max = std::max(row.cos_max, c);
                }
            prev = std::move(s);
        } catch (const std::exception& ex) {
            row.error = std::string("error:") + ex.what();
            row.energy.assign(n, 0.0);
            row.width_half.assign(n, 0.0);
            row.rigidity.assign(n, 0.0);
            row.near_ep.assign(n, false);
            row.b_abs.assign(n, std::vector<double>(n, 0.0));
            row.theta.assign(n, std::vector<double>(n, 0.0));
            prev.reset();
        }
        out.rows.push_back(std::move(row));
    }

    // Unwrap every theta component along the sweep and collect jump reports.
    out.theta_jumps.assign(n * n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> series;
            series.reserve(out.rows.size());
            for (const auto& r : out.rows) series.push_back(r.theta[i][j]);
            PhaseTrajectory pt = phase_trajectory(series);
            for (std::size_t k = 0; k < out.rows.size(); ++k)
                out.rows[k].theta[i][j] = pt.unwrapped[k];
            out.theta_jumps[i * n + j] = std::move(pt.jumps);
        }
    return out;
}

inline std::string format_sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

inline void write_sweep_csv(std::ostream& os, const Scenario& scenario, const SweepResult& res) {
    const std::size_t n = res.dim;
    os << scenario.sweep.param;
    for (std::size_t i = 1; i <= n; ++i) os << ",E_" << i << ",G_half_" << i;
    for (std::size_t i = 1; i <= n; ++i) os << ",r_" << i;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            os << ",b_abs_" << i << "_" << j << ",theta_" << i << "_" << j;
    if (n == 2)
        os << ",cos_omega";
    else
        os << ",cos_omega_min,cos_omega_max";
    os << ",flags\n";

    for (const auto& row : res.rows) {
        os << format_sci(row.param);
        for (std::size_t i = 0; i < n; ++i)
            os << ',' << format_sci(row.energy[i]) << ',' << format_sci(row.width_half[i]);
        for (std::size_t i = 0; i < n; ++i) os << ',' << format_sci(row.rigidity[i]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                os << ',' << format_sci(row.b_abs[i][j]) << ',' << format_sci(row.theta[i][j]);
        if (n == 2)
            os << ',' << format_sci(row.cos_min);
        else
            os << ',' << format_sci(row.cos_min) << ',' << format_sci(row.cos_max);
        os << ',';
        std::string flags = row.error;
        for (std::size_t i = 0; i < n; ++i)
            if (row.near_ep[i]) {
                if (!flags.empty()) flags += ';';
                flags += "near_ep_" + std::to_string(i + 1);
            }
        os << flags << '\n';
    }
}

struct EpReport {
    std::vector<CoalescenceSample> samples;
    std::vector<std::pair<double, double>> brackets;
    std::vector<EpLocation> locations;
};

inline EpReport run_ep_search(const Scenario& scenario, double tol = 1e-9) {
    scenario.validate();
    const MatrixFamily1D family = [&scenario](double x) { return scenario.matrix_at(x); };
    EpReport report;
    ScanResult scan = scan_coalescence(family, scenario.grid());
    report.samples = std::move(scan.samples);
    report.brackets = std::move(scan.brackets);
    for (const auto& b : report.brackets)
        report.locations.push_back(refine_ep_1d(family, b, tol));
    int converged = 0;
    for (const auto& l : report.locations)
        if (l.converged) ++converged;
    if (converged >= 2)
        for (auto& l : report.locations)
            if (l.converged) l.kind = EpKind::PairMember;
    return report;
}

inline nlohmann::json ep_report_json(const Scenario& scenario, const EpReport& report) {
    nlohmann::json j;
    j["scenario"] = scenario.id.empty() ? "(config)" : scenario.id;
    j["sweep_param"] = scenario.sweep.param;
    j["brackets"] = nlohmann::json::array();
    for (const auto& b : report.brackets) j["brackets"].push_back({b.first, b.second});
    j["locations"] = nlohmann::json::array();
    for (const auto& l : report.locations) {
        const char* kind = l.kind == EpKind::Single ? "single"
                           : l.kind == EpKind::PairMember ? "pair_member"
                                                          : "not_an_ep";
        j["locations"].push_back({{"param", l.params[0]},
                                  {"residual", l.residual},
                                  {"pair", {l.pair[0] + 1, l.pair[1] + 1}},
                                  {"kind", kind},
                                  {"converged", l.converged},
                                  {"iterations", l.iterations}});
    }
    return j;
}

inline void write_smatrix_csv(std::ostream& os, const LineShape& shape) {
    os << "E,S_re,S_im,sigma\n";
    for (std::size_t k = 0; k < shape.energies.size(); ++k)
        os << format_sci(shape.energies[k]) << ',' << format_sci(shape.s_values[k].real()) << ','
           << format_sci(shape.s_values[k].imag()) << ',' << format_sci(shape.sigma[k]) << '\n';
}

/// Line shape of one or two resonances (or the coalesced double pole) on a
/// uniform energy grid.
inline LineShape run_smatrix(const std::vector<Resonance>& resonances, bool double_pole,
                             double emin, double emax, int points) {
    if (points < 2 || !(emin < emax)) throw DomainError("run_smatrix: bad energy grid");
    if (resonances.empty() || resonances.size() > 2)
        throw DomainError("run_smatrix: one or two resonances supported");
    if (double_pole && resonances.size() != 1)
        throw DomainError("run_smatrix: double pole takes a single (Ed, Gd) resonance");

    std::vector<double> grid(static_cast<std::size_t>(points));
    const double step = (emax - emin) / (points - 1);
    for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = emin + step * k;
    grid.back() = emax;

    std::vector<Complex> s;
    s.reserve(grid.size());
    for (double E : grid) {
        if (double_pole)
            s.push_back(double_pole_s(E, resonances[0].energy, resonances[0].width));
        else if (resonances.size() == 2)
            s.push_back(two_resonance_s(E, resonances[0], resonances[1]));
        else
            s.push_back(breit_wigner(E, resonances[0]));
    }
    return cross_section(std::move(grid), std::move(s));
}

}  // namespace nhspec
