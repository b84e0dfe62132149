#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nhspec/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct CommonOpts {
    std::string scenario_id;
    std::string config_path;
    std::string out_dir;
    int points = 0;       // 0: keep the scenario's own grid
    double tol = 1e-9;
};

nhspec::Scenario load_scenario(const CommonOpts& opts) {
    if (!opts.scenario_id.empty() && !opts.config_path.empty())
        throw nhspec::DomainError("give either --scenario or --config, not both");
    nhspec::Scenario sc;
    if (!opts.scenario_id.empty()) {
        sc = nhspec::preset(opts.scenario_id);
    } else if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) throw nhspec::DomainError("cannot open config: " + opts.config_path);
        nlohmann::json j;
        in >> j;
        sc = j.get<nhspec::Scenario>();
    } else {
        throw nhspec::DomainError("one of --scenario or --config is required");
    }
    if (opts.points > 0) sc.sweep.points = opts.points;
    sc.validate();
    return sc;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw nhspec::DomainError("cannot write " + path.string());
    return out;
}

std::string scenario_stem(const nhspec::Scenario& sc) {
    return sc.id.empty() ? "config" : sc.id;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra, exceptional points and line shapes of small "
                 "complex-symmetric Hamiltonians"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool want_2d = false;

    auto add_common = [&opts](CLI::App* cmd, bool with_tol) {
        cmd->add_option("--scenario", opts.scenario_id, "Preset id (see list-scenarios)");
        cmd->add_option("--config", opts.config_path, "Scenario config file (JSON)");
        cmd->add_option("--out", opts.out_dir, "Output directory (default: stdout)");
        cmd->add_option("--points", opts.points, "Override the sweep grid size");
        if (with_tol) cmd->add_option("--tol", opts.tol, "Refinement tolerance");
    };

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep, emit a CSV table");
    add_common(sweep_cmd, false);

    CLI::App* ep_cmd = app.add_subcommand("ep-find", "Scan and refine eigenvalue coalescences");
    add_common(ep_cmd, true);
    ep_cmd->add_flag("--two-param", want_2d,
                     "Also refine in (sweep param, secondary param) when a secondary parameter "
                     "is present");

    CLI::App* smat_cmd = app.add_subcommand("smatrix", "Resonance line shapes on an energy grid");
    smat_cmd->add_option("--out", opts.out_dir, "Output directory (default: stdout)");
    double e1 = 0.0, g1 = 0.0, e2 = 0.0, g2 = 0.0, emin = -1.0, emax = 1.0;
    int spoints = 2001;
    bool second = false, dpole = false;
    smat_cmd->add_option("--e1", e1, "First resonance energy")->required();
    smat_cmd->add_option("--gamma1", g1, "First resonance width (> 0)")->required();
    auto* oe2 = smat_cmd->add_option("--e2", e2, "Second resonance energy");
    smat_cmd->add_option("--gamma2", g2, "Second resonance width (> 0)")->needs(oe2);
    smat_cmd->add_flag("--double-pole", dpole, "Coalesced double-pole form of (e1, gamma1)");
    smat_cmd->add_option("--emin", emin, "Energy grid start");
    smat_cmd->add_option("--emax", emax, "Energy grid stop");
    smat_cmd->add_option("--points", spoints, "Energy grid size");

    CLI::App* list_cmd = app.add_subcommand("list-scenarios", "Print the preset catalog as JSON");
    std::string list_out;
    list_cmd->add_option("--out", list_out, "Output directory (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) {
            const nhspec::Scenario sc = load_scenario(opts);
            nhspec::SweepResult res;
            try {
                res = nhspec::run_sweep(sc);
            } catch (const nhspec::SolverError& ex) {
                std::cerr << "solver failure: " << ex.what() << "\n";
                return kExitSolver;
            }
            int solver_rows = 0;
            for (const auto& r : res.rows)
                if (r.error.rfind("error:", 0) == 0) ++solver_rows;
            if (opts.out_dir.empty()) {
                nhspec::write_sweep_csv(std::cout, sc, res);
            } else {
                auto out = open_out(opts.out_dir, scenario_stem(sc) + ".csv");
                nhspec::write_sweep_csv(out, sc, res);
            }
            if (solver_rows == static_cast<int>(res.rows.size())) {
                std::cerr << "solver failure on every grid point\n";
                return kExitSolver;
            }
            return kExitOk;
        }

        if (ep_cmd->parsed()) {
            const nhspec::Scenario sc = load_scenario(opts);
            nhspec::EpReport report;
            try {
                report = nhspec::run_ep_search(sc, opts.tol);
            } catch (const nhspec::SolverError& ex) {
                std::cerr << "solver failure: " << ex.what() << "\n";
                return kExitSolver;
            }
            nlohmann::json j = nhspec::ep_report_json(sc, report);
            if (want_2d && sc.secondary && sc.dimension() == 2) {
                // Secondary refinement seeded at the center of the sweep.
                nhspec::Scenario family = sc;
                auto fam2 = [&family](double p, double q) {
                    nhspec::Scenario s2 = family;
                    s2.secondary->value = q;
                    return s2.matrix_at(p);
                };
                const double mid = 0.5 * (sc.sweep.start + sc.sweep.stop);
                const nhspec::EpLocation loc =
                    nhspec::refine_ep_2d(fam2, {mid, sc.secondary->value}, opts.tol);
                j["two_param"] = {{"params", {loc.params[0], loc.params[1]}},
                                  {"residual", loc.residual},
                                  {"converged", loc.converged},
                                  {"iterations", loc.iterations}};
            }
            const std::string text = j.dump(2) + "\n";
            if (opts.out_dir.empty()) {
                std::cout << text;
            } else {
                auto out = open_out(opts.out_dir, scenario_stem(sc) + "-ep.json");
                out << text;
            }
            return kExitOk;
        }

        if (smat_cmd->parsed()) {
            second = oe2->count() > 0;
            std::vector<nhspec::Resonance> resonances;
            resonances.emplace_back(e1, g1);
            if (second) resonances.emplace_back(e2, g2);
            const nhspec::LineShape shape =
                nhspec::run_smatrix(resonances, dpole, emin, emax, spoints);
            if (opts.out_dir.empty()) {
                nhspec::write_smatrix_csv(std::cout, shape);
            } else {
                auto out = open_out(opts.out_dir, "smatrix.csv");
                nhspec::write_smatrix_csv(out, shape);
            }
            return kExitOk;
        }

        if (list_cmd->parsed()) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& s : nhspec::preset_catalog()) j.push_back(s);
            const std::string text = j.dump(2) + "\n";
            if (list_out.empty()) {
                std::cout << text;
            } else {
                auto out = open_out(list_out, "scenarios.json");
                out << text;
            }
            return kExitOk;
        }
    } catch (const nhspec::SolverError& ex) {
        std::cerr << "solver failure: " << ex.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
