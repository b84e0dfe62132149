#pragma once

#include <cmath>

#include "nhspec/scenario.hpp"

namespace nhspec {

/// Built-in sweep catalog. Sweep windows are chosen so that whenever an exact
/// coalescence exists, a grid point lands about 1e-7 away from it: close
/// enough for the divergence diagnostics to show, without hitting the
/// self-orthogonal point itself.
inline std::vector<Scenario> preset_catalog() {
    const double eps_shift = 1e-7;
    std::vector<Scenario> cat;

    auto two_level = [](std::string id, std::string ref, Affine e1, Affine e2, double gh1,
                        double gh2, Complex omega, double start, double stop) {
        Scenario s;
        s.id = std::move(id);
        s.reference = std::move(ref);
        s.model_kind = ModelKind::TwoLevel;
        s.levels = {LevelTraj{e1, Affine{gh1, 0.0}}, LevelTraj{e2, Affine{gh2, 0.0}}};
        s.omega = omega;
        s.sweep = SweepSpec{"a", start, stop, 2001};
        return s;
    };

    // Crossing pair e1 = 1 - a/2, e2 = a with fixed widths; real, complex and
    // imaginary coupling variants.
    cat.push_back(two_level("part1-fig1ab", "two-level crossing, real coupling: one EP at a=2/3",
                            Affine{1.0, -0.5}, Affine{0.0, 1.0}, -0.5, -0.6, {0.05, 0.0}, 0.4,
                            0.9333336));
    cat.push_back(two_level("part1-fig1cd",
                            "two-level crossing, complex coupling: avoided crossing only",
                            Affine{1.0, -0.5}, Affine{0.0, 1.0}, -0.5505, -0.6, {0.025, 0.025},
                            0.4, 0.9333336));
    cat.push_back(two_level("part1-fig1ef",
                            "two-level crossing, imaginary coupling, equal widths: two EPs with "
                            "width bifurcation in between",
                            Affine{1.0, -0.5}, Affine{0.0, 1.0}, -0.6, -0.6, {0.0, 0.05},
                            0.53333345, 0.80000012));
    cat.push_back(two_level("part1-fig2",
                            "mixing phases theta_ij across the real-coupling EP (narrow window "
                            "around a=2/3)",
                            Affine{1.0, -0.5}, Affine{0.0, 1.0}, -0.5, -0.6, {0.05, 0.0},
                            0.60000012, 0.73333345));

    // Distance sweeps: e1 fixed, e2 = e1 + d.
    auto d_sweep = [](std::string id, std::string ref, double gh1, double gh2, Complex omega,
                      double start, double stop) {
        Scenario s;
        s.id = std::move(id);
        s.reference = std::move(ref);
        s.model_kind = ModelKind::TwoLevel;
        s.levels = {LevelTraj{Affine{2.0 / 3.0, 0.0}, Affine{gh1, 0.0}},
                    LevelTraj{Affine{2.0 / 3.0, 1.0}, Affine{gh2, 0.0}}};
        s.omega = omega;
        s.sweep = SweepSpec{"d", start, stop, 2001};
        return s;
    };
    cat.push_back(d_sweep("part1-fig1a",
                          "eigenvector angle vs level distance d, real coupling (near-EP at d=0)",
                          -0.5, -0.5999, {0.05, 0.0}, -1.0, 1.0));
    cat.push_back(d_sweep("part1-fig1b-left", "eigenvector angle vs distance, complex coupling",
                          -0.5, -0.57, {0.05 / std::sqrt(2.0), 0.05 / std::sqrt(2.0)}, -1.0, 1.0));
    cat.push_back(d_sweep("part1-fig1b-right",
                          "eigenvector angle vs distance, imaginary coupling: EPs at d=-0.1, 0.1",
                          -0.5, -0.5, {0.0, 0.05}, -1.0 + eps_shift, 1.0 + eps_shift));

    // Gain/loss pair at fixed energy, width ramped with a.
    auto pt = [&](std::string id, std::string ref, ModelKind kind) {
        Scenario s;
        s.id = std::move(id);
        s.reference = std::move(ref);
        s.model_kind = kind;
        s.levels = {LevelTraj{Affine{0.5, 0.0}, Affine{0.0, -0.05}}};
        s.omega = {0.05, 0.0};
        s.sweep = SweepSpec{"a", -2.5 + eps_shift, 2.5 + eps_shift, 2001};
        return s;
    };
    cat.push_back(pt("part1-fig3", "balanced gain/loss pair: EPs at a=-1, 1", ModelKind::PtBalanced));
    cat.push_back(pt("part1-fig3-lossy", "lossy pair (vanishing gain): EPs at a=-2, 2",
                     ModelKind::PtLossy));

    {
        Scenario s = two_level("part1-fig4",
                               "gain/loss pair with detuned energies: no exact EP",
                               Affine{0.500, 0.0}, Affine{0.495, 0.0}, 0.0, 0.0, {0.05, 0.0},
                               -2.5, 2.5);
        s.levels[0].gamma_half = Affine{0.0, -0.05};
        s.levels[1].gamma_half = Affine{0.0, 0.05};
        cat.push_back(s);
    }

    {
        Scenario s = two_level("part1-fig11",
                               "crossing pair with opposite-sign widths, real coupling: one EP at "
                               "a=1",
                               Affine{1.0, -0.5}, Affine{0.0, 0.5}, -0.05, 0.05, {0.05, 0.0},
                               eps_shift, 2.0 + eps_shift);
        cat.push_back(s);
        s.id = "part1-fig11-right";
        s.reference = "crossing pair with opposite-sign widths, complex coupling";
        s.levels[1].gamma_half = Affine{0.0205, 0.0};
        s.omega = {0.05 / std::sqrt(2.0), 0.05 / std::sqrt(2.0)};
        cat.push_back(s);
    }

    // Three levels in the doorway topology, crossing as a function of a.
    auto doorway = [](std::string id, std::string ref, std::vector<LevelTraj> levels,
                      Complex omega, const char* param, double start, double stop) {
        Scenario s;
        s.id = std::move(id);
        s.reference = std::move(ref);
        s.model_kind = ModelKind::ThreeDoorway;
        s.levels = std::move(levels);
        s.omega = omega;
        s.sweep = SweepSpec{param, start, stop, 2001};
        return s;
    };
    const std::vector<LevelTraj> fig5_levels = {
        LevelTraj{Affine{1.0, -0.5}, Affine{-0.495, 0.0}},
        LevelTraj{Affine{0.0, 1.0}, Affine{-0.495, 0.0}},
        LevelTraj{Affine{-1.0 / 3.0, 1.5}, Affine{-0.485, 0.0}}};
    cat.push_back(doorway("part2-fig5", "three-level doorway crossing, real coupling", fig5_levels,
                          {0.01, 0.0}, "a", 0.55, 0.8));
    {
        std::vector<LevelTraj> fig6_levels = fig5_levels;
        fig6_levels[2].gamma_half = Affine{-0.4853, 0.0};
        cat.push_back(doorway("part2-fig6", "three-level doorway crossing, imaginary coupling",
                              fig6_levels, {0.0, 0.01}, "a", 0.55, 0.8));

        // s-sweeps: third level offset by s at a frozen crossing parameter a0.
        auto s_sweep = [&](std::string id, double a0, Complex omega,
                           const std::vector<LevelTraj>& base) {
            std::vector<LevelTraj> lv = {
                LevelTraj{Affine{base[0].e(a0), 0.0}, base[0].gamma_half},
                LevelTraj{Affine{base[1].e(a0), 0.0}, base[1].gamma_half},
                LevelTraj{Affine{base[2].e(a0), 1.0}, base[2].gamma_half}};
            Scenario s = doorway(std::move(id), "doorway level-3 offset sweep at fixed a", lv,
                                 omega, "s", -0.2, 0.2);
            s.secondary = SecondaryParam{"a", a0};
            return s;
        };
        cat.push_back(s_sweep("part2-fig7", 2.0 / 3.0, {0.01, 0.0}, fig5_levels));
        cat.push_back(s_sweep("part2-fig7-a1", 0.6539, {0.01, 0.0}, fig5_levels));
        cat.push_back(s_sweep("part2-fig7-a2", 0.675, {0.01, 0.0}, fig5_levels));
        cat.push_back(s_sweep("part2-fig8", 2.0 / 3.0, {0.0, 0.01}, fig6_levels));
        cat.push_back(s_sweep("part2-fig8-a1", 0.6539, {0.0, 0.01}, fig6_levels));
        cat.push_back(s_sweep("part2-fig8-a2", 0.6774, {0.0, 0.01}, fig6_levels));
    }

    // Doorway triple with gain/loss widths ramped by a.
    const std::vector<LevelTraj> fig9_levels = {
        LevelTraj{Affine{0.5, 0.0}, Affine{0.0, -0.05}},
        LevelTraj{Affine{0.5, 0.0}, Affine{0.0, 0.05}},
        LevelTraj{Affine{0.487, 0.0}, Affine{0.0, 0.05}}};
    cat.push_back(doorway("part2-fig9", "gain/loss doorway triple vs gain slope a", fig9_levels,
                          {0.05, 0.0}, "a", -5.0, 5.0));
    {
        std::vector<LevelTraj> lv = {
            LevelTraj{Affine{0.5, 0.0}, Affine{0.0, 0.0}},
            LevelTraj{Affine{0.5, 0.0}, Affine{0.0, 0.0}},
            LevelTraj{Affine{0.487, 1.0}, Affine{0.0, 0.0}}};
        Scenario s = doorway("part2-fig9-s", "gain/loss doorway triple vs level-3 offset s", lv,
                             {0.05, 0.0}, "s", -0.1, 0.1);
        s.secondary = SecondaryParam{"a", 0.0};
        cat.push_back(s);
    }
    {
        std::vector<LevelTraj> lv = fig9_levels;
        lv[2].e = Affine{0.5, 0.0};
        lv[2].gamma_half = Affine{0.05, 0.0};
        cat.push_back(doorway("part2-fig10", "gain/loss doorway triple, fixed level-3 width", lv,
                              {0.05, 0.0}, "a", -5.0, 5.0));
        lv[1].gamma_half = Affine{0.0, 0.0};
        lv[2].gamma_half = Affine{0.0, 0.0};
        cat.push_back(doorway("part2-fig10-right", "gain/loss doorway triple, lossy level 1 only",
                              lv, {0.05, 0.0}, "a", -5.0, 5.0));
    }

    for (auto& s : cat) s.validate();
    return cat;
}

inline const Scenario* find_preset(const std::vector<Scenario>& cat, const std::string& id) {
    for (const auto& s : cat)
        if (s.id == id) return &s;
    return nullptr;
}

inline Scenario preset(const std::string& id) {
    const auto cat = preset_catalog();
    const Scenario* s = find_preset(cat, id);
    if (!s) throw DomainError("unknown preset id: " + id);
    return *s;
}

}  // namespace nhspec
