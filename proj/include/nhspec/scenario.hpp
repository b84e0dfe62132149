#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nhspec/ham.hpp"

namespace nhspec {

enum class ModelKind { TwoLevel, PtBalanced, PtLossy, ThreeDoorway, NChannel };

inline std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::TwoLevel: return "two_level";
        case ModelKind::PtBalanced: return "pt_balanced";
        case ModelKind::PtLossy: return "pt_lossy";
        case ModelKind::ThreeDoorway: return "three_doorway";
        case ModelKind::NChannel: return "n_channel";
    }
    throw DomainError("unknown model kind");
}

inline ModelKind model_kind_from_string(const std::string& s) {
    if (s == "two_level") return ModelKind::TwoLevel;
    if (s == "pt_balanced") return ModelKind::PtBalanced;
    if (s == "pt_lossy") return ModelKind::PtLossy;
    if (s == "three_doorway") return ModelKind::ThreeDoorway;
    if (s == "n_channel") return ModelKind::NChannel;
    throw DomainError("unknown model kind: " + s);
}

/// Affine trajectory c + m*x in the sweep parameter.
struct Affine {
    double c = 0.0;
    double m = 0.0;

    double operator()(double x) const { return c + m * x; }
};

/// Per-level trajectories; the width is parameterized as gamma/2 because the
/// half-width is the quantity quoted throughout.
struct LevelTraj {
    Affine e;
    Affine gamma_half;
};

struct SweepSpec {
    std::string param = "a";
    double start = 0.0;
    double stop = 1.0;
    int points = 2001;
};

struct SecondaryParam {
    std::string name;
    double value = 0.0;
};

/// One-channel data for the N_CHANNEL kind: fixed diagonal and amplitudes,
/// the sweep parameter is the coupling strength alpha.
struct ChannelSpec {
    std::vector<double> hb;
    std::vector<double> v;
};

struct Scenario {
    std::string id;           // empty for ad-hoc configs
    std::string reference;    // free-text description of the source experiment
    ModelKind model_kind = ModelKind::TwoLevel;
    std::vector<LevelTraj> levels;
    Complex omega{0.0, 0.0};  // coupling (w for the gain/loss pair models)
    bool gaussian = false;
    SweepSpec sweep;
    std::optional<SecondaryParam> secondary;
    std::optional<ChannelSpec> channel;

    void validate() const {
        if (sweep.points < 2) throw DomainError("scenario: sweep.points must be >= 2");
        if (!(sweep.start < sweep.stop)) throw DomainError("scenario: sweep.start < stop required");
        if (!is_finite(sweep.start) || !is_finite(sweep.stop))
            throw DomainError("scenario: non-finite sweep bounds");
        if (!is_finite(omega)) throw DomainError("scenario: non-finite coupling");
        for (const auto& l : levels)
            if (!is_finite(l.e.c) || !is_finite(l.e.m) || !is_finite(l.gamma_half.c) ||
                !is_finite(l.gamma_half.m))
                throw DomainError("scenario: non-finite trajectory coefficient");
        switch (model_kind) {
            case ModelKind::TwoLevel:
                if (levels.size() != 2) throw DomainError("scenario: two_level needs 2 levels");
                break;
            case ModelKind::PtBalanced:
            case ModelKind::PtLossy:
                if (levels.size() != 1)
                    throw DomainError("scenario: gain/loss pair needs a single trajectory entry");
                break;
            case ModelKind::ThreeDoorway:
                if (levels.size() != 3) throw DomainError("scenario: three_doorway needs 3 levels");
                break;
            case ModelKind::NChannel:
                if (!channel || channel->hb.size() != channel->v.size() || channel->hb.empty())
                    throw DomainError("scenario: n_channel needs matching hb/v lists");
                break;
        }
    }

    std::size_t dimension() const {
        switch (model_kind) {
            case ModelKind::TwoLevel:
            case ModelKind::PtBalanced:
            case ModelKind::PtLossy: return 2;
            case ModelKind::ThreeDoorway: return 3;
            case ModelKind::NChannel: return channel ? channel->hb.size() : 0;
        }
        return 0;
    }

    std::vector<double> grid() const {
        std::vector<double> g(static_cast<std::size_t>(sweep.points));
        const double step = (sweep.stop - sweep.start) / (sweep.points - 1);
        for (int k = 0; k < sweep.points; ++k)
            g[static_cast<std::size_t>(k)] = sweep.start + step * k;
        g.back() = sweep.stop;
        return g;
    }

    ModelMatrix matrix_at(double x) const {
        switch (model_kind) {
            case ModelKind::TwoLevel: {
                LevelSet ls({Level{levels[0].e(x), 2.0 * levels[0].gamma_half(x)},
                             Level{levels[1].e(x), 2.0 * levels[1].gamma_half(x)}});
                return build_two_level(ls, Coupling{omega, gaussian});
            }
            case ModelKind::PtBalanced:
            case ModelKind::PtLossy: {
                // build_pt puts eps1 = e - i*gamma/2; the stored trajectory is
                // the first level's gamma/2, so gamma = -2 * gamma_half(x).
                const double gamma = -2.0 * levels[0].gamma_half(x);
                return build_pt(levels[0].e(x), gamma, omega.real(),
                                model_kind == ModelKind::PtLossy);
            }
            case ModelKind::ThreeDoorway: {
                LevelSet ls({Level{levels[0].e(x), 2.0 * levels[0].gamma_half(x)},
                             Level{levels[1].e(x), 2.0 * levels[1].gamma_half(x)},
                             Level{levels[2].e(x), 2.0 * levels[2].gamma_half(x)}});
                return build_three_level_doorway(ls, Coupling{omega, gaussian});
            }
            case ModelKind::NChannel:
                return build_channel_model(channel->hb, ChannelVector(channel->v, x));
        }
        throw DomainError("scenario: unknown model kind");
    }
};

inline void to_json(nlohmann::json& j, const Affine& a) { j = {{"c", a.c}, {"m", a.m}}; }
inline void from_json(const nlohmann::json& j, Affine& a) {
    j.at("c").get_to(a.c);
    j.at("m").get_to(a.m);
}

inline void to_json(nlohmann::json& j, const LevelTraj& l) {
    j = {{"e", l.e}, {"gamma_half", l.gamma_half}};
}
inline void from_json(const nlohmann::json& j, LevelTraj& l) {
    j.at("e").get_to(l.e);
    j.at("gamma_half").get_to(l.gamma_half);
}

inline void to_json(nlohmann::json& j, const SweepSpec& s) {
    j = {{"param", s.param}, {"start", s.start}, {"stop", s.stop}, {"points", s.points}};
}
inline void from_json(const nlohmann::json& j, SweepSpec& s) {
    j.at("param").get_to(s.param);
    j.at("start").get_to(s.start);
    j.at("stop").get_to(s.stop);
    s.points = j.value("points", 2001);
}

inline void to_json(nlohmann::json& j, const Scenario& sc) {
    j = nlohmann::json{
        {"model_kind", to_string(sc.model_kind)},
        {"levels", sc.levels},
        {"coupling",
         {{"re", sc.omega.real()}, {"im", sc.omega.imag()}, {"gaussian", sc.gaussian}}},
        {"sweep", sc.sweep},
    };
    if (!sc.id.empty()) j["id"] = sc.id;
    if (!sc.reference.empty()) j["reference"] = sc.reference;
    if (sc.secondary) j["secondary"] = {{"name", sc.secondary->name}, {"value", sc.secondary->value}};
    if (sc.channel) j["channel"] = {{"hb", sc.channel->hb}, {"v", sc.channel->v}};
}

inline void from_json(const nlohmann::json& j, Scenario& sc) {
    sc.model_kind = model_kind_from_string(j.at("model_kind").get<std::string>());
    sc.levels = j.value("levels", std::vector<LevelTraj>{});
    if (j.contains("coupling")) {
        const auto& c = j.at("coupling");
        sc.omega = Complex{c.value("re", 0.0), c.value("im", 0.0)};
        sc.gaussian = c.value("gaussian", false);
    }
    j.at("sweep").get_to(sc.sweep);
    sc.id = j.value("id", std::string{});
    sc.reference = j.value("reference", std::string{});
    if (j.contains("secondary")) {
        SecondaryParam sp;
        j.at("secondary").at("name").get_to(sp.name);
        j.at("secondary").at("value").get_to(sp.value);
        sc.secondary = sp;
    }
    if (j.contains("channel")) {
        ChannelSpec ch;
        j.at("channel").at("hb").get_to(ch.hb);
        j.at("channel").at("v").get_to(ch.v);
        sc.channel = ch;
    }
    sc.validate();
}

}  // namespace nhspec
