#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "nhspec/presets.hpp"
#include "nhspec/sweep.hpp"

using namespace nhspec;

TEST_CASE("preset catalog contract") {
    const auto cat = preset_catalog();
    for (const char* id :
         {"part1-fig1ab", "part1-fig1cd", "part1-fig1ef", "part1-fig2", "part1-fig1a",
          "part1-fig1b-left", "part1-fig1b-right", "part1-fig3", "part1-fig3-lossy", "part1-fig4",
          "part1-fig11", "part1-fig11-right", "part2-fig5", "part2-fig6", "part2-fig7",
          "part2-fig7-a1", "part2-fig7-a2", "part2-fig8", "part2-fig8-a1", "part2-fig8-a2",
          "part2-fig9", "part2-fig9-s", "part2-fig10", "part2-fig10-right"}) {
        CHECK(find_preset(cat, id) != nullptr);
    }
    for (const auto& s : cat) {
        CHECK_FALSE(s.id.empty());
        CHECK_FALSE(s.reference.empty());
        CHECK(s.sweep.points == 2001);
        CHECK_NOTHROW(s.validate());
    }
}

TEST_CASE("golden preset parameters") {
    SUBCASE("crossing pair, real coupling") {
        const Scenario s = preset("part1-fig1ab");
        CHECK(s.model_kind == ModelKind::TwoLevel);
        CHECK(s.levels[0].e.c == 1.0);
        CHECK(s.levels[0].e.m == -0.5);
        CHECK(s.levels[1].e.c == 0.0);
        CHECK(s.levels[1].e.m == 1.0);
        CHECK(s.levels[0].gamma_half.c == -0.5);
        CHECK(s.levels[1].gamma_half.c == -0.6);
        CHECK(s.omega == Complex{0.05, 0.0});
    }
    SUBCASE("crossing pair, imaginary coupling") {
        const Scenario s = preset("part1-fig1ef");
        CHECK(s.levels[0].gamma_half.c == -0.6);
        CHECK(s.levels[1].gamma_half.c == -0.6);
        CHECK(s.omega == Complex{0.0, 0.05});
    }
    SUBCASE("distance sweeps") {
        const Scenario s = preset("part1-fig1a");
        CHECK(s.levels[0].e.c == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(s.levels[1].e.m == 1.0);
        CHECK(s.levels[1].gamma_half.c == -0.5999);
        const Scenario b = preset("part1-fig1b-left");
        CHECK(b.levels[1].gamma_half.c == -0.57);
        CHECK(b.omega.real() == doctest::Approx(0.05 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(b.omega.imag() == doctest::Approx(0.05 / std::sqrt(2.0)).epsilon(1e-15));
    }
    SUBCASE("three-level presets") {
        const Scenario s5 = preset("part2-fig5");
        CHECK(s5.model_kind == ModelKind::ThreeDoorway);
        CHECK(s5.levels[0].gamma_half.c == -0.495);
        CHECK(s5.levels[2].gamma_half.c == -0.485);
        CHECK(s5.omega == Complex{0.01, 0.0});
        CHECK(s5.levels[2].e.c == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
        CHECK(s5.levels[2].e.m == 1.5);
        const Scenario s6 = preset("part2-fig6");
        CHECK(s6.levels[2].gamma_half.c == -0.4853);
        CHECK(s6.omega == Complex{0.0, 0.01});
    }
    SUBCASE("offset sweeps carry their frozen crossing parameter") {
        CHECK(preset("part2-fig7").secondary->value == doctest::Approx(2.0 / 3.0));
        CHECK(preset("part2-fig7-a1").secondary->value == 0.6539);
        CHECK(preset("part2-fig7-a2").secondary->value == 0.675);
        CHECK(preset("part2-fig8-a2").secondary->value == 0.6774);
    }
    SUBCASE("gain/loss triples") {
        const Scenario s9 = preset("part2-fig9");
        CHECK(s9.levels[0].gamma_half.m == -0.05);
        CHECK(s9.levels[1].gamma_half.m == 0.05);
        CHECK(s9.levels[2].gamma_half.m == 0.05);
        CHECK(s9.levels[2].e.c == 0.487);
        CHECK(s9.omega == Complex{0.05, 0.0});
        const Scenario s10 = preset("part2-fig10");
        CHECK(s10.levels[2].e.c == 0.5);
        CHECK(s10.levels[2].gamma_half.c == 0.05);
        CHECK(s10.levels[2].gamma_half.m == 0.0);
    }
    SUBCASE("unknown id throws") { CHECK_THROWS_AS(preset("nope"), DomainError); }
}

TEST_CASE("config round-trip is lossless") {
    for (const auto& s : preset_catalog()) {
        nlohmann::json j = s;
        const Scenario back = j.get<Scenario>();
        nlohmann::json j2 = back;
        CHECK(j == j2);
        CHECK(back.id == s.id);
        CHECK(back.omega == s.omega);
        CHECK(back.sweep.points == s.sweep.points);
        REQUIRE(back.levels.size() == s.levels.size());
        for (std::size_t i = 0; i < s.levels.size(); ++i) {
            CHECK(back.levels[i].e.c == s.levels[i].e.c);
            CHECK(back.levels[i].gamma_half.m == s.levels[i].gamma_half.m);
        }
    }
}

TEST_CASE("scenario matrices") {
    SUBCASE("two-level matrix entries at a sweep point") {
        const Scenario s = preset("part1-fig1ab");
        const ModelMatrix m = s.matrix_at(0.5);
        CHECK(m.at(0, 0) == Complex{0.75, -0.5});
        CHECK(m.at(1, 1) == Complex{0.5, -0.6});
        CHECK(m.at(0, 1) == Complex{0.05, 0.0});
    }
    SUBCASE("gain/loss pair with ramped width") {
        const Scenario s = preset("part1-fig3");
        const ModelMatrix m = s.matrix_at(1.0);
        CHECK(m.at(0, 0).imag() == doctest::Approx(-0.05).epsilon(1e-9));
        CHECK(m.at(1, 1).imag() == doctest::Approx(0.05).epsilon(1e-9));
        const Scenario lossy = preset("part1-fig3-lossy");
        CHECK(lossy.matrix_at(1.0).at(1, 1).imag() == 0.0);
    }
    SUBCASE("channel model sweeps alpha") {
        Scenario s;
        s.model_kind = ModelKind::NChannel;
        s.channel = ChannelSpec{{0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}};
        s.sweep = SweepSpec{"alpha", 0.0, 10.0, 11};
        s.validate();
        const ModelMatrix m = s.matrix_at(2.0);
        CHECK(m.at(0, 1) == Complex{0.0, -2.0});
        CHECK(m.at(2, 2) == Complex{2.0, -2.0});
    }
}

TEST_CASE("sweep output") {
    Scenario s = preset("part1-fig1ab");
    s.sweep.points = 101;

    SUBCASE("trace sum rule per row") {
        const SweepResult res = run_sweep(s);
        REQUIRE(res.rows.size() == 101);
        for (const auto& row : res.rows) {
            bool flagged = false;
            for (bool f : row.near_ep) flagged = flagged || f;
            if (flagged || !row.error.empty()) continue;
            const ModelMatrix m = s.matrix_at(row.param);
            Complex sum{0.0, 0.0};
            for (std::size_t i = 0; i < 2; ++i)
                sum += Complex{row.energy[i], row.width_half[i]};
            CHECK(std::abs(sum - m.trace()) <= 1e-10 * std::max(1.0, std::abs(sum)));
        }
    }
    SUBCASE("csv output is deterministic and well-formed") {
        const SweepResult r1 = run_sweep(s);
        const SweepResult r2 = run_sweep(s);
        std::ostringstream o1, o2;
        write_sweep_csv(o1, s, r1);
        write_sweep_csv(o2, s, r2);
        CHECK(o1.str() == o2.str());
        std::istringstream in(o1.str());
        std::string header;
        std::getline(in, header);
        CHECK(header ==
              "a,E_1,G_half_1,E_2,G_half_2,r_1,r_2,b_abs_1_1,theta_1_1,b_abs_1_2,theta_1_2,"
              "b_abs_2_1,theta_2_1,b_abs_2_2,theta_2_2,cos_omega,flags");
        std::string line;
        std::size_t rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            CHECK(std::count(line.begin(), line.end(), ',') == 16);
        }
        CHECK(rows == 101);
    }
    SUBCASE("tracked labels move continuously") {
        const SweepResult res = run_sweep(s);
        for (std::size_t k = 1; k < res.rows.size(); ++k) {
            const auto& a = res.rows[k - 1];
            const auto& b = res.rows[k];
            bool flagged = !a.error.empty() || !b.error.empty();
            for (bool f : a.near_ep) flagged = flagged || f;
            for (bool f : b.near_ep) flagged = flagged || f;
            if (flagged) continue;
            for (std::size_t i = 0; i < 2; ++i) {
                const double move = std::hypot(b.energy[i] - a.energy[i],
                                               b.width_half[i] - a.width_half[i]);
                CHECK(move < 0.05);
            }
        }
    }
}

TEST_CASE("ep search report") {
    Scenario s = preset("part1-fig1ef");
    const EpReport report = run_ep_search(s);
    REQUIRE(report.locations.size() == 2);
    CHECK(report.locations[0].converged);
    CHECK(report.locations[1].converged);
    CHECK(report.locations[0].kind == EpKind::PairMember);
    CHECK(report.locations[0].params[0] == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(report.locations[1].params[0] == doctest::Approx(11.0 / 15.0).epsilon(1e-6));
    const nlohmann::json j = ep_report_json(s, report);
    CHECK(j.at("locations").size() == 2);
    CHECK(j.at("locations")[0].at("kind") == "pair_member");
}

TEST_CASE("smatrix runner") {
    const LineShape one = run_smatrix({Resonance(0.5, 0.1)}, false, -0.5, 1.5, 2001);
    CHECK(one.sigma.size() == 2001);
    double peak = 0.0;
    for (double v : one.sigma) peak = std::max(peak, v);
    CHECK(peak == doctest::Approx(4.0).epsilon(1e-6));
    CHECK_THROWS_AS(run_smatrix({}, false, 0.0, 1.0, 10), DomainError);
    CHECK_THROWS_AS(run_smatrix({Resonance(0.0, 0.1), Resonance(0.1, 0.1)}, true, 0.0, 1.0, 10),
                    DomainError);
}
