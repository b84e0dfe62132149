#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhspec/eploc.hpp"
#include "nhspec/ham.hpp"
#include "nhspec/presets.hpp"

using namespace nhspec;

namespace {

MatrixFamily1D crossing_pair(double gh1, double gh2, Complex w) {
    return [=](double a) {
        return build_two_level(LevelSet({Level{1.0 - 0.5 * a, 2.0 * gh1}, Level{a, 2.0 * gh2}}),
                               Coupling{w, false});
    };
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
    return g;
}

}  // namespace

TEST_CASE("coalescence scan") {
    SUBCASE("imaginary coupling, equal widths: two brackets") {
        const auto fam = crossing_pair(-0.6, -0.6, {0.0, 0.05});
        const ScanResult scan = scan_coalescence(fam, linspace(0.53333345, 0.80000012, 2001));
        REQUIRE(scan.brackets.size() == 2);
        CHECK(scan.brackets[0].first < 0.6);
        CHECK(scan.brackets[0].second > 0.6);
        CHECK(scan.brackets[1].first < 11.0 / 15.0);
        CHECK(scan.brackets[1].second > 11.0 / 15.0);
    }
    SUBCASE("real coupling with matching width difference: one bracket") {
        const auto fam = crossing_pair(-0.5, -0.6, {0.05, 0.0});
        const ScanResult scan = scan_coalescence(fam, linspace(0.4, 0.94, 801));
        REQUIRE(scan.brackets.size() == 1);
        CHECK(scan.brackets[0].first < 2.0 / 3.0);
        CHECK(scan.brackets[0].second > 2.0 / 3.0);
    }
    SUBCASE("decoupled distinct levels: no brackets") {
        const auto fam = [](double a) {
            return build_two_level(LevelSet({Level{1.0 + a, -0.2}, Level{-1.0 - a, -0.4}}),
                                   Coupling{{0.0, 0.0}, false});
        };
        const ScanResult scan = scan_coalescence(fam, linspace(0.0, 1.0, 101));
        CHECK(scan.brackets.empty());
    }
    SUBCASE("bad grids are rejected") {
        const auto fam = crossing_pair(-0.5, -0.6, {0.05, 0.0});
        CHECK_THROWS_AS(scan_coalescence(fam, {0.1, 0.2}), DomainError);
        CHECK_THROWS_AS(scan_coalescence(fam, {0.1, 0.3, 0.2}), DomainError);
    }
}

TEST_CASE("1-d refinement") {
    SUBCASE("two coalescences of the imaginary-coupling pair") {
        const auto fam = crossing_pair(-0.6, -0.6, {0.0, 0.05});
        const ScanResult scan = scan_coalescence(fam, linspace(0.53333345, 0.80000012, 2001));
        REQUIRE(scan.brackets.size() == 2);
        const EpLocation lo = refine_ep_1d(fam, scan.brackets[0], 1e-9);
        const EpLocation hi = refine_ep_1d(fam, scan.brackets[1], 1e-9);
        CHECK(lo.converged);
        CHECK(hi.converged);
        CHECK(lo.params[0] == doctest::Approx(0.6).epsilon(1e-6));
        CHECK(hi.params[0] == doctest::Approx(11.0 / 15.0).epsilon(1e-6));
    }
    SUBCASE("real-coupling coalescence at a = 2/3") {
        const auto fam = crossing_pair(-0.5, -0.6, {0.05, 0.0});
        const ScanResult scan = scan_coalescence(fam, linspace(0.4, 0.94, 801));
        REQUIRE(scan.brackets.size() == 1);
        const EpLocation loc = refine_ep_1d(fam, scan.brackets[0], 1e-9);
        CHECK(loc.converged);
        CHECK(loc.params[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
        CHECK(loc.residual < 1e-9);
    }
    SUBCASE("avoided crossing reports NotAnEp") {
        // Coupling too weak for the width difference: the discriminant never
        // vanishes along real a.
        const auto fam = crossing_pair(-0.5, -0.6, {0.02, 0.0});
        const EpLocation loc = refine_ep_1d(fam, {0.6, 0.74}, 1e-9);
        CHECK(loc.kind == EpKind::NotAnEp);
        CHECK_FALSE(loc.converged);
    }
    SUBCASE("determinism: identical inputs, identical outputs") {
        const auto fam = crossing_pair(-0.5, -0.6, {0.05, 0.0});
        const EpLocation a = refine_ep_1d(fam, {0.63, 0.71}, 1e-9);
        const EpLocation b = refine_ep_1d(fam, {0.63, 0.71}, 1e-9);
        CHECK(a.params[0] == b.params[0]);
        CHECK(a.residual == b.residual);
        CHECK(a.iterations == b.iterations);
    }
}

TEST_CASE("2-d refinement") {
    SUBCASE("discriminant linear in both parameters converges immediately") {
        // D = (p - 0.3) + i (q + 0.2) via eps1 - eps2 = sqrt(D - 4 w^2), w = 0:
        // instead, build the diagonal directly so D is exactly linear.
        const MatrixFamily2D fam = [](double p, double q) {
            // (eps1 - eps2)^2 = (p - 0.3) + i(q + 0.2) with omega = 0.
            const Complex d2 = std::sqrt(Complex{p - 0.3, q + 0.2});
            std::vector<Complex> entries{d2, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
            return ModelMatrix(2, entries, {d2, {0.0, 0.0}});
        };
        const EpLocation loc = refine_ep_2d(fam, {0.0, 0.0}, 1e-12);
        CHECK(loc.converged);
        CHECK(loc.iterations <= 3);
        CHECK(loc.params[0] == doctest::Approx(0.3).epsilon(1e-8));
        CHECK(loc.params[1] == doctest::Approx(-0.2).epsilon(1e-8));
    }
    SUBCASE("radial detuning family always has a coalescence in (a, theta)") {
        const double r = 0.05;
        const MatrixFamily2D fam = [r](double a, double theta) {
            return build_two_level(
                LevelSet({Level{1.0 - 0.5 * a + r * std::cos(theta), -1.0},
                          Level{a + r * std::sin(theta), -1.2}}),
                Coupling{{0.05, 0.0}, false});
        };
        const EpLocation loc = refine_ep_2d(fam, {0.6, 1.0}, 1e-12);
        CHECK(loc.converged);
        CHECK(loc.residual < 1e-12);
        CHECK(loc.params[1] >= 0.0);
        CHECK(loc.params[1] <= M_PI);
    }
    SUBCASE("hopeless family reports failure rather than a wrong answer") {
        const MatrixFamily2D fam = [](double p, double q) {
            // Discriminant (1 + p^2 + q^2) + 4 w^2 > 0 always.
            return build_two_level(
                LevelSet({Level{1.0 + std::abs(p), 0.0}, Level{-std::abs(q), 0.0}}),
                Coupling{{0.05, 0.0}, false});
        };
        const EpLocation loc = refine_ep_2d(fam, {0.5, 0.5}, 1e-12);
        CHECK_FALSE(loc.converged);
        CHECK(loc.kind == EpKind::NotAnEp);
    }
}

TEST_CASE("scan rigidity signature near a coalescence") {
    const auto fam = crossing_pair(-0.5, -0.6, {0.05, 0.0});
    const ScanResult scan = scan_coalescence(fam, linspace(0.6, 0.74, 701));
    double min_rig = 1.0, min_gap_rig = 1.0;
    double min_gap = 1e9;
    for (const auto& s : scan.samples) {
        min_rig = std::min(min_rig, s.rigidity_min);
        if (s.gap < min_gap) {
            min_gap = s.gap;
            min_gap_rig = s.rigidity_min;
        }
    }
    CHECK(min_gap_rig < 0.2);
    CHECK(min_rig < 0.2);
}
