#include "doctest.h"

#include <cmath>
#include <numbers>

#include "parabolic/collar_modulus.hpp"
#include "parabolic/errors.hpp"
#include "parabolic/extremal_oracle.hpp"

using namespace parabolic;

namespace {
constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("rectangle and unit square") {
    auto r = discrete_modulus(rectangle_domain(3.0, 1.0, 1.0 / 32));
    CHECK(rel(r.value, 3.0) < 0.005);
    auto s = discrete_modulus(rectangle_domain(1.0, 1.0, 1.0 / 32));
    CHECK(rel(s.value, 1.0) < 0.002);
    CHECK(s.extrapolated);
    REQUIRE(s.meshes.size() == 2);
    CHECK(s.meshes[1] == doctest::Approx(s.meshes[0] / 2));
    CHECK(s.error_bar >= 0.0);
}

TEST_CASE("annulus and sector") {
    auto a = discrete_modulus(annulus_domain(1.0, std::exp(1.0), 1.0 / 32));
    CHECK(rel(a.value, 2 * kPi) < 0.01);
    auto s = discrete_modulus(sector_domain(1.0, std::exp(1.0), 0.0, kPi / 2, 1.0 / 32));
    CHECK(rel(s.value, 2 / kPi) < 0.01);
    // same opening, rotated
    auto t = discrete_modulus(sector_domain(1.0, std::exp(1.0), 0.7, kPi / 2, 1.0 / 32));
    CHECK(rel(t.value, 2 / kPi) < 0.01);
}

TEST_CASE("maskit sector") {
    for (double l : {1.0, 2.0}) {
        auto e = discrete_modulus(maskit_sector_domain(l, 0.02));
        CHECK(rel(1.0 / e.value, standard_half_collar_lambda(l)) < 0.02);
    }
}

TEST_CASE("electrode swap is exact") {
    auto d = annulus_domain(1.0, 2.0, 1.0 / 24);
    double e1 = discrete_energy(d);
    double e2 = discrete_energy(swap_electrodes(d));
    CHECK(std::fabs(e1 - e2) <= 1e-12 * e1);
    auto s = sector_domain(1.0, 3.0, 0.2, 1.0, 1.0 / 24);
    CHECK(std::fabs(discrete_energy(s) - discrete_energy(swap_electrodes(s))) <= 1e-12 * discrete_energy(s));
}

TEST_CASE("similarity invariance") {
    double base = discrete_modulus(annulus_domain(1.0, std::exp(1.0), 1.0 / 32)).value;
    for (double s : {0.5, 2.5}) {
        double v = discrete_modulus(annulus_domain(s, s * std::exp(1.0), 1.0 / 32)).value;
        CHECK(rel(v, base) < 0.01);
    }
    double r = discrete_modulus(rectangle_domain(1.5, 0.5, 1.0 / 64)).value;
    CHECK(rel(r, 3.0) < 0.01);
}

TEST_CASE("refinement differences shrink") {
    OracleOptions opt;
    opt.levels = 3;
    auto check = [&](const GridDomain& d) {
        auto e = discrete_modulus(d, opt);
        REQUIRE(e.level_values.size() == 3);
        double d1 = std::fabs(e.level_values[1] - e.level_values[0]);
        double d2 = std::fabs(e.level_values[2] - e.level_values[1]);
        INFO(d.name << " " << d1 << " " << d2);
        CHECK(d1 >= 1.5 * d2);
    };
    check(annulus_domain(1.0, std::exp(1.0), 1.0 / 16));
    check(sector_domain(1.0, std::exp(1.0), 0.0, kPi / 2, 1.0 / 16));
    check(collar_domain(HalfCollarSpec{6.0, kInf}, 0.004));
}

TEST_CASE("preconditioners agree") {
    auto d = annulus_domain(1.0, 2.0, 1.0 / 16);
    OracleOptions none, jac;
    none.preconditioner = Preconditioner::None;
    jac.preconditioner = Preconditioner::Jacobi;
    double mg = discrete_energy(d);
    CHECK(discrete_energy(d, none) == doctest::Approx(mg).epsilon(1e-8));
    CHECK(discrete_energy(d, jac) == doctest::Approx(mg).epsilon(1e-8));
    int it = 0;
    OracleOptions capped;
    capped.preconditioner = Preconditioner::None;
    capped.max_iter = 3;
    CHECK_THROWS_AS(discrete_energy(d, capped, &it), NumericError);
}

TEST_CASE("deterministic") {
    auto d = collar_domain(GluedCollarSpec{8.0, kInf, kInf, Twist::checked(0.25)}, 0.004);
    auto a = discrete_modulus(d);
    auto b = discrete_modulus(d);
    CHECK(a.value == b.value);
    CHECK(a.level_values == b.level_values);
}

TEST_CASE("disconnected electrodes") {
    GridDomain d = rectangle_domain(1.0, 1.0, 1.0 / 16);
    d.electrode_b = [](Point) { return false; };
    CHECK_THROWS_AS(discrete_energy(d), NumericError);
    // wall across the middle
    GridDomain w = rectangle_domain(1.0, 1.0, 1.0 / 16);
    w.inside = [](Point p) { return p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1 && std::fabs(p.y - 0.5) > 0.1; };
    CHECK_THROWS_AS(discrete_energy(w), NumericError);
}

TEST_CASE("resolution refusal") {
    auto p = nonstandard_half_collar_graphs({10.0, kInf});
    double gap = minimum_gap(p);
    CHECK(gap > 0.0);
    CHECK(gap <= p.gap(0.5) + 1e-15);
    auto d = collar_domain(HalfCollarSpec{10.0, kInf}, 0.01);
    try {
        discrete_modulus(d);
        FAIL("expected refusal");
    } catch (const ResolutionError& e) {
        CHECK(e.recommended_h == doctest::Approx(gap / 3).epsilon(1e-9));
    }
}

TEST_CASE("comb geometry") {
    for (double eps : {0.2, 0.1, 0.05}) {
        auto g = comb_geometry(eps);
        CHECK(g.n_eps == static_cast<int>(std::lround(1 / (eps * eps))));
        CHECK(g.slit_count == g.n_eps - 2);
        auto d = comb_domain(eps);
        CHECK(static_cast<int>(d.slits.size()) == g.slit_count);
        CHECK(d.slits.front().a.x == doctest::Approx(2.0 / g.n_eps));
        CHECK(eps * eps >= 3 * d.h * (1 - 1e-12));
    }
    CHECK_THROWS_AS(comb_geometry(0.9), DomainError);
    CHECK_THROWS_AS(comb_domain(0.2, 1.0 / 25), ResolutionError);
    CHECK_THROWS_AS(swap_electrodes(comb_domain(0.2)), DomainError);
}

TEST_CASE("comb ratio decreases") {
    double prev = 1e300;
    for (double eps : {0.2, 0.1}) {
        double full = discrete_modulus(comb_domain(eps)).value;
        double ratio = (1.0 / eps) / full;
        CHECK(ratio < prev);
        CHECK(full > 1.0 / eps);
        prev = ratio;
    }
}

TEST_CASE("glued collar at zero twist is mirror symmetric") {
    GluedCollarSpec s{4.0, kInf, kInf, Twist()};
    auto pair = glued_collar_graphs(s);
    GridDomain d = collar_domain(s, 0.01);
    GridDomain m = d;
    auto inside = d.inside, a = d.electrode_a, b = d.electrode_b;
    m.inside = [inside](Point p) { return inside({-p.x, p.y}); };
    m.electrode_a = [a](Point p) { return a({-p.x, p.y}); };
    m.electrode_b = [b](Point p) { return b({-p.x, p.y}); };
    auto e1 = discrete_modulus(d);
    auto e2 = discrete_modulus(m);
    auto e3 = discrete_modulus(swap_electrodes(d));
    CHECK(std::fabs(e1.value - e2.value) <= e1.error_bar + 1e-9);
    CHECK(std::fabs(e1.value - e3.value) <= 1e-12 * e1.value);
    CHECK(pair.f(0.3) == doctest::Approx(pair.f(-0.3)));
}

TEST_CASE("half collar oracle inside the sandwich") {
    HalfCollarSpec s{6.0, kInf};
    auto pair = nonstandard_half_collar_graphs(s);
    auto bounds = sandwich_bounds(pair, 1.0 / 6.0);
    auto e = discrete_modulus(collar_domain(s, minimum_gap(pair) / 6));
    CHECK(e.value + e.error_bar >= bounds.lower);
    CHECK(e.value - e.error_bar <= bounds.upper);
    // extremal distance in the returned interval
    auto lam = nonstandard_half_collar_lambda(s);
    CHECK(1.0 / e.value >= lam.lower);
    CHECK(1.0 / e.value <= lam.upper * (1 + e.error_bar / e.value));
}
