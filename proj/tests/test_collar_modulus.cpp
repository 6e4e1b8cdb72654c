#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "parabolic/collar_constants.hpp"
#include "parabolic/collar_modulus.hpp"
#include "parabolic/errors.hpp"

using namespace parabolic;
namespace cal = parabolic::calibration;

TEST_CASE("standard half collar") {
    CHECK(standard_half_collar_lambda(2.0) == doctest::Approx(0.352513421777618997).epsilon(1e-13));
    CHECK(standard_half_collar_lambda(1e-7) * 1e-7 == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
    double v = standard_half_collar_lambda(20.0) * 20.0 * std::exp(10.0);
    CHECK(v >= 1.9);
    CHECK(v <= 2.1);
    for (double l = 0.05; l < 60.0; l *= 1.3)
        CHECK(std::fabs(standard_half_collar_lambda(l) - standard_half_collar_lambda_sector(l)) < 1e-12);
}

TEST_CASE("collar constraint") {
    CHECK_THROWS_AS(HalfCollarSpec({1.5, 1.0}).validate(), HypothesisError);
    CHECK_NOTHROW(HalfCollarSpec({1.5, 1.1}).validate());
    CHECK_THROWS_AS(HalfCollarSpec({0.0, kInf}).validate(), DomainError);
    CHECK_THROWS_AS(nonstandard_half_collar_lambda({1.0, kInf}), HypothesisError);
    CHECK_THROWS_AS(glued_collar_lambda({1.5, kInf, kInf, Twist()}), HypothesisError);
}

TEST_CASE("half collar graphs") {
    for (double l : {2.0, 6.0, 10.0})
        for (double lg : {1.0, kInf}) {
            HalfCollarSpec s{l, lg};
            double r = collar_width(s.eta());
            CHECK(std::cosh(l / 2) / std::cosh(r) <= 1.0 + 1e-12);
            auto p = nonstandard_half_collar_graphs(s);
            CHECK(p.g(0.0) == doctest::Approx(std::acos(1.0 / std::cosh(r)) / l));
            CHECK(p.g(0.0) > 0.0);
            CHECK(p.g(0.5) >= 0.0);
        }
    HalfCollarSpec s{10.0, kInf};
    auto p = nonstandard_half_collar_graphs(s);
    double scaled = (p.f(0.0) - p.g(0.0)) * 10.0 * std::exp(5.0);
    CHECK(scaled > 0.5);
    CHECK(scaled < 4.0);
}

TEST_CASE("half collar bounds") {
    for (double l : {2.0, 4.0, 8.0, 16.0}) {
        auto b = nonstandard_half_collar_lambda({l, kInf});
        CHECK(b.lower <= b.upper);
        double lo = b.lower * std::exp(l / 2), hi = b.upper * std::exp(l / 2);
        CHECK(lo >= cal::kHalfLowerBandLo);
        CHECK(lo <= cal::kHalfLowerBandHi);
        CHECK(hi >= cal::kHalfUpperBandLo);
        CHECK(hi <= cal::kHalfUpperBandHi);
    }
    for (double l : {8.0, 12.0, 16.0, 20.0}) {
        auto b = nonstandard_half_collar_lambda({l, kInf});
        CHECK(b.lower / standard_half_collar_lambda(l) >= l / cal::kHalfGainK);
    }
    auto a = nonstandard_half_collar_lambda({12.0, 0.25});
    auto b = nonstandard_half_collar_lambda({12.0, 0.5});
    double t = std::tanh(0.5) / std::tanh(0.25);
    CHECK(std::fabs(b.lower / a.lower / t - 1.0) < 0.25);
    CHECK(std::fabs(b.upper / a.upper / t - 1.0) < 0.25);
}

TEST_CASE("glued collar graphs") {
    GluedCollarSpec s0{6.0, kInf, kInf, Twist()};
    auto p = glued_collar_graphs(s0);
    for (double x = 0.01; x < 0.5; x += 0.037) CHECK(p.gap(x) == doctest::Approx(p.gap(-x)).epsilon(1e-12));

    GluedCollarSpec sh{8.0, kInf, kInf, Twist::normalize(0.5)};
    auto q = glued_collar_graphs(sh);
    double best = 1e300, arg = 0.0;
    for (int i = 0; i < 4000; ++i) {
        double x = -0.5 + i / 4000.0;
        if (q.gap(x) < best) best = q.gap(x), arg = x;
    }
    CHECK(std::fabs(std::fabs(arg) - 0.25) < 1e-3);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    GluedCollarSpec st{5.0, 2.0, kInf, Twist::normalize(0.3)};
    auto r = glued_collar_graphs(st);
    for (int i = 0; i < 100; ++i) {
        double x = u(rng);
        CHECK(std::fabs(r.f(x + 1.0) - r.f(x)) < 1e-12);
        CHECK(std::fabs(r.g(x + 1.0) - r.g(x)) < 1e-12);
    }
}

TEST_CASE("glued collar with zero twist is half a single collar") {
    for (double l : {4.0, 8.0}) {
        GluedCollarSpec s{l, kInf, kInf, Twist()};
        double single_env = vertical_modulus(half_collar_envelope_graphs({l, kInf}));
        CHECK(vertical_modulus(glued_envelope_graphs(s)) == doctest::Approx(single_env / 2).epsilon(1e-9));
        double single = vertical_modulus(nonstandard_half_collar_graphs({l, kInf}));
        CHECK(vertical_modulus(glued_collar_graphs(s)) == doctest::Approx(single / 2).epsilon(1e-9));
    }
}

TEST_CASE("glued collar bounds") {
    for (double l : {4.0, 8.0, 16.0}) {
        auto b = glued_collar_lambda({l, kInf, kInf, Twist::normalize(0.5)});
        CHECK(b.lower <= b.upper);
        double v = b.lower * std::exp(l / 4);
        CHECK(v >= cal::kHalfTwistBandLo);
        CHECK(v <= cal::kHalfTwistBandHi);
    }
    for (double l : {4.0, 8.0, 16.0})
        for (int i = 0; i <= 5; ++i) {
            GluedCollarSpec s{l, kInf, kInf, Twist::normalize(0.1 * i)};
            double v = vertical_modulus(glued_envelope_graphs(s));
            CHECK(v <= cal::kFourTermC * glued_four_term_max(s));
            CHECK(v <= glued_four_interval_bound(s) * (1.0 + 1e-9));
        }
    // twist sign does not matter
    auto p = glued_collar_lambda({6.0, 3.0, kInf, Twist::normalize(0.3)});
    auto m = glued_collar_lambda({6.0, kInf, 3.0, Twist::normalize(-0.3)});
    CHECK(p.upper == doctest::Approx(m.upper).epsilon(1e-8));
}

TEST_CASE("analytic proxy is monotone in |t|") {
    for (double l : {2.0, 5.0, 12.0}) {
        double prev = 1e300;
        for (int i = 0; i <= 50; ++i) {
            double v = glued_analytic_proxy({l, 1.5, kInf, Twist::normalize(0.01 * i)});
            CHECK(v <= prev);
            prev = v;
        }
    }
}
