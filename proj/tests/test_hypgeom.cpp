#include "doctest.h"

#include <cmath>

#include "parabolic/errors.hpp"
#include "parabolic/hypgeom.hpp"

using namespace parabolic;

// Reference values from mpmath at 30 digits.
TEST_CASE("collar_width reference values") {
    CHECK(collar_width(2.0) == doctest::Approx(0.272341468911831553).epsilon(1e-14));
    const double fixed = std::log(1.0 + std::sqrt(2.0));
    CHECK(collar_width(fixed) == doctest::Approx(0.881373587019543025).epsilon(1e-14));
    CHECK(std::fabs(collar_width(collar_width(2.0)) - 2.0) < 1e-12);
    CHECK_THROWS_AS(collar_width(0.0), DomainError);
    CHECK_THROWS_AS(collar_width(-1.0), DomainError);
}

TEST_CASE("collar_width identities over [1e-6, 50]") {
    for (int i = 0; i <= 2000; ++i) {
        double x = 1e-6 * std::pow(50.0 / 1e-6, i / 2000.0);
        double r = collar_width(x);
        CHECK(std::fabs(std::sinh(r) * std::sinh(x) - 1.0) < 1e-10);
        CHECK(std::fabs(collar_width(r) - x) <= 1e-10 * x);
    }
}

TEST_CASE("collar_width large arguments stay finite") {
    CHECK(collar_width(100.0) > 0.0);
    CHECK(collar_width(100.0) == doctest::Approx(2.0 * std::exp(-100.0)).epsilon(1e-12));
    CHECK(collar_width(15.0) * std::exp(15.0) * 2.0 == doctest::Approx(4.00000000000012).epsilon(1e-12));
}

TEST_CASE("eta_length") {
    CHECK(eta_length(4.0, 1.0) == doctest::Approx(0.205268661994114046).epsilon(1e-13));
    CHECK(eta_length(2.0, kInf) == doctest::Approx(0.771936832905304725).epsilon(1e-13));
    CHECK(collar_width(eta_length(2.0, kInf)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(eta_length(3.0, 1e-9) < 1e-9);
    for (int i = 0; i <= 395; ++i) {
        double l = 0.5 + 0.1 * i;
        CHECK(std::fabs(collar_width(eta_length(l, kInf)) - 0.5 * l) <= 1e-10 * 0.5 * l);
    }
}

TEST_CASE("eta bound l(alpha) <= 2 r(l(eta))") {
    for (int i = 0; i <= 39; ++i) {
        double la = 0.5 + 0.5 * i;
        for (int j = 0; j <= 99; ++j) {
            double lg = 0.1 + 0.1 * j;
            CHECK(la <= 2.0 * collar_width(eta_length(la, lg)) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("ortho_between_boundaries") {
    CHECK(std::cosh(ortho_between_boundaries(2.0, 2.0, 0.0)) ==
          doctest::Approx(2.44812332193262093).epsilon(1e-13));
    CHECK(ortho_between_boundaries(2.0, 2.0, 0.0) == doctest::Approx(1.54387366581060945).epsilon(1e-13));
    const double threshold = 2.0 * std::atanh(1.0 / std::cosh(1.0));
    for (double la : {0.1, 1.0, 5.0, 20.0})
        for (double la1 : {0.05, 0.5, 1.0, 0.999 * threshold})
            for (double la2 : {0.0, 1.0, 10.0}) CHECK(ortho_between_boundaries(la, la1, la2) >= 1.0);
    double prev = 0.0;
    for (double la2 = 0.0; la2 < 20.0; la2 += 0.5) {
        double v = ortho_between_boundaries(3.0, 1.5, la2);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("flute_ortho_delta") {
    const double a = 2.0 * std::log(1.0 + std::sqrt(2.0));
    CHECK(flute_ortho_delta(a, a) == doctest::Approx(1.76274717403908605).epsilon(1e-13));
    CHECK(flute_ortho_delta(3.0, 5.0) == collar_width(1.5) + collar_width(2.5));
    CHECK(flute_ortho_delta(30.0, 30.0) * std::exp(15.0) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("saccheri_summit") {
    CHECK(saccheri_summit(0.7, 0.0) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(saccheri_summit(0.1, 4.0) == doctest::Approx(0.374189473982098873).epsilon(1e-13));
    double prev = 0.0;
    for (double s = 0.0; s < 800.0; s += 7.3) {
        double v = saccheri_summit(0.3, s);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("twist normalization") {
    CHECK(Twist::normalize(0.7).value() == doctest::Approx(-0.3));
    CHECK(Twist::normalize(0.5).value() == 0.5);
    CHECK(Twist::normalize(-0.5).value() == 0.5);
    CHECK(Twist::normalize(3.25).value() == doctest::Approx(0.25));
    CHECK(Twist::checked(-0.5).value() == 0.5);
    CHECK(Twist::normalize(-0.25).unit_interval() == doctest::Approx(0.75));
    CHECK_THROWS_AS(Twist::checked(0.7), DomainError);
    CHECK_THROWS_AS(HyperbolicLength::core(kInf), DomainError);
    CHECK(HyperbolicLength::ortho(kInf).infinite());
}
