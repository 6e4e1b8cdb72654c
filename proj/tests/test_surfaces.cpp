#include "doctest.h"

#include <cmath>

#include "parabolic/errors.hpp"
#include "parabolic/surfaces.hpp"

using namespace parabolic;

namespace {

std::vector<SequenceSpec> regression_specs() {
    return {
        log_affine(1, 0, 0, 1),
        log_affine(2, 0, 0, 1),
        log_affine(4, 3, 0, 1),
        log_affine(0, 2, 1),
        Constant{3.0},
        Power{0.5, 1.0, 1.0},
        one_parameter_lengths(1.0),
        one_parameter_lengths(3.0),
        parameter_family_lengths(0.25, 4.0),
        parameter_family_lengths(2.5, 2.5),
    };
}

}  // namespace

TEST_CASE("term values") {
    CHECK(term(log_affine(2, 0, 0), 10) == doctest::Approx(4.60517018598809).epsilon(1e-14));
    CHECK(term(one_parameter_lengths(1.0), 4) == doctest::Approx(std::log(3.0) + 2 * std::log(2.0)).epsilon(1e-14));
    CHECK(term(one_parameter_lengths(1.0), 4) == doctest::Approx(2.484906649788).epsilon(1e-12));
    CHECK(term(Constant{3.0}, 17) == 3.0);
    CHECK(term(Power{2.0, 1.0, 1.0}, 5) == doctest::Approx(10.0));
    CHECK(term(prefix({7.0, 8.0}, Constant{1.0}), 2) == 8.0);
    CHECK(term(prefix({7.0, 8.0}, Constant{1.0}), 3) == 1.0);
    // l_1 = 2 ln 1 = 0 is not a length
    CHECK_THROWS_AS(term(log_affine(2, 0, 0), 1), DomainError);
    CHECK_THROWS_AS(term(Constant{-1.0}, 1), DomainError);
}

TEST_CASE("twist_term normalisation") {
    CHECK(twist_term(Constant{0.5}, 3) == 0.5);
    CHECK(twist_term(Constant{-0.5}, 3) == 0.5);
    CHECK(twist_term(Constant{0.25}, 1) == 0.25);
    CHECK_THROWS_AS(twist_term(Constant{0.7}, 1), DomainError);
    FluteSpec bad{log_affine(1, 0, 0, 1), Constant{0.7}};
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("sigma small example") {
    auto s = sigma_sequence(prefix({1, 2, 3}, Constant{1.0}), 3);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == 1.0);
    CHECK(s[1] == 1.0);
    CHECK(s[2] == 2.0);
}

TEST_CASE("sigma recurrence residual") {
    const long N = 100000;
    for (const auto& spec : regression_specs()) {
        auto s = sigma_sequence(spec, N);
        double worst = std::fabs(s[0] - term(spec, 1));
        for (long n = 2; n <= N; ++n) worst = std::max(worst, std::fabs(s[n - 1] + s[n - 2] - term(spec, n)));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("sigma closed forms for X_{a,b}") {
    for (double a : {0.5, 1.0, 3.0})
        for (double b : {0.25, 2.0, 4.0}) {
            auto spec = parameter_family_lengths(a, b);
            const double l1 = a * std::log(2.0) / 2.0;
            auto s = sigma_sequence(spec, 20001);
            for (long n = 1; n <= 10000; ++n) {
                double odd = b * std::log(n + 1.0) + l1;
                double even = a * std::log(n + 1.0) - l1;
                CHECK(std::fabs(s[2 * n] - odd) <= 1e-11 * std::max(1.0, odd));
                CHECK(std::fabs(s[2 * n - 1] - even) <= 1e-11 * std::max(1.0, even));
            }
        }
}

TEST_CASE("sigma non-negative for non-decreasing lengths") {
    for (const auto& spec : regression_specs()) {
        auto s = sigma_sequence(spec, 20000);
        bool increasing = true;
        for (long n = 2; n <= 20000; ++n) increasing = increasing && term(spec, n) >= term(spec, n - 1);
        if (!increasing) continue;
        for (double v : s) CHECK(v >= -1e-12);
    }
}

TEST_CASE("concavity") {
    auto r = is_concave(log_affine(1, 0, 0, 1));
    CHECK(r.verdict == Concavity::Yes);
    CHECK(r.analytic);
    CHECK(is_concave(Constant{2.0}).verdict == Concavity::Yes);

    auto x = is_concave(one_parameter_lengths(1.0), 100);
    CHECK(x.verdict == Concavity::No);
    CHECK(x.witness % 2 == 0);
    // the failing inequality 2 l_{2n} < l_{2n-1} + l_{2n+1} holds on every even index
    auto l = one_parameter_lengths(1.0);
    for (long n = 1; n <= 50; ++n) CHECK(2 * term(l, 2 * n) < term(l, 2 * n - 1) + term(l, 2 * n + 1));

    // not analytic: checked on the window
    auto w = is_concave(prefix({0.7}, log_affine(1, 0, 0, 1)), 200);
    CHECK(w.verdict == Concavity::YesOnWindow);
    CHECK_FALSE(w.analytic);
    CHECK(is_concave(Power{1.0, 2.0, 1.0}, 50).verdict == Concavity::No);
}

TEST_CASE("bounded subsequence") {
    CHECK(has_bounded_subsequence(Constant{5.0}));
    CHECK(has_bounded_subsequence(alternating(Constant{1.0}, log_affine(1, 0, 0, 1))));
    CHECK_FALSE(has_bounded_subsequence(log_affine(1, 0, 0, 1)));
    CHECK_FALSE(has_bounded_subsequence(one_parameter_lengths(2.0)));
}

TEST_CASE("regression specs positive and finite up to 1e6") {
    for (const auto& spec : regression_specs()) {
        bool ok = true;
        for (long n = 2; n <= 1000000; ++n) {
            double v = evaluate(spec, n);
            ok = ok && std::isfinite(v) && v > 0;
        }
        CHECK(ok);
    }
}

TEST_CASE("boundary_data cardinalities") {
    FluteSpec f{log_affine(1, 0, 0, 1), Constant{0.25}};
    AbelianCover single, disjoint, inter, rank3;
    disjoint.rank = 2;
    disjoint.config = CoverConfig::DisjointPair;
    inter.rank = 2;
    inter.config = CoverConfig::IntersectingPair;
    rank3.rank = 3;
    rank3.config = CoverConfig::DisjointPair;
    for (long n = 1; n <= 12; ++n) {
        auto flute = boundary_data({FluteFamily{f}}, n);
        REQUIRE(flute.size() == 1);
        CHECK(flute[0].length == doctest::Approx(std::log(n + 1.0)));
        CHECK(flute[0].twist == 0.25);
        CHECK(boundary_data({LochNess{log_affine(1, 0, 0, 1)}}, n).size() == 1);
        CHECK(boundary_data({Ladder{Constant{1}, Constant{2}}}, n).size() == 2);
        CHECK(boundary_data({BiInfiniteFlute{f, f}}, n).size() == 2);
        CHECK(boundary_data({CantorTree{Power{1, 1, 0.5}}}, n).size() == (std::size_t{1} << n));
        CHECK(boundary_data({single}, n).size() == 2);
        CHECK(boundary_data({inter}, n).size() == 1);
        CHECK(boundary_data({disjoint}, n).size() <= static_cast<std::size_t>(4 * n));
        CHECK(boundary_data({rank3}, n).size() <= static_cast<std::size_t>(6 * n * n));
        CHECK(boundary_data({BoundedBoundary{3.0, 0.0, Constant{1}}}, n).size() == 3);
    }
    CHECK(boundary_data({CantorTree{Power{1, 1, 0.5}}}, 3).size() == 8);
}

TEST_CASE("describe") {
    CHECK_FALSE(one_parameter_lengths(1.0).describe().empty());
    CHECK(ExhaustionSpec{CantorTree{Constant{1}}}.family_name() != ExhaustionSpec{LochNess{}}.family_name());
}
