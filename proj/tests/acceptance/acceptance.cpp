// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "parabolic/classifier.hpp"
#include "parabolic/collar_constants.hpp"
#include "parabolic/collar_modulus.hpp"
#include "parabolic/extremal_oracle.hpp"
#include "parabolic/hypgeom.hpp"

using namespace parabolic;
namespace cal = parabolic::calibration;

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kRectangleTol = 0.005;
constexpr double kAnnulusTol = 0.01;
constexpr double kSectorTol = 0.01;
constexpr double kCalibrationMesh = 1.0 / 256;
constexpr double kMaskitTol = 0.02;
constexpr double kSigmaTol = 1e-12;
constexpr long kSigmaTerms = 100000;
constexpr int kRandomSpecs = 50;

// runtime budgets in seconds
constexpr double kBudget1 = 1, kBudget2 = 60, kBudget3 = 60, kBudget4 = 600, kBudget7 = 300;
constexpr double kBudget8 = 1, kBudget9 = 5, kBudget10 = 1, kBudget11 = 30;
// no stated limit for the band checks
constexpr double kBudgetBands = 30;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s < budget;
    bool ok = o.pass && in_time;
    if (!ok) ++failures;
    std::printf("[%s] %2d %s: %s; %.2f s (budget %.0f s%s)\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), s,
                budget, in_time ? "" : ", exceeded");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

Verdict flute(SequenceSpec l, double t) { return classify_flute(FluteSpec{std::move(l), Constant{t}}); }

bool exact(const Verdict& v) { return v.evidence.method == SeriesMethod::BertrandExact; }

Outcome identities() {
    double w1 = 0, w2 = 0, w3 = 0;
    for (int i = 0; i <= 20000; ++i) {
        double x = 1e-6 * std::pow(50.0 / 1e-6, i / 20000.0);
        double r = collar_width(x);
        w1 = std::max(w1, std::fabs(std::sinh(r) * std::sinh(x) - 1.0));
        w2 = std::max(w2, rel(collar_width(r), x));
    }
    for (int i = 0; i <= 3950; ++i) {
        double l = 0.5 + 0.01 * i;
        w3 = std::max(w3, rel(collar_width(eta_length(l, kInf)), l / 2));
    }
    bool ok = w1 < kIdentityTol && w2 < kIdentityTol && w3 < kIdentityTol;
    return {ok, "max residuals " + fmt("%.1e", w1) + ", " + fmt("%.1e", w2) + ", " + fmt("%.1e", w3) + " (tol 1e-10)"};
}

Outcome oracle_calibration() {
    auto r = discrete_modulus(rectangle_domain(2.0, 1.0, kCalibrationMesh));
    auto a = discrete_modulus(annulus_domain(1.0, std::exp(1.0), kCalibrationMesh));
    auto s = discrete_modulus(sector_domain(1.0, std::exp(1.0), 0.3, M_PI / 2, kCalibrationMesh));
    double er = rel(r.value, 2.0), ea = rel(a.value, 2 * M_PI), es = rel(s.value, 2 / M_PI);
    bool ok = r.extrapolated && er <= kRectangleTol && ea <= kAnnulusTol && es <= kSectorTol;
    return {ok, "rectangle " + fmt("%.2e", er) + " (tol 0.5%), annulus " + fmt("%.2e", ea) + ", sector " +
                    fmt("%.2e", es) + " (tol 1%)"};
}

Outcome maskit() {
    bool ok = true;
    std::string d;
    for (double l : {1.0, 2.0, 4.0}) {
        double lambda = 1.0 / discrete_modulus(maskit_sector_domain(l, l < 3 ? 0.02 : 0.03)).value;
        double e = rel(lambda, standard_half_collar_lambda(l));
        ok = ok && e <= kMaskitTol;
        d += (d.empty() ? "" : ", ") + fmt("l=%g", l) + " err " + fmt("%.2e", e);
    }
    return {ok, d + " (tol 2%)"};
}

bool inside(const PeriodicFunctionPair& p, double la, std::string& worst, double& margin) {
    ModulusBounds b = sandwich_bounds(p, 1.0 / la);
    double h = std::min(minimum_gap(p) / 6.0, 1.0 / 512);
    ModulusEstimate e = discrete_modulus(graph_domain(p, h));
    double lo = e.value - e.error_bar, hi = e.value + e.error_bar;
    double m = std::min(lo / b.lower - 1.0, b.upper / hi - 1.0);
    if (m < margin) {
        margin = m;
        worst = p.name;
    }
    return lo >= b.lower && hi <= b.upper;
}

Outcome sandwich() {
    bool ok = true;
    int n = 0;
    std::string worst;
    double margin = 1e300;
    for (double la : {2.0, 6.0, 10.0})
        for (double lg : {1.0, kInf}) {
            ok = inside(nonstandard_half_collar_graphs({la, lg}), la, worst, margin) && ok;
            ++n;
        }
    for (double la : {4.0, 8.0})
        for (double t : {0.0, 0.25, 0.5}) {
            ok = inside(glued_collar_graphs({la, kInf, kInf, Twist::checked(t)}), la, worst, margin) && ok;
            ++n;
        }
    return {ok, std::to_string(n) + " domains, smallest relative margin " + fmt("%.3e", margin) + " (" + worst + ")"};
}

Outcome bands() {
    double lo_min = 1e300, lo_max = 0, up_min = 1e300, up_max = 0, tw_min = 1e300, tw_max = 0;
    for (int i = 0; i <= 72; ++i) {
        double l = 2.0 + 0.25 * i;
        auto b = nonstandard_half_collar_lambda({l, kInf});
        double lo = b.lower * std::exp(l / 2), up = b.upper * std::exp(l / 2);
        lo_min = std::min(lo_min, lo), lo_max = std::max(lo_max, lo);
        up_min = std::min(up_min, up), up_max = std::max(up_max, up);
    }
    for (int i = 0; i <= 48; ++i) {
        double l = 4.0 + 0.25 * i;
        double v = glued_collar_lambda({l, kInf, kInf, Twist::checked(0.5)}).lower * std::exp(l / 4);
        tw_min = std::min(tw_min, v), tw_max = std::max(tw_max, v);
    }
    bool ok = lo_min >= cal::kHalfLowerBandLo && lo_max <= cal::kHalfLowerBandHi && up_min >= cal::kHalfUpperBandLo &&
              up_max <= cal::kHalfUpperBandHi && tw_min >= cal::kHalfTwistBandLo && tw_max <= cal::kHalfTwistBandHi;
    char buf[256];
    std::snprintf(buf, sizeof buf, "half lower [%.4g, %.4g], half upper [%.4g, %.4g], half-twist [%.4g, %.4g]", lo_min,
                  lo_max, up_min, up_max, tw_min, tw_max);
    return {ok, buf};
}

Outcome twist_gain() {
    double worst = 0;
    for (double l : {8.0, 12.0, 16.0})
        for (double t : {0.0, 0.25, 0.5}) {
            double ratio = glued_collar_lambda({l, kInf, kInf, Twist::checked(t)}).lower / (2 * standard_half_collar_lambda(l));
            worst = std::max(worst, l * std::exp(std::fabs(t) * l / 2) / ratio);
        }
    return {worst <= cal::kTwistGainK, "needed K " + fmt("%.2f", worst) + " <= frozen K " + fmt("%.0f", cal::kTwistGainK)};
}

Outcome comb() {
    double prev = 1e300;
    bool ok = true;
    std::string d;
    for (double eps : {0.2, 0.1, 0.05}) {
        double ratio = (1.0 / eps) / discrete_modulus(comb_domain(eps)).value;
        ok = ok && ratio < prev;
        prev = ratio;
        d += (d.empty() ? "" : ", ") + fmt("%.4f", ratio);
    }
    return {ok, "ratios " + d};
}

Outcome flute_table() {
    bool ok = true;
    int n = 0;
    auto expect = [&](const Verdict& v, const std::string& label) {
        ok = ok && v.label() == label && exact(v);
        ++n;
    };
    for (int i = 1; i <= 24; ++i) {
        double c = 0.25 * i;
        expect(flute(log_affine(c, 0, 0), 0.0), c <= 2 ? "Parabolic" : "NotParabolic(SeriesConvergesUnderIff)");
        expect(flute(log_affine(c, 0, 0), 0.5), c <= 4 ? "Parabolic" : "NotParabolic(SeriesConvergesUnderIff)");
        expect(flute(log_affine(4, c, 0), 0.5), c <= 4 ? "Parabolic" : "NotParabolic(SeriesConvergesUnderIff)");
    }
    for (double s : {0.25, 0.5, 1.0, 4.0 / 3, 1.34, 1.5, 1.75, 2.0, 2.01, 2.5, 3.0, 4.0})
        expect(flute(one_parameter_lengths(s), 0.5),
               s <= 4.0 / 3 + 1e-12 ? "Parabolic" : s <= 2.0 ? "Unknown" : "NotParabolic(Incomplete)");
    return {ok, std::to_string(n) + " flute specs"};
}

Outcome region_map() {
    std::vector<double> grid;
    for (int i = 1; i <= 16; ++i) grid.push_back(0.25 * i);
    int bad = 0, n = 0;
    for (const auto& row : sweep_parameter_family(grid, grid)) {
        double a = row.params[0].second, b = row.params[1].second;
        std::string want = a + b <= 4 ? "Parabolic" : std::min(a, b) > 2 ? "NotParabolic(Incomplete)" : "Unknown";
        bad += row.verdict.label() != want || !exact(row.verdict);
        ++n;
    }
    return {bad == 0, std::to_string(n) + " grid points, " + std::to_string(bad) + " mismatches"};
}

Outcome exhaustions() {
    auto cantor = classify_exhaustion({CantorTree{Power{1.0, 1.0, 0.5}}});
    AbelianCover z2;
    z2.rank = 2;
    z2.config = CoverConfig::DisjointPair;
    z2.min_twist = Constant{0.5};
    z2.max_length = log_affine(0, 2.0 / (1 - 0.5), 0);
    AbelianCover x;
    x.rank = 2;
    x.config = CoverConfig::IntersectingPair;
    x.collar_width = Constant{0.5};
    x.curve_length = Power{2.0, 1.0, 1.0};
    AbelianCover r3;
    r3.rank = 3;
    r3.config = CoverConfig::DisjointPair;
    r3.max_length = Constant{2.0};
    std::vector<std::pair<Verdict, std::string>> cases = {
        {cantor, "Parabolic"}, {classify_cover(z2), "Parabolic"}, {classify_cover(x), "Parabolic"}, {classify_cover(r3), "Unknown"}};
    bool ok = true;
    std::string d;
    for (const auto& [v, want] : cases) {
        ok = ok && v.label() == want && exact(v);
        d += (d.empty() ? "" : ", ") + v.criterion + " -> " + v.label();
    }
    return {ok, d};
}

Outcome properties() {
    std::vector<SequenceSpec> specs = {log_affine(2, 0, 0, 1), log_affine(4, 3, 0.5, 1), one_parameter_lengths(1.0),
                                       parameter_family_lengths(0.25, 4.0), Constant{3.0}};
    double worst = 0;
    for (const auto& s : specs) {
        auto sig = sigma_sequence(s, kSigmaTerms);
        worst = std::max(worst, std::fabs(sig[0] - term(s, 1)));
        for (long n = 2; n <= kSigmaTerms; ++n) worst = std::max(worst, std::fabs(sig[n - 1] + sig[n - 2] - term(s, n)));
    }
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(0.0, 6.0), uc(0.0, 2.0), ut(0.0, 0.5);
    int mono_bad = 0, dom_bad = 0;
    for (int i = 0; i < kRandomSpecs; ++i) {
        SequenceSpec l = log_affine(ua(rng), ua(rng), uc(rng), 1.0);
        double t1 = ut(rng), t2 = ut(rng);
        if (t1 > t2) std::swap(t1, t2);
        Verdict v1 = flute(l, t1), v2 = flute(l, t2), v0 = flute(l, 0.0);
        mono_bad += v1.kind == VerdictKind::Parabolic && v2.kind != VerdictKind::Parabolic;
        // divergence without twists forces divergence with twists
        dom_bad += v0.kind == VerdictKind::Parabolic && v1.kind != VerdictKind::Parabolic;
        for (long n : {1L, 100L, 10000L, 1000000L}) {
            double x = term(l, n);
            dom_bad += std::exp(-(1 - t1) * x / 2) < std::exp(-x / 2);
        }
    }
    bool ok = worst < kSigmaTol && mono_bad == 0 && dom_bad == 0;
    return {ok, "sigma residual " + fmt("%.1e", worst) + " (tol 1e-12), monotonicity violations " + std::to_string(mono_bad) +
                    ", domination violations " + std::to_string(dom_bad) + " over " + std::to_string(kRandomSpecs) +
                    " specs"};
}

}  // namespace

int main() {
    criterion(1, "closed-form identities", kBudget1, identities);
    criterion(2, "oracle calibration", kBudget2, oracle_calibration);
    criterion(3, "standard half-collar cross-check", kBudget3, maskit);
    criterion(4, "sandwich inclusion", kBudget4, sandwich);
    criterion(5, "asymptotic bands", kBudgetBands, bands);
    criterion(6, "twist-gain ratio", kBudgetBands, twist_gain);
    criterion(7, "comb degeneracy", kBudget7, comb);
    criterion(8, "flute classification table", kBudget8, flute_table);
    criterion(9, "X_{a,b} region map", kBudget9, region_map);
    criterion(10, "exhaustion criteria", kBudget10, exhaustions);
    criterion(11, "property suites", kBudget11, properties);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
