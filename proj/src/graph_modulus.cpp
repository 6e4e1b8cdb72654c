#include "parabolic/graph_modulus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <sstream>

#include "parabolic/errors.hpp"
#include "parabolic/quadrature.hpp"

namespace parabolic {

namespace {

constexpr double kGolden = 0.6180339887498949;

// Golden-section minimum of fn on [a, b]; returns (argmin, min).
std::pair<double, double> golden_min(const RealFn& fn, double a, double b, int iters = 60) {
    double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int i = 0; i < iters && b - a > 1e-15 * (std::fabs(a) + std::fabs(b) + 1.0); ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = fn(d);
        }
    }
    return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

// Minimum of fn on [lo, hi]: dense scan then golden refinement around the best sample.
double window_min(const RealFn& fn, double lo, double hi) {
    constexpr int m = 64;
    double step = (hi - lo) / m;
    double best = fn(lo), best_x = lo;
    for (int i = 1; i <= m; ++i) {
        double x = i == m ? hi : lo + i * step;
        double v = fn(x);
        if (v < best) best = v, best_x = x;
    }
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    return std::min(best, golden_min(fn, a, b).second);
}

// Sliding-window extreme over a periodic sample array, windows [i-k, i+k].
std::vector<double> sliding_extreme(const std::vector<double>& v, int k, bool want_min) {
    const int n = static_cast<int>(v.size());
    auto at = [&](int j) { return v[((j % n) + n) % n]; };
    auto better = [&](double a, double b) { return want_min ? a <= b : a >= b; };
    std::vector<double> out(n);
    std::deque<int> dq;
    for (int j = -k; j < n + k; ++j) {
        while (!dq.empty() && better(at(j), at(dq.back()))) dq.pop_back();
        dq.push_back(j);
        int i = j - k;
        if (i >= 0) {
            while (dq.front() < i - k) dq.pop_front();
            out[i] = at(dq.front());
        }
    }
    return out;
}

// All periodic translates of the pair's breakpoints inside [a, b].
std::vector<double> breakpoints_in(const PeriodicFunctionPair& pair, double a, double b) {
    std::vector<double> out;
    for (double c : pair.breakpoints) {
        double k = std::ceil((a - c) / pair.period);
        for (double x = c + k * pair.period; x <= b; x += pair.period) out.push_back(x);
    }
    return out;
}

}  // namespace

PeriodicFunctionPair make_pair(std::string name, RealFn f, RealFn g, double period, double x1,
                               std::vector<double> breakpoints) {
    if (!(period > 0.0)) throw DomainError("period must be > 0");
    PeriodicFunctionPair p{std::move(f), std::move(g), period, x1, std::move(name), std::move(breakpoints)};
    for (int i = 0; i < kDeviationSamples; ++i) {
        double x = x1 + period * (i + 0.5) / kDeviationSamples;
        double fx = p.f(x), gx = p.g(x);
        if (!(fx > gx)) {
            std::ostringstream os;
            os << p.name << ": f <= g at x = " << x;
            throw DomainError(os.str());
        }
    }
    for (int i = 0; i < 16; ++i) {
        double x = x1 + period * (i + 0.37) / 16.0;
        double scale = std::fabs(p.f(x)) + std::fabs(p.g(x)) + 1e-300;
        if (std::fabs(p.f(x + period) - p.f(x)) > 1e-9 * scale || std::fabs(p.g(x + period) - p.g(x)) > 1e-9 * scale)
            throw DomainError(p.name + ": graphs are not periodic");
    }
    return p;
}

PeriodicFunctionPair constant_gap_pair(double c, double period) {
    return make_pair("constant", [c](double) { return c; }, [](double) { return 0.0; }, period);
}

PeriodicFunctionPair sinusoid_pair(double mean, double amp, double period) {
    double w = 2.0 * std::numbers::pi / period;
    return make_pair("sinusoid", [=](double x) { return mean + amp * std::sin(w * x); }, [](double) { return 0.0; },
                     period);
}

PeriodicFunctionPair abs_sine_pair(double top, double amp, double period) {
    double w = 2.0 * std::numbers::pi / period;
    return make_pair("abs-sine", [top](double) { return top; },
                     [=](double x) { return amp * std::fabs(std::sin(w * x)); }, period);
}

double ModulusBounds::geometric_mean() const { return std::sqrt(lower * upper); }

double ModulusBounds::get(const std::string& key) const {
    for (auto& [k, v] : detail)
        if (k == key) return v;
    return std::numeric_limits<double>::quiet_NaN();
}

double vertical_modulus(const PeriodicFunctionPair& pair, double a, double b) {
    auto integrand = [&](double x) {
        double gap = pair.f(x) - pair.g(x);
        return gap > 0.0 ? 1.0 / gap : std::numeric_limits<double>::quiet_NaN();
    };
    return integrate_pieces(integrand, a, b, breakpoints_in(pair, a, b), kQuadRelTol, kQuadDepth).value;
}

double vertical_modulus(const PeriodicFunctionPair& pair) { return vertical_modulus(pair, pair.x1, pair.x2()); }

double area_between(const PeriodicFunctionPair& pair) {
    auto integrand = [&](double x) { return pair.f(x) - pair.g(x); };
    return integrate_pieces(integrand, pair.x1, pair.x2(), breakpoints_in(pair, pair.x1, pair.x2()), kQuadRelTol,
                            kQuadDepth)
        .value;
}

double rectangle_deviation(const PeriodicFunctionPair& pair, double delta, int samples) {
    if (!(delta > 0.0 && delta < pair.period)) throw DomainError("rectangle_deviation needs 0 < delta < period");
    const int n = samples;
    const double dx = pair.period / n;
    std::vector<double> xs(n), fv(n), gv(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = pair.x1 + i * dx;
        fv[i] = pair.f(xs[i]);
        gv[i] = pair.g(xs[i]);
    }
    const int k = static_cast<int>(std::floor(delta / dx));
    auto fmin = sliding_extreme(fv, k, true);
    auto gmax = sliding_extreme(gv, k, false);
    std::vector<double> ratio(n);
    for (int i = 0; i < n; ++i) {
        double lo = xs[i] - delta, hi = xs[i] + delta;
        double mf = std::min({fmin[i], pair.f(lo), pair.f(hi)});
        double mg = std::max({gmax[i], pair.g(lo), pair.g(hi)});
        ratio[i] = (mf - mg) / (fv[i] - gv[i]);
    }

    RealFn neg_g = [&](double x) { return -pair.g(x); };
    RealFn precise = [&](double x) {
        double m = window_min(pair.f, x - delta, x + delta) + window_min(neg_g, x - delta, x + delta);
        return m / (pair.f(x) - pair.g(x));
    };

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    const int candidates = std::min(n, 8);
    std::partial_sort(order.begin(), order.begin() + candidates, order.end(),
                      [&](int a, int b) { return ratio[a] < ratio[b] || (ratio[a] == ratio[b] && a < b); });

    double best = ratio[order[0]];
    for (int c = 0; c < candidates; ++c) {
        double x = xs[order[c]];
        best = std::min(best, precise(x));
        best = std::min(best, golden_min(precise, x - dx, x + dx, 40).second);
    }
    return std::clamp(best, 0.0, 1.0);
}

ModulusBounds sandwich_bounds(const PeriodicFunctionPair& pair, double delta) {
    double v = vertical_modulus(pair);
    double c = rectangle_deviation(pair, delta);
    double area = area_between(pair);
    ModulusBounds mb;
    mb.lower = v;
    mb.upper = c > 0.0 ? 3.0 / (c * c) * v + area / (delta * delta) : std::numeric_limits<double>::infinity();
    mb.provenance = {"vertical-family", "sandwich-upper"};
    mb.detail = {{"vertical", v}, {"c_delta", c}, {"area", area}, {"delta", delta}};
    return mb;
}

DegeneracyReport simply_degenerate_check(const PairFamily& family, double l0, const std::vector<double>& samples) {
    DegeneracyReport rep;
    std::vector<double> ells = samples;
    std::sort(ells.begin(), ells.end());
    for (double ell : ells) {
        DegeneracyRow row;
        row.ell = ell;
        if (ell < l0) throw DomainError("simply_degenerate_check: sample below l0");
        PeriodicFunctionPair p = family(ell);
        row.min_gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kDeviationSamples; ++i) {
            double x = p.x1 + p.period * i / kDeviationSamples;
            double fx = p.f(x), gx = p.g(x);
            row.min_gap = std::min(row.min_gap, fx - gx);
            row.max_abs = std::max({row.max_abs, std::fabs(fx), std::fabs(gx)});
        }
        row.gap_positive = row.min_gap > 0.0;
        row.area = area_between(p);
        row.area_ok = row.area <= 1.0;
        rep.rows.push_back(row);
    }
    const std::size_t n = rep.rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (n < 2) break;
        rep.rows[i].decays = i + 1 < n ? rep.rows[i].max_abs > rep.rows[i + 1].max_abs
                                       : rep.rows[i].max_abs < rep.rows[i - 1].max_abs;
    }
    rep.all_hold = n > 0;
    for (auto& r : rep.rows) rep.all_hold = rep.all_hold && r.gap_positive && r.decays && r.area_ok;
    return rep;
}

ComparabilityReport comparability_constants(const PairFamily& family, const RealFn& delta_of_l,
                                            const std::vector<double>& samples) {
    ComparabilityReport rep;
    std::vector<double> ells = samples;
    std::sort(ells.begin(), ells.end());
    rep.c = std::numeric_limits<double>::infinity();
    rep.d = std::numeric_limits<double>::infinity();
    for (double ell : ells) {
        PeriodicFunctionPair p = family(ell);
        double delta = delta_of_l(ell);
        double c = rectangle_deviation(p, delta);
        double d = delta * delta * vertical_modulus(p);
        rep.c_samples.emplace_back(ell, c);
        rep.d_samples.emplace_back(ell, d);
        rep.c = std::min(rep.c, c);
        rep.d = std::min(rep.d, d);
    }
    rep.d_decaying = rep.d_samples.size() >= 2;
    for (std::size_t i = 1; i < rep.d_samples.size(); ++i)
        rep.d_decaying = rep.d_decaying && rep.d_samples[i].second < rep.d_samples[i - 1].second;
    if (ells.empty()) {
        rep.message = "no samples";
    } else if (!(rep.c > 0.0)) {
        rep.message = "rectangle deviation c is not positive";
    } else if (!(rep.d > 0.0)) {
        rep.message = "d = inf delta^2 mod is not positive";
    } else if (rep.d_decaying) {
        rep.message = "delta^2 mod decays along the samples; d is not bounded below";
    } else {
        rep.available = true;
    }
    if (rep.c > 0.0 && rep.d > 0.0) rep.ratio_bound = 3.0 / (rep.c * rep.c) + 3.0 / rep.d;
    return rep;
}

}  // namespace parabolic
