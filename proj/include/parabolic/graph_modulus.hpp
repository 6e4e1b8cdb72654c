#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace parabolic {

using RealFn = std::function<double(double)>;

// Two periodic graphs y = f(x) > y = g(x) over one period [x1, x1 + period].
struct PeriodicFunctionPair {
    RealFn f, g;
    double period = 1.0;
    double x1 = 0.0;
    std::string name;
    // Points (mod period) where f or g may fail to be smooth.
    std::vector<double> breakpoints;

    double x2() const { return x1 + period; }
    double gap(double x) const { return f(x) - g(x); }
};

// Validates f > g on a 4096-point grid and spot-checks periodicity; throws DomainError.
PeriodicFunctionPair make_pair(std::string name, RealFn f, RealFn g, double period = 1.0, double x1 = 0.0,
                               std::vector<double> breakpoints = {});

PeriodicFunctionPair constant_gap_pair(double c, double period = 1.0);
// f = mean + amp sin(2 pi x / period), g = 0.
PeriodicFunctionPair sinusoid_pair(double mean, double amp, double period = 1.0);
// f = top, g = amp |sin(2 pi x / period)|.
PeriodicFunctionPair abs_sine_pair(double top, double amp, double period = 1.0);

struct ModulusBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<std::string> provenance;
    std::vector<std::pair<std::string, double>> detail;

    double geometric_mean() const;
    double get(const std::string& key) const;  // NaN if absent
};

inline constexpr double kQuadRelTol = 1e-8;
inline constexpr int kQuadDepth = 40;
inline constexpr int kDeviationSamples = 4096;

// Modulus of the vertical family: integral of dx / (f - g).
double vertical_modulus(const PeriodicFunctionPair& pair, double a, double b);
double vertical_modulus(const PeriodicFunctionPair& pair);

// Euclidean area between the graphs over one period.
double area_between(const PeriodicFunctionPair& pair);

// c_delta = inf_x m_delta(x) / (f(x) - g(x)).
double rectangle_deviation(const PeriodicFunctionPair& pair, double delta, int samples = kDeviationSamples);

// [mod vertical, (3 / c^2) mod vertical + A / delta^2].
ModulusBounds sandwich_bounds(const PeriodicFunctionPair& pair, double delta);

using PairFamily = std::function<PeriodicFunctionPair(double)>;

struct DegeneracyRow {
    double ell = 0.0;
    double min_gap = 0.0;
    double max_abs = 0.0;  // max of |f|, |g| on the sample grid
    double area = 0.0;
    bool gap_positive = false;
    bool decays = false;
    bool area_ok = false;
};

struct DegeneracyReport {
    std::vector<DegeneracyRow> rows;
    bool all_hold = false;
};

DegeneracyReport simply_degenerate_check(const PairFamily& family, double l0, const std::vector<double>& samples);

struct ComparabilityReport {
    double c = 0.0;
    double d = 0.0;
    double ratio_bound = 0.0;
    bool d_decaying = false;
    bool available = false;
    std::string message;
    std::vector<std::pair<double, double>> c_samples, d_samples;  // (ell, value)
};

ComparabilityReport comparability_constants(const PairFamily& family, const RealFn& delta_of_l,
                                            const std::vector<double>& samples);

}  // namespace parabolic
