#include "parabolic/collar_modulus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parabolic/errors.hpp"

namespace parabolic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClampGuard = 1e-12;

// Reduce x into [-1/2, 1/2).
double wrap(double x) { return x - std::floor(x + 0.5); }

// cosh(a) / cosh(b) without overflow, for a, b >= 0.
double cosh_ratio(double a, double b) {
    a = std::fabs(a);
    b = std::fabs(b);
    return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
}

double clamped_acos(double s) {
    if (s > 1.0 + kClampGuard || s < -1.0 - kClampGuard) {
        std::ostringstream os;
        os.precision(17);
        os << "arccos argument " << s << " outside [-1, 1]";
        throw DomainError(os.str());
    }
    return std::acos(std::clamp(s, -1.0, 1.0));
}

void check_core(double l_alpha) {
    if (!(l_alpha > 0.0) || !std::isfinite(l_alpha)) throw DomainError("l_alpha must be finite and > 0");
}

}  // namespace

void HalfCollarSpec::validate() const {
    check_core(l_alpha);
    if (!(l_gamma > 0.0)) throw DomainError("l_gamma must be > 0 or inf");
    double bound = collar_width(0.5 * l_alpha);
    if (!(l_gamma > bound)) {
        std::ostringstream os;
        os << "collar constraint l_gamma > r(l_alpha/2) = " << bound << " violated by l_gamma = " << l_gamma;
        throw HypothesisError(os.str());
    }
}

void GluedCollarSpec::validate() const {
    first().validate();
    second().validate();
}

double standard_half_collar_lambda(double l) {
    check_core(l);
    return std::atan(csch(0.5 * l)) / l;
}

double standard_sector_angle(double l) {
    check_core(l);
    return std::atan(csch(0.5 * l));
}

double standard_half_collar_lambda_sector(double l) {
    check_core(l);
    // sector between the imaginary axis and the ray through the equidistant point
    // at hyperbolic distance r(l/2): its angle from the real axis is atan(sinh(l/2))
    double theta = std::atan2(1.0, std::sinh(0.5 * l));
    double log_ratio = std::log(std::exp(l));
    if (!std::isfinite(log_ratio)) log_ratio = l;
    return theta / log_ratio;
}

PeriodicFunctionPair nonstandard_half_collar_graphs(const HalfCollarSpec& spec) {
    spec.validate();
    const double l = spec.l_alpha;
    const double r = collar_width(spec.eta());
    auto f = [l](double) { return kPi / (2.0 * l); };
    auto g = [l, r](double x) { return clamped_acos(cosh_ratio(l * wrap(x), r)) / l; };
    return make_pair("half-collar", f, g, 1.0, -0.5, {0.0, 0.5});
}

PeriodicFunctionPair half_collar_envelope_graphs(const HalfCollarSpec& spec) {
    spec.validate();
    const double l = spec.l_alpha;
    const double r = collar_width(spec.eta());
    auto f = [l](double) { return kPi / (2.0 * l); };
    auto h = [l, r](double x) { return kPi / (2.0 * l) - std::exp(l * std::fabs(wrap(x)) - r) / (2.0 * l); };
    return make_pair("half-collar-envelope", f, h, 1.0, -0.5, {0.0, 0.5});
}

ModulusBounds nonstandard_half_collar_lambda(const HalfCollarSpec& spec) {
    spec.validate();
    if (!(spec.l_alpha > 1.0)) throw HypothesisError("nonstandard half-collar bounds need l_alpha > 1");
    const double delta = 1.0 / spec.l_alpha;
    auto pair = nonstandard_half_collar_graphs(spec);
    ModulusBounds mod = sandwich_bounds(pair, delta);
    ModulusBounds out;
    out.lower = 1.0 / mod.upper;
    out.upper = 1.0 / mod.lower;
    out.provenance = {"1/sandwich-upper(f,g)", "1/vertical-family(f,g)"};
    out.detail = mod.detail;
    out.detail.emplace_back("modulus_upper", mod.upper);
    return out;
}

PeriodicFunctionPair glued_collar_graphs(const GluedCollarSpec& spec) {
    spec.validate();
    const double l = spec.l_alpha;
    const double r1 = collar_width(spec.first().eta());
    const double r2 = collar_width(spec.second().eta());
    const double t = spec.twist.unit_interval();
    auto f = [l, r1](double x) { return (kPi - clamped_acos(cosh_ratio(l * wrap(x), r1))) / l; };
    auto g = [l, r2, t](double x) { return clamped_acos(cosh_ratio(l * wrap(x - t), r2)) / l; };
    return make_pair("glued-collar", f, g, 1.0, -0.5, {0.0, 0.5, t, t + 0.5});
}

PeriodicFunctionPair glued_envelope_graphs(const GluedCollarSpec& spec) {
    spec.validate();
    const double l = spec.l_alpha;
    const double r1 = collar_width(spec.first().eta());
    const double r2 = collar_width(spec.second().eta());
    const double t = spec.twist.unit_interval();
    auto h1 = [l, r1](double x) { return (0.5 * kPi + 0.5 * std::exp(l * std::fabs(wrap(x)) - r1)) / l; };
    auto h2 = [l, r2, t](double x) { return (0.5 * kPi - 0.5 * std::exp(l * std::fabs(wrap(x - t)) - r2)) / l; };
    return make_pair("glued-envelope", h1, h2, 1.0, -0.5, {0.0, 0.5, t, t + 0.5});
}

double glued_analytic_proxy(const GluedCollarSpec& spec) {
    spec.validate();
    const double l = spec.l_alpha, a = spec.twist.magnitude();
    const double r1 = collar_width(spec.first().eta());
    const double r2 = collar_width(spec.second().eta());
    return std::exp(std::max(r1, r2) - a * l / 2.0);
}

double glued_four_interval_bound(const GluedCollarSpec& spec) {
    spec.validate();
    const double l = spec.l_alpha, t = spec.twist.unit_interval();
    const double r1 = collar_width(spec.first().eta());
    const double r2 = collar_width(spec.second().eta());
    return 2.0 * (std::exp(r1) + std::exp(r2)) * (std::exp(-l / 2.0 + t * l / 2.0) + std::exp(-t * l / 2.0));
}

double glued_four_term_max(const GluedCollarSpec& spec) {
    spec.validate();
    const double l = spec.l_alpha, t = spec.twist.unit_interval();
    const double r = std::max(collar_width(spec.first().eta()), collar_width(spec.second().eta()));
    return std::exp(r + std::max(-t * l / 2.0, -l / 2.0 + t * l / 2.0));
}

ModulusBounds glued_collar_lambda(const GluedCollarSpec& spec) {
    spec.validate();
    if (!(spec.l_alpha >= 2.0)) throw HypothesisError("glued collar bounds need l_alpha >= 2");
    const double delta = 1.0 / spec.l_alpha;
    ModulusBounds env = sandwich_bounds(glued_envelope_graphs(spec), delta);
    double v_full = vertical_modulus(glued_collar_graphs(spec));
    ModulusBounds out;
    out.lower = 1.0 / env.upper;
    out.upper = 1.0 / v_full;
    out.provenance = {"1/sandwich-upper(h1,h2)", "1/vertical-family(f,g)", "gluings-four-integrals"};
    out.detail = {{"vertical_envelope", env.lower},
                  {"c_delta", env.get("c_delta")},
                  {"area_envelope", env.get("area")},
                  {"delta", delta},
                  {"modulus_upper", env.upper},
                  {"vertical_full", v_full},
                  {"four_interval_bound", glued_four_interval_bound(spec)},
                  {"analytic_proxy", glued_analytic_proxy(spec)}};
    return out;
}

}  // namespace parabolic
