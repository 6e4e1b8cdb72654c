#include "parabolic/hypgeom.hpp"

#include <cmath>
#include <string>

#include "parabolic/errors.hpp"

namespace parabolic {

HyperbolicLength HyperbolicLength::core(double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError("core geodesic length must be finite and > 0, got " + std::to_string(v));
    return HyperbolicLength(v);
}

HyperbolicLength HyperbolicLength::ortho(double v) {
    if (!(v > 0.0) || std::isnan(v))
        throw DomainError("orthogeodesic length must be > 0 or inf, got " + std::to_string(v));
    return HyperbolicLength(v);
}

Twist Twist::normalize(double t) {
    if (!std::isfinite(t)) throw DomainError("twist must be finite");
    double r = t - std::floor(t);  // [0, 1)
    if (r > 0.5) r -= 1.0;
    return Twist(r);
}

Twist Twist::checked(double t) {
    if (!(t >= -0.5 && t <= 0.5))
        throw DomainError("twist " + std::to_string(t) + " outside [-1/2, 1/2]");
    return Twist(t == -0.5 ? 0.5 : t);
}

double sech(double x) {
    x = std::fabs(x);
    if (x > 20.0) {
        double e = std::exp(-x);
        return 2.0 * e / (1.0 + e * e);
    }
    return 1.0 / std::cosh(x);
}

double csch(double x) {
    if (x > 20.0) {
        double e = std::exp(-x);
        return 2.0 * e / (-std::expm1(-2.0 * x));
    }
    return 1.0 / std::sinh(x);
}

double collar_width(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("collar_width needs finite x > 0, got " + std::to_string(x));
    return std::asinh(csch(x));
}

double eta_length(double l_alpha, double l_gamma) {
    if (!(l_alpha > 0.0) || !std::isfinite(l_alpha))
        throw DomainError("eta_length: l_alpha must be finite and > 0");
    if (!(l_gamma > 0.0)) throw DomainError("eta_length: l_gamma must be > 0 or inf");
    double tg = l_gamma == kInf ? 1.0 : std::tanh(l_gamma);
    return std::atanh(tg * sech(0.5 * l_alpha));
}

double ortho_between_boundaries(double l_alpha, double l_alpha1, double l_alpha2) {
    if (!(l_alpha > 0.0) || !std::isfinite(l_alpha) || !(l_alpha1 > 0.0) || !std::isfinite(l_alpha1))
        throw DomainError("ortho_between_boundaries: l_alpha, l_alpha1 must be finite and > 0");
    if (!(l_alpha2 >= 0.0) || !std::isfinite(l_alpha2))
        throw DomainError("ortho_between_boundaries: l_alpha2 must be finite and >= 0");
    double a = 0.5 * l_alpha, a1 = 0.5 * l_alpha1, a2 = 0.5 * l_alpha2;
    double c = 1.0 / (std::tanh(a1) * std::tanh(a)) + std::cosh(a2) * csch(a1) * csch(a);
    return std::acosh(c);
}

double flute_ortho_delta(double l_n, double l_next) {
    return collar_width(0.5 * l_n) + collar_width(0.5 * l_next);
}

double saccheri_summit(double l_delta, double sigma) {
    if (!(l_delta > 0.0) || !std::isfinite(l_delta))
        throw DomainError("saccheri_summit: l_delta must be finite and > 0");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("saccheri_summit: sigma must be >= 0");
    double sh = std::sinh(0.5 * l_delta);
    if (sigma < 600.0) return 2.0 * std::asinh(sh * std::cosh(0.5 * sigma));
    // asinh(y) = log(2y) + O(1/y^2) once y is astronomically large
    double log_y = std::log(sh) + 0.5 * sigma + std::log1p(std::exp(-sigma)) - std::log(2.0);
    return 2.0 * (log_y + std::log(2.0));
}

}  // namespace parabolic
