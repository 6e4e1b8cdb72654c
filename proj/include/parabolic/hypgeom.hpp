#pragma once

#include <limits>

namespace parabolic {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Length in the hyperbolic metric. +inf is allowed only for orthogeodesics
// running into a cusp.
class HyperbolicLength {
public:
    constexpr HyperbolicLength() = default;

    // Core geodesic length: finite and > 0.
    static HyperbolicLength core(double v);
    // Orthogeodesic length: > 0 or +inf.
    static HyperbolicLength ortho(double v);

    constexpr double value() const { return v_; }
    constexpr bool infinite() const { return v_ == kInf; }
    constexpr operator double() const { return v_; }

private:
    explicit constexpr HyperbolicLength(double v) : v_(v) {}
    double v_ = 0.0;
};

// Fenchel-Nielsen twist, stored in (-1/2, 1/2].
class Twist {
public:
    constexpr Twist() = default;
    // Reduces any real mod 1 into (-1/2, 1/2].
    static Twist normalize(double t);
    // Accepts only values already in [-1/2, 1/2]; -1/2 is mapped to 1/2.
    static Twist checked(double t);

    constexpr double value() const { return v_; }
    constexpr double magnitude() const { return v_ < 0 ? -v_ : v_; }
    // Representative in [0, 1).
    double unit_interval() const { return v_ < 0 ? v_ + 1.0 : v_; }

private:
    explicit constexpr Twist(double v) : v_(v) {}
    double v_ = 0.0;
};

// r(x) = arcsinh(1 / sinh x); half width of the standard collar of a geodesic of length 2x.
double collar_width(double x);

// tanh l(eta) = tanh l(gamma) / cosh(l(alpha)/2); l_gamma may be +inf.
double eta_length(double l_alpha, double l_gamma);

// Right-angled hexagon: length of the orthogeodesic from alpha to alpha1 in pants with
// third boundary alpha2 (0 encodes a puncture).
double ortho_between_boundaries(double l_alpha, double l_alpha1, double l_alpha2);

// Orthogeodesic between consecutive cores of a tight pants.
double flute_ortho_delta(double l_n, double l_next);

// Summit of a Saccheri quadrilateral with base l_delta and legs sigma/2.
double saccheri_summit(double l_delta, double sigma);

// 1 / cosh(x) and 1 / sinh(x) without overflow.
double sech(double x);
double csch(double x);

}  // namespace parabolic
