#pragma once

#include "parabolic/graph_modulus.hpp"
#include "parabolic/hypgeom.hpp"

namespace parabolic {

struct HalfCollarSpec {
    double l_alpha = 0.0;
    double l_gamma = kInf;

    // Throws DomainError for malformed lengths, HypothesisError when l_gamma <= r(l_alpha/2).
    void validate() const;
    double eta() const { return eta_length(l_alpha, l_gamma); }
};

struct GluedCollarSpec {
    double l_alpha = 0.0;
    double l_gamma = kInf;
    double l_gamma_prime = kInf;
    Twist twist;

    void validate() const;
    HalfCollarSpec first() const { return {l_alpha, l_gamma}; }
    HalfCollarSpec second() const { return {l_alpha, l_gamma_prime}; }
};

// (1/l) arctan(1 / sinh(l/2)).
double standard_half_collar_lambda(double l);
// Opening angle theta of the sector model, tan theta = 1 / sinh(l/2).
double standard_sector_angle(double l);
// theta / ln(y2 / y1) with y2 / y1 = e^l, theta measured from the sector's radial sides.
double standard_half_collar_lambda_sector(double l);

// f = pi / (2l), g = (1/l) acos(cosh(l x) / cosh r(eta)), period 1 on [-1/2, 1/2].
PeriodicFunctionPair nonstandard_half_collar_graphs(const HalfCollarSpec& spec);
// f = pi / (2l) and the lower envelope pi/(2l) - e^{l|x|} / (2 l e^{r(eta)}) >= g.
PeriodicFunctionPair half_collar_envelope_graphs(const HalfCollarSpec& spec);

// Extremal-distance interval [1 / sandwich upper, 1 / vertical]; requires l_alpha > 1.
ModulusBounds nonstandard_half_collar_lambda(const HalfCollarSpec& spec);

PeriodicFunctionPair glued_collar_graphs(const GluedCollarSpec& spec);
// h1 = (1/l)(pi/2 + k1), h2 = (1/l)(pi/2 - k2) with the exponential envelopes k1, k2.
PeriodicFunctionPair glued_envelope_graphs(const GluedCollarSpec& spec);

// max{e^{r(eta) - |t| l / 2}, e^{r(eta') - |t| l / 2}}
double glued_analytic_proxy(const GluedCollarSpec& spec);
// Sum of the four explicit interval bounds on the envelope's vertical modulus.
double glued_four_interval_bound(const GluedCollarSpec& spec);
// max of the four exponentials whose sum the interval bound is built from.
double glued_four_term_max(const GluedCollarSpec& spec);

// Extremal-distance interval [1 / sandwich upper(h1, h2), 1 / vertical(f, g)]; requires l_alpha >= 2.
ModulusBounds glued_collar_lambda(const GluedCollarSpec& spec);

}  // namespace parabolic
