#pragma once

#include <stdexcept>
#include <string>

namespace parabolic {

// Argument outside the domain of a closed-form formula.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A theorem hypothesis (length threshold, collar constraint, asserted geometry) fails.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature or linear solver failed to converge.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grid too coarse for the domain; carries the largest acceptable mesh.
struct ResolutionError : std::runtime_error {
    ResolutionError(const std::string& what, double recommended)
        : std::runtime_error(what), recommended_h(recommended) {}
    double recommended_h;
};

// Malformed configuration document.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace parabolic
