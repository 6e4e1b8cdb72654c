#pragma once

#include <functional>
#include <vector>

namespace parabolic {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
};

// Adaptive Simpson on [a, b]. Throws NumericError naming the offending subinterval
// when the integrand is non-finite or the depth cap is hit without convergence.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double rel_tol = 1e-8, int max_depth = 40);

// Splits [a, b] at the given breakpoints and integrates each piece with adaptive Simpson
// after the substitution x = a + (b - a)(3u^2 - 2u^3), which smooths square-root
// behaviour at piece endpoints.
QuadResult integrate_pieces(const std::function<double(double)>& f, double a, double b,
                            const std::vector<double>& breakpoints, double rel_tol = 1e-8, int max_depth = 40);

// Pairwise (cascade) summation in left-to-right order.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace parabolic
