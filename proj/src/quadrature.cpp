#include "parabolic/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parabolic/errors.hpp"

namespace parabolic {

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 64) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t m = n / 2;
    return pairwise_sum(v, m) + pairwise_sum(v + m, n - m);
}

namespace {

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;
    std::vector<double> values, errors;

    double eval(double x, double a, double b) {
        double y = f(x);
        if (!std::isfinite(y)) {
            std::ostringstream os;
            os.precision(17);
            os << "integrand not finite at x = " << x << " in subinterval [" << a << ", " << b << "]";
            throw NumericError(os.str());
        }
        return y;
    }

    void recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = eval(lm, a, b), frm = eval(rm, a, b);
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        double diff = left + right - whole;
        if (std::fabs(diff) <= tol || m <= a || b <= m) {
            values.push_back(left + right + diff / 15.0);
            errors.push_back(std::fabs(diff) / 15.0);
            return;
        }
        if (depth >= max_depth) {
            std::ostringstream os;
            os.precision(17);
            os << "adaptive Simpson hit depth cap " << max_depth << " on subinterval [" << a << ", " << b << "]";
            throw NumericError(os.str());
        }
        recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
        recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol,
                            int max_depth) {
    if (!(b > a)) return {};
    Simpson s{f, max_depth, {}, {}};
    constexpr int panels = 16;
    std::vector<double> x(2 * panels + 1), y(2 * panels + 1);
    for (int i = 0; i <= 2 * panels; ++i) {
        x[i] = a + (b - a) * i / (2.0 * panels);
        y[i] = s.eval(x[i], a, b);
    }
    std::vector<double> coarse(panels);
    for (int p = 0; p < panels; ++p)
        coarse[p] = (x[2 * p + 2] - x[2 * p]) / 6.0 * (y[2 * p] + 4.0 * y[2 * p + 1] + y[2 * p + 2]);
    double scale = 0.0;
    for (double c : coarse) scale += std::fabs(c);
    double tol = rel_tol * scale / panels;
    if (tol == 0.0) tol = rel_tol * 1e-300;
    for (int p = 0; p < panels; ++p)
        s.recurse(x[2 * p], x[2 * p + 2], y[2 * p], y[2 * p + 1], y[2 * p + 2], coarse[p], tol, 1);
    return {pairwise_sum(s.values), pairwise_sum(s.errors)};
}

QuadResult integrate_pieces(const std::function<double(double)>& f, double a, double b,
                            const std::vector<double>& breakpoints, double rel_tol, int max_depth) {
    std::vector<double> cuts{a};
    std::vector<double> inner;
    for (double c : breakpoints)
        if (c > a && c < b) inner.push_back(c);
    std::sort(inner.begin(), inner.end());
    for (double c : inner)
        if (c - cuts.back() > 1e-12 * (b - a)) cuts.push_back(c);
    if (b - cuts.back() <= 1e-12 * (b - a) && cuts.size() > 1) cuts.pop_back();
    cuts.push_back(b);
    std::vector<double> values, errors;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], w = cuts[i + 1] - cuts[i];
        auto g = [&](double u) {
            double x = lo + w * u * u * (3.0 - 2.0 * u);
            double y = f(x);
            if (!std::isfinite(y)) {
                std::ostringstream os;
                os.precision(17);
                os << "integrand not finite at x = " << x << " in subinterval [" << lo << ", " << cuts[i + 1] << "]";
                throw NumericError(os.str());
            }
            return y * 6.0 * w * u * (1.0 - u);
        };
        QuadResult r;
        try {
            r = adaptive_simpson(g, 0.0, 1.0, rel_tol, max_depth);
        } catch (const NumericError& e) {
            std::ostringstream os;
            os.precision(17);
            os << e.what() << " (substituted variable; subinterval [" << lo << ", " << cuts[i + 1] << "] in x)";
            throw NumericError(os.str());
        }
        values.push_back(r.value);
        errors.push_back(r.error);
    }
    return {pairwise_sum(values), pairwise_sum(errors)};
}

}  // namespace parabolic
