#include "parabolic/surfaces.hpp"

#include <cmath>
#include <sstream>

#include "parabolic/errors.hpp"
#include "parabolic/hypgeom.hpp"

namespace parabolic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string shifted(const char* fn, const LogTerm& t) {
    std::string s = num(t.coef) + " " + fn + "(n";
    if (t.shift > 0) s += " + " + num(t.shift);
    else if (t.shift < 0) s += " - " + num(-t.shift);
    return s + ")";
}

}  // namespace

double LogAffine::log_coef() const {
    double s = 0.0;
    for (const auto& t : logs) s += t.coef;
    return s;
}

double LogAffine::loglog_coef() const {
    double s = 0.0;
    for (const auto& t : loglogs) s += t.coef;
    return s;
}

LogAffine log_affine(double a, double b, double c, double n0, double n1) {
    LogAffine l;
    if (a != 0.0) l.logs.push_back({a, n0});
    if (b != 0.0) l.loglogs.push_back({b, n1});
    l.c = c;
    return l;
}

SpecPtr share(SequenceSpec s) { return std::make_shared<const SequenceSpec>(std::move(s)); }

SequenceSpec alternating(SequenceSpec even, SequenceSpec odd) {
    return Alternating{share(std::move(even)), share(std::move(odd))};
}

SequenceSpec prefix(std::vector<double> values, SequenceSpec tail) {
    return Prefix{std::move(values), share(std::move(tail))};
}

std::string SequenceSpec::describe() const {
    return std::visit(overloaded{
                          [](const LogAffine& l) {
                              std::string s;
                              for (const auto& t : l.logs) s += (s.empty() ? "" : " + ") + shifted("ln", t);
                              for (const auto& t : l.loglogs) s += (s.empty() ? "" : " + ") + shifted("lnln", t);
                              if (l.c != 0.0 || s.empty()) s += (s.empty() ? "" : " + ") + num(l.c);
                              return s;
                          },
                          [](const Constant& c) { return num(c.v); },
                          [](const Power& p) {
                              return num(p.coef) + " n^" + num(p.p) + " " + num(p.base) + "^n";
                          },
                          [](const Alternating& a) {
                              return "even m: " + a.even->describe() + "; odd m: " + a.odd->describe();
                          },
                          [](const Prefix& p) {
                              std::string s = "[";
                              for (std::size_t i = 0; i < p.values.size(); ++i) s += (i ? ", " : "") + num(p.values[i]);
                              return s + "] then " + p.tail->describe();
                          },
                      },
                      kind);
}

double evaluate(const SequenceSpec& spec, long n) {
    const double x = static_cast<double>(n);
    return std::visit(overloaded{
                          [&](const LogAffine& l) {
                              double s = l.c;
                              for (const auto& t : l.logs) {
                                  double y = x + t.shift;
                                  if (!(y > 0.0)) return std::nan("");
                                  s += t.coef * std::log(y);
                              }
                              for (const auto& t : l.loglogs) {
                                  double y = x + t.shift;
                                  if (!(y > 1.0)) return std::nan("");
                                  s += t.coef * std::log(std::log(y));
                              }
                              return s;
                          },
                          [](const Constant& c) { return c.v; },
                          [&](const Power& p) { return p.coef * std::pow(x, p.p) * std::pow(p.base, x); },
                          [&](const Alternating& a) {
                              return n % 2 == 0 ? evaluate(*a.even, n / 2) : evaluate(*a.odd, (n - 1) / 2);
                          },
                          [&](const Prefix& p) {
                              if (n >= 1 && static_cast<std::size_t>(n) <= p.values.size()) return p.values[n - 1];
                              return evaluate(*p.tail, n);
                          },
                      },
                      spec.kind);
}

double term(const SequenceSpec& spec, long n) {
    if (n < 1) throw DomainError("sequence index must be >= 1");
    double v = evaluate(spec, n);
    if (!std::isfinite(v) || v <= 0.0) {
        std::ostringstream os;
        os << "length at n = " << n << " is " << v << " (must be finite and positive): " << spec.describe();
        throw DomainError(os.str());
    }
    return v;
}

double twist_term(const SequenceSpec& spec, long n) {
    if (n < 1) throw DomainError("sequence index must be >= 1");
    double v = evaluate(spec, n);
    if (!std::isfinite(v)) throw DomainError("twist is not finite at n = " + std::to_string(n));
    return Twist::checked(v).value();
}

std::vector<double> sigma_sequence(const SequenceSpec& lengths, long count) {
    if (count < 1) throw DomainError("sigma_sequence needs N >= 1");
    std::vector<double> out;
    out.reserve(count);
    double hi = 0.0, lo = 0.0;
    for (long n = 1; n <= count; ++n) {
        double l = term(lengths, n);
        // two-sum of l and -hi, then fold in the previous compensation
        double s = l - hi;
        double bb = s - l;
        double e = (l - (s - bb)) + (-hi - bb);
        double t = e - lo;
        double nh = s + t;
        lo = t - (nh - s);
        hi = nh;
        out.push_back(hi);
    }
    return out;
}

ConcavityReport is_concave(const SequenceSpec& lengths, long window) {
    if (window < 3) throw DomainError("concavity window must be >= 3");
    ConcavityReport r;
    bool analytic = std::visit(overloaded{
                                   [](const LogAffine& l) {
                                       for (const auto& t : l.logs)
                                           if (t.coef < 0) return false;
                                       for (const auto& t : l.loglogs)
                                           if (t.coef < 0) return false;
                                       return true;
                                   },
                                   [](const Constant&) { return true; },
                                   [](const Power& p) { return p.coef > 0 && p.base == 1.0 && p.p >= 0 && p.p <= 1; },
                                   [](const auto&) { return false; },
                               },
                               lengths.kind);
    if (analytic) {
        r.verdict = Concavity::Yes;
        r.analytic = true;
        r.reason = "non-decreasing concave closed form";
        return r;
    }
    std::vector<double> l(window + 2);
    for (long n = 1; n <= window + 1; ++n) l[n] = term(lengths, n);
    auto tol = [&](long n) { return 1e-12 * std::fabs(l[n]); };
    for (long n = 1; n <= window; ++n) {
        if (l[n + 1] < l[n] - tol(n)) {
            r.witness = n;
            r.reason = "l_{n+1} < l_n";
            break;
        }
        double left = n == 1 ? 0.0 : l[n - 1];  // extension l_0 = 0
        if (2 * l[n] < l[n + 1] + left - tol(n)) {
            r.witness = n;
            r.reason = "2 l_n < l_{n+1} + l_{n-1}";
            break;
        }
    }
    r.verdict = r.witness ? Concavity::No : Concavity::YesOnWindow;
    if (!r.witness) r.reason = "checked on 1.." + std::to_string(window);
    return r;
}

bool has_bounded_subsequence(const SequenceSpec& spec) {
    return std::visit(overloaded{
                          [](const LogAffine& l) { return l.log_coef() == 0.0 && l.loglog_coef() == 0.0; },
                          [](const Constant&) { return true; },
                          [](const Power& p) { return p.base < 1.0 || (p.base == 1.0 && p.p <= 0.0); },
                          [](const Alternating& a) {
                              return has_bounded_subsequence(*a.even) || has_bounded_subsequence(*a.odd);
                          },
                          [](const Prefix& p) { return has_bounded_subsequence(*p.tail); },
                      },
                      spec.kind);
}

SequenceSpec parameter_family_lengths(double a, double b) {
    if (!(a > 0 && b > 0)) throw DomainError("X_{a,b} needs a, b > 0");
    LogAffine even;
    even.logs = {{a, 1.0}, {b, 0.0}};
    LogAffine odd;
    odd.logs = {{a + b, 1.0}};
    return prefix({a * std::log(2.0) / 2.0}, alternating(even, odd));
}

SequenceSpec one_parameter_lengths(double s) { return parameter_family_lengths(s, 2.0 * s); }

void FluteSpec::validate() const {
    if (auto* c = std::get_if<Constant>(&twists.kind)) {
        Twist::checked(c->v);
    } else {
        for (long n = 1; n <= 256; ++n) twist_term(twists, n);
    }
    // lengths only need to be positive eventually; early terms are checked on use
    for (long n : {1000L, 1000000L}) term(lengths, n);
}

std::optional<double> FluteSpec::constant_twist() const {
    if (auto* c = std::get_if<Constant>(&twists.kind)) return Twist::checked(c->v).value();
    return std::nullopt;
}

bool FluteSpec::zero_twist() const {
    auto t = constant_twist();
    return t && *t == 0.0;
}

bool FluteSpec::half_twist() const {
    auto t = constant_twist();
    return t && *t == 0.5;
}

void AbelianCover::validate() const {
    if (rank < 1) throw DomainError("cover rank must be >= 1");
    if (rank == 1 && config != CoverConfig::Single) throw DomainError("a rank 1 cover lifts a single curve");
    if (rank >= 2 && config == CoverConfig::Single) throw DomainError("single-curve covers have rank 1");
    if (rank >= 3 && config == CoverConfig::IntersectingPair)
        throw DomainError("intersecting-pair covers have rank 2");
    if (auto* c = std::get_if<Constant>(&min_twist.kind))
        if (!(c->v >= 0.0 && c->v <= 0.5)) throw DomainError("tau_n must lie in [0, 1/2]");
}

double AbelianCover::boundary_count(long n) const {
    switch (config) {
        case CoverConfig::Single: return 2.0;
        case CoverConfig::IntersectingPair: return 1.0;
        case CoverConfig::DisjointPair:
            return rank == 2 ? 4.0 * n : 2.0 * rank * std::pow(static_cast<double>(n), rank - 1);
    }
    return 0.0;
}

std::string ExhaustionSpec::family_name() const {
    return std::visit(overloaded{
                          [](const FluteFamily&) { return "flute"; },
                          [](const BiInfiniteFlute&) { return "bi-infinite-flute"; },
                          [](const LochNess&) { return "loch-ness"; },
                          [](const Ladder&) { return "ladder"; },
                          [](const CantorTree&) { return "cantor-tree"; },
                          [](const BoundedBoundary&) { return "bounded-boundary"; },
                          [](const AbelianCover&) { return "abelian-cover"; },
                      },
                      family);
}

std::vector<BoundaryCurve> boundary_data(const ExhaustionSpec& spec, long n) {
    if (n < 1) throw DomainError("exhaustion level must be >= 1");
    constexpr double kMaxCurves = 1 << 24;
    auto repeat = [&](double count, BoundaryCurve c) {
        if (count > kMaxCurves) throw DomainError("boundary list too large at level " + std::to_string(n));
        return std::vector<BoundaryCurve>(static_cast<std::size_t>(std::llround(count)), c);
    };
    return std::visit(
        overloaded{
            [&](const FluteFamily& f) {
                return std::vector<BoundaryCurve>{{term(f.flute.lengths, n), twist_term(f.flute.twists, n)}};
            },
            [&](const BiInfiniteFlute& f) {
                return std::vector<BoundaryCurve>{{term(f.positive.lengths, n), twist_term(f.positive.twists, n)},
                                                  {term(f.negative.lengths, n), twist_term(f.negative.twists, n)}};
            },
            [&](const LochNess& f) {
                return std::vector<BoundaryCurve>{{term(f.lengths, n), twist_term(f.twists, n)}};
            },
            [&](const Ladder& f) {
                return std::vector<BoundaryCurve>{{term(f.lengths, n), twist_term(f.twists, n)},
                                                  {term(f.lengths_negative, n), twist_term(f.twists_negative, n)}};
            },
            [&](const CantorTree& f) { return repeat(std::ldexp(1.0, static_cast<int>(std::min(n, 60L))), {term(f.level_lengths, n), 0.0}); },
            [&](const BoundedBoundary& f) {
                return repeat(std::max(1.0, std::round(f.k * std::pow(static_cast<double>(n), f.p))),
                              {term(f.lengths, n), twist_term(f.twists, n)});
            },
            [&](const AbelianCover& f) {
                if (f.config == CoverConfig::IntersectingPair)
                    return std::vector<BoundaryCurve>{{term(f.curve_length, n), 0.0}};
                return repeat(f.boundary_count(n), {term(f.max_length, n), twist_term(f.min_twist, n)});
            },
        },
        spec.family);
}

}  // namespace parabolic
