#include "parabolic/classifier.hpp"

#include <cmath>
#include <optional>
#include <memory>
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

using Branches = std::vector<Growth>;

Branches scale(Branches b, double k) {
    for (auto& g : b) g = g * k;
    return b;
}

// Re-express a one-branch growth in the half index m (n = 2m or 2m + 1).
Branches widen(const Branches& b, std::size_t k) {
    if (b.size() == k) return b;
    if (b.size() == 1 && k == 2) {
        Growth g = b[0];
        g.lin *= 2.0;
        return {g, g};
    }
    Growth g;
    g.exact = false;
    return Branches(k, g);
}

Branches combine(const Branches& a, const Branches& b, bool take_max) {
    std::size_t k = std::max(a.size(), b.size());
    Branches x = widen(a, k), y = widen(b, k), out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = take_max ? max(x[i], y[i]) : x[i] + y[i];
    return out;
}

Branches constant_branch(Growth g) { return {g}; }

Growth log_n(double p) {
    Growth g;
    g.log = p;
    return g;
}

// exp(-kappa l_n)
Branches kappa_length(const SequenceSpec& l, double kappa) { return scale(branch_growth(l), kappa); }

// growth of -ln atan(sinh eps_n)
Branches neg_log_collar_width(const SequenceSpec& eps) {
    if (tends_to_zero(eps)) return scale(branch_log_growth(eps), -1.0);
    bool bounded_below = std::visit(overloaded{
                                        [](const Constant& c) { return c.v > 0; },
                                        [](const LogAffine& l) {
                                            return l.log_coef() > kExponentTol ||
                                                   (std::fabs(l.log_coef()) <= kExponentTol &&
                                                    l.loglog_coef() >= 0.0);
                                        },
                                        [](const Power& p) { return p.coef > 0 && (p.base > 1 || (p.base == 1 && p.p >= 0)); },
                                        [](const auto&) { return false; },
                                    },
                                    eps.kind);
    Growth g;
    g.exact = bounded_below;
    return {g};
}

double safe_length(const SequenceSpec& s, long n) {
    double v = evaluate(s, n);
    return (std::isfinite(v) && v > 0) ? v : 0.0;
}

double abs_twist(const SequenceSpec& t, long n) { return std::fabs(twist_term(t, n)); }

std::optional<double> constant_abs_twist(const SequenceSpec& t) {
    if (auto* c = std::get_if<Constant>(&t.kind)) return std::fabs(Twist::checked(c->v).value());
    return std::nullopt;
}

// exp(-(1 - |t_n|) l_n / 2)
TermFamily twisted_terms(const SequenceSpec& l, const SequenceSpec& t) {
    TermFamily f;
    if (auto c = constant_abs_twist(t)) {
        f.branches = kappa_length(l, (1.0 - *c) / 2.0);
    } else {
        Growth g;
        g.exact = false;
        f.branches = {g};
    }
    f.term = [l, t](long n) { return std::exp(-(1.0 - abs_twist(t, n)) * safe_length(l, n) / 2.0); };
    return f;
}

Verdict make(VerdictKind k, const std::string& id, SeriesBehavior ev,
             NotParabolicReason r = NotParabolicReason::None) {
    Verdict v;
    v.kind = k;
    v.reason = r;
    v.criterion = id;
    v.evidence = std::move(ev);
    return v;
}

std::string behaviour(const SeriesBehavior& s) {
    return to_string(s.verdict) + " (" + to_string(s.method) + "; " + s.detail + ")";
}

// Parabolic on divergence, Unknown otherwise.
Verdict sufficient(const std::string& id, const TermFamily& f, const std::string& what) {
    SeriesBehavior s = classify_series(f);
    Verdict v = make(s.verdict == SeriesVerdict::Diverges ? VerdictKind::Parabolic : VerdictKind::Unknown, id, s);
    v.trace.push_back(what + ": " + behaviour(s));
    return v;
}

Verdict bounded_lengths() {
    SeriesBehavior s;
    s.verdict = SeriesVerdict::Diverges;
    s.method = SeriesMethod::BertrandExact;
    s.detail = "lengths bounded along an infinite subsequence";
    Verdict v = make(VerdictKind::Parabolic, "bounded-lengths", s);
    v.trace.push_back(s.detail);
    return v;
}

}  // namespace

std::string Verdict::label() const {
    switch (kind) {
        case VerdictKind::Parabolic: return "Parabolic";
        case VerdictKind::Unknown: return "Unknown";
        case VerdictKind::NotParabolic:
            return reason == NotParabolicReason::Incomplete ? "NotParabolic(Incomplete)"
                                                            : "NotParabolic(SeriesConvergesUnderIff)";
    }
    return "";
}

const std::vector<CriterionInfo>& criteria() {
    static const std::vector<CriterionInfo> table = {
        {"bounded-lengths", CriterionKind::Sufficient,
         "lengths bounded above along an infinite subsequence => parabolic"},
        {"thm-zero-twists", CriterionKind::Iff, "zero-twist tight flute: parabolic <=> sum e^{-l_n/2} = inf"},
        {"thm-half-twists", CriterionKind::Iff,
         "half-twist tight flute, concave lengths: parabolic <=> sum e^{-l_n/4} = inf"},
        {"thm-flute-twist", CriterionKind::Sufficient, "tight flute: sum e^{-(1-|t_n|) l_n/2} = inf => parabolic"},
        {"thm-half-twist-incomplete", CriterionKind::Incompleteness,
         "half-twist tight flute: sum e^{-sigma_n/2} < inf => incomplete"},
        {"thm-biinfinite-flute", CriterionKind::Sufficient,
         "bi-infinite flute: sum 1/(e^{(1-|t_n|) l_n/2} + e^{(1-|t_-n|) l_-n/2}) = inf => parabolic"},
        {"thm-infinite-genus", CriterionKind::Sufficient,
         "Loch-Ness monster with l(beta_n) <= M: sum e^{-(1-|t_n|) l_n/2} = inf => parabolic"},
        {"thm-ladder", CriterionKind::Sufficient,
         "ladder with l(beta_n) <= M: sum 1/(e^{(1-|t_n|) l_n/2} + e^{(1-|t_-n|) l_-n/2}) = inf => parabolic"},
        {"thm-general-parabolic", CriterionKind::Sufficient,
         "sum 1/sum_alpha max{e^{l/2}/l(gamma), e^{l/2}, 1/l} = inf => parabolic"},
        {"thm-cantor", CriterionKind::Sufficient,
         "Cantor tree: sum 1/(2^n l_n e^{l_n/2}) = inf (e.g. l <= C n/2^n) => parabolic"},
        {"thm-bounded-boundary", CriterionKind::Sufficient,
         "constant |d0 X_n|, common twist: sum e^{-(1-|t_n|) L_n/2} = inf => parabolic"},
        {"cor-twist-exhaustion", CriterionKind::Sufficient,
         "sum 1/(|d0 X_n| e^{(1-tau_n) L_n/2}) = inf => parabolic"},
        {"prop-standard-collars", CriterionKind::Sufficient,
         "sum 1/sum_alpha l(alpha) e^{l(alpha)/2} = inf => parabolic"},
        {"thm-cover-z", CriterionKind::Sufficient,
         "Z cover, single curve: sum e^{-(1-tau_n) L_n/2} = inf => parabolic"},
        {"thm-cover-z2-disjoint", CriterionKind::Sufficient,
         "Z^2 cover, disjoint curves: sum 1/(n e^{(1-tau_n) L_n/2}) = inf => parabolic"},
        {"thm-cover-z2-intersecting", CriterionKind::Sufficient,
         "Z^2 cover, intersecting curves: sum arctan(sinh eps_n)/l_n = inf => parabolic"},
        {"cor-cover-rank", CriterionKind::Sufficient,
         "Z^r cover, r >= 3 disjoint curves: sum 1/(n^{r-1} L_n e^{L_n/2}) = inf => parabolic"},
    };
    return table;
}

const CriterionInfo& criterion(const std::string& id) {
    for (const auto& c : criteria())
        if (c.id == id) return c;
    throw DomainError("unknown criterion id " + id);
}

Verdict classify_flute(const FluteSpec& spec) {
    spec.validate();
    if (has_bounded_subsequence(spec.lengths)) return bounded_lengths();
    const SequenceSpec& l = spec.lengths;

    if (spec.zero_twist()) {
        TermFamily f = twisted_terms(l, spec.twists);
        SeriesBehavior s = classify_series(f);
        std::string line = "sum e^{-l_n/2}: " + behaviour(s);
        Verdict v;
        if (s.method == SeriesMethod::BertrandExact) {
            v = s.verdict == SeriesVerdict::Diverges
                    ? make(VerdictKind::Parabolic, "thm-zero-twists", s)
                    : make(VerdictKind::NotParabolic, "thm-zero-twists", s, NotParabolicReason::SeriesConvergesUnderIff);
        } else {
            v = make(s.verdict == SeriesVerdict::Diverges ? VerdictKind::Parabolic : VerdictKind::Unknown,
                     "thm-flute-twist", s);
        }
        v.trace.push_back(line);
        return v;
    }

    if (spec.half_twist()) {
        TermFamily f = twisted_terms(l, spec.twists);
        SeriesBehavior s4 = classify_series(f);
        std::vector<std::string> trace{"sum e^{-l_n/4}: " + behaviour(s4)};
        ConcavityReport cc;
        try {
            cc = is_concave(l);
        } catch (const DomainError& e) {
            cc.verdict = Concavity::No;
            cc.reason = std::string("window check failed: ") + e.what();
        }
        trace.push_back("concavity: " + std::string(cc.verdict == Concavity::Yes ? "yes"
                                                    : cc.verdict == Concavity::No ? "no"
                                                                                 : "yes-on-window") +
                        (cc.witness ? " (witness n = " + std::to_string(cc.witness) + ")" : "") + ", " + cc.reason);
        if (cc.verdict == Concavity::Yes && s4.method == SeriesMethod::BertrandExact) {
            Verdict v = s4.verdict == SeriesVerdict::Diverges
                            ? make(VerdictKind::Parabolic, "thm-half-twists", s4)
                            : make(VerdictKind::NotParabolic, "thm-half-twists", s4,
                                   NotParabolicReason::SeriesConvergesUnderIff);
            v.trace = trace;
            return v;
        }
        if (s4.verdict == SeriesVerdict::Diverges) {
            Verdict v = make(VerdictKind::Parabolic, "thm-flute-twist", s4);
            v.trace = trace;
            return v;
        }
        // incompleteness test on sigma_n
        TermFamily sf;
        sf.branches = scale(sigma_growth(l), 0.5);
        auto sig = std::make_shared<std::vector<double>>();
        sf.term = [l, sig](long n) {
            if (sig->empty()) *sig = sigma_sequence(l, kHeuristicTerms);
            return std::exp(-(*sig)[n - 1] / 2.0);
        };
        SeriesBehavior ss;
        try {
            ss = classify_series(sf);
        } catch (const DomainError& e) {
            ss.verdict = SeriesVerdict::Inconclusive;
            ss.method = SeriesMethod::PartialSumHeuristic;
            ss.detail = e.what();
        }
        trace.push_back("sum e^{-sigma_n/2}: " + behaviour(ss));
        Verdict v;
        if (ss.method == SeriesMethod::BertrandExact && ss.verdict == SeriesVerdict::Converges) {
            v = make(VerdictKind::NotParabolic, "thm-half-twist-incomplete", ss, NotParabolicReason::Incomplete);
        } else {
            v = make(VerdictKind::Unknown, "thm-flute-twist", s4);
        }
        v.trace = trace;
        return v;
    }

    return sufficient("thm-flute-twist", twisted_terms(l, spec.twists), "sum e^{-(1-|t_n|) l_n/2}");
}

Verdict classify_cover(const AbelianCover& spec) {
    spec.validate();
    TermFamily f;
    std::string id, what;
    auto tau = constant_abs_twist(spec.min_twist);
    const SequenceSpec L = spec.max_length, T = spec.min_twist;
    switch (spec.config) {
        case CoverConfig::Single:
        case CoverConfig::DisjointPair: {
            if (spec.rank >= 3) {
                id = "cor-cover-rank";
                what = "sum 1/(n^{r-1} L_n e^{L_n/2})";
                f.branches = combine(constant_branch(log_n(spec.rank - 1.0)),
                                     combine(branch_log_growth(L), kappa_length(L, 0.5), false), false);
                int r = spec.rank;
                f.term = [L, r](long n) {
                    double x = safe_length(L, n);
                    return 1.0 / (std::pow(static_cast<double>(n), r - 1) * x * std::exp(x / 2));
                };
                break;
            }
            bool disjoint = spec.config == CoverConfig::DisjointPair;
            id = disjoint ? "thm-cover-z2-disjoint" : "thm-cover-z";
            what = disjoint ? "sum 1/(n e^{(1-tau_n) L_n/2})" : "sum e^{-(1-tau_n) L_n/2}";
            Branches g;
            if (tau) g = kappa_length(L, (1.0 - *tau) / 2.0);
            else g = {Growth{0, 0, 0, 0, 0, false}};
            if (disjoint) g = combine(constant_branch(log_n(1.0)), g, false);
            f.branches = g;
            f.term = [L, T, disjoint](long n) {
                double e = std::exp(-(1.0 - abs_twist(T, n)) * safe_length(L, n) / 2.0);
                return disjoint ? e / static_cast<double>(n) : e;
            };
            break;
        }
        case CoverConfig::IntersectingPair: {
            id = "thm-cover-z2-intersecting";
            what = "sum arctan(sinh eps_n)/l_n";
            const SequenceSpec E = spec.collar_width, C = spec.curve_length;
            f.branches = combine(branch_log_growth(C), neg_log_collar_width(E), false);
            f.term = [E, C](long n) {
                double c = safe_length(C, n);
                return c > 0 ? std::atan(std::sinh(evaluate(E, n))) / c : 0.0;
            };
            break;
        }
    }
    return sufficient(id, f, what);
}

Verdict classify_exhaustion(const ExhaustionSpec& spec, bool use_twists, HypothesisFlags asserted) {
    // twist-free sigma(R) ~ max{e^{l/2}, 1/l} when l(gamma) is bounded below
    auto sigma_growth_of = [](const SequenceSpec& l) {
        return combine(kappa_length(l, 0.5), scale(branch_log_growth(l), -1.0), true);
    };
    auto sigma_term = [](double l) { return std::max(std::exp(l / 2), 1.0 / l); };
    const SequenceSpec zero_twist = Constant{0.0};

    return std::visit(
        overloaded{
            [&](const FluteFamily& f) { return classify_flute(f.flute); },
            [&](const BiInfiniteFlute& f) {
                f.positive.validate();
                f.negative.validate();
                const SequenceSpec& tp = use_twists ? f.positive.twists : zero_twist;
                const SequenceSpec& tn = use_twists ? f.negative.twists : zero_twist;
                TermFamily a = twisted_terms(f.positive.lengths, tp), b = twisted_terms(f.negative.lengths, tn);
                TermFamily s;
                s.branches = combine(a.branches, b.branches, true);
                s.term = [a, b](long n) {
                    double x = a.term(n), y = b.term(n);
                    return x * y / (x + y);
                };
                return sufficient("thm-biinfinite-flute", s, "sum 1/(e^{x_n} + e^{y_n})");
            },
            [&](const LochNess& f) {
                if (!(f.beta_bound > 0)) throw DomainError("Loch-Ness needs M > 0");
                std::string hyp = "l(beta_n) <= M = " + std::to_string(f.beta_bound);
                Verdict v;
                if (use_twists) {
                    v = sufficient("thm-infinite-genus", twisted_terms(f.lengths, f.twists),
                                   "sum e^{-(1-|t_n|) l_n/2}");
                } else {
                    TermFamily s;
                    s.branches = sigma_growth_of(f.lengths);
                    SequenceSpec l = f.lengths;
                    s.term = [l, sigma_term](long n) { return 1.0 / sigma_term(safe_length(l, n)); };
                    v = sufficient("thm-general-parabolic", s, "sum 1/sigma(R_n)");
                }
                v.hypotheses_assumed.push_back(hyp);
                return v;
            },
            [&](const Ladder& f) {
                if (!(f.beta_bound > 0)) throw DomainError("ladder needs M > 0");
                std::string hyp = "l(beta_n) <= M = " + std::to_string(f.beta_bound);
                Verdict v;
                TermFamily s;
                if (use_twists) {
                    TermFamily a = twisted_terms(f.lengths, f.twists), b = twisted_terms(f.lengths_negative, f.twists_negative);
                    s.branches = combine(a.branches, b.branches, true);
                    s.term = [a, b](long n) {
                        double x = a.term(n), y = b.term(n);
                        return x * y / (x + y);
                    };
                    v = sufficient("thm-ladder", s, "sum 1/(e^{x_n} + e^{y_n})");
                } else {
                    s.branches = combine(sigma_growth_of(f.lengths), sigma_growth_of(f.lengths_negative), true);
                    SequenceSpec a = f.lengths, b = f.lengths_negative;
                    s.term = [a, b, sigma_term](long n) {
                        return 1.0 / (sigma_term(safe_length(a, n)) + sigma_term(safe_length(b, n)));
                    };
                    v = sufficient("thm-general-parabolic", s, "sum 1/(sigma(R_n) + sigma(R_-n))");
                }
                v.hypotheses_assumed.push_back(hyp);
                return v;
            },
            [&](const CantorTree& f) {
                TermFamily s;
                Growth two_n;
                two_n.lin = std::log(2.0);
                s.branches = combine(constant_branch(two_n),
                                     combine(branch_log_growth(f.level_lengths), kappa_length(f.level_lengths, 0.5), false),
                                     false);
                SequenceSpec l = f.level_lengths;
                s.term = [l](long n) {
                    double x = safe_length(l, n);
                    return std::exp(-static_cast<double>(n) * std::log(2.0)) / (x * std::exp(x / 2));
                };
                return sufficient("thm-cantor", s, "sum 1/(2^n l_n e^{l_n/2})");
            },
            [&](const BoundedBoundary& f) {
                if (!(f.k > 0 && f.p >= 0)) throw DomainError("bounded-boundary needs k > 0, p >= 0");
                SequenceSpec L = f.lengths;
                double k = f.k, p = f.p;
                if (use_twists) {
                    if (!(asserted.components_not_pants && asserted.uniform_distance_bound))
                        throw HypothesisError(
                            "twisted criterion needs asserted hypotheses: components of X_{n+1} - X_n are not pairs "
                            "of pants, and boundary distances are uniformly bounded below");
                    TermFamily t = twisted_terms(f.lengths, f.twists);
                    TermFamily s;
                    s.branches = combine(constant_branch(log_n(p)), t.branches, false);
                    s.term = [t, k, p](long n) { return t.term(n) / (k * std::pow(static_cast<double>(n), p)); };
                    Verdict v = sufficient(p == 0.0 ? "thm-bounded-boundary" : "cor-twist-exhaustion", s,
                                           "sum 1/(|d0 X_n| e^{(1-|t_n|) L_n/2})");
                    v.hypotheses_assumed = {"components of X_{n+1} - X_n are not pairs of pants",
                                            "boundary-to-interior distances uniformly bounded below"};
                    return v;
                }
                TermFamily s;
                s.branches = combine(constant_branch(log_n(p)),
                                     combine(branch_log_growth(L), kappa_length(L, 0.5), false), false);
                s.term = [L, k, p](long n) {
                    double x = safe_length(L, n);
                    return 1.0 / (k * std::pow(static_cast<double>(n), p) * x * std::exp(x / 2));
                };
                return sufficient("prop-standard-collars", s, "sum 1/(|d0 X_n| L_n e^{L_n/2})");
            },
            [&](const AbelianCover& f) { return classify_cover(f); },
        },
        spec.family);
}

std::vector<SweepRow> sweep_parameter_family(const std::vector<double>& as, const std::vector<double>& bs) {
    std::vector<SweepRow> rows;
    for (double a : as)
        for (double b : bs) {
            FluteSpec s{parameter_family_lengths(a, b), Constant{0.5}};
            rows.push_back({{{"a", a}, {"b", b}}, classify_flute(s)});
        }
    return rows;
}

std::vector<SweepRow> sweep_one_parameter(const std::vector<double>& ss) {
    std::vector<SweepRow> rows;
    for (double s : ss) {
        FluteSpec f{one_parameter_lengths(s), Constant{0.5}};
        rows.push_back({{{"s", s}}, classify_flute(f)});
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::vector<std::string>& param_names) {
    std::ostringstream os;
    for (const auto& p : param_names) os << p << ",";
    os << "verdict,criterion\n";
    os.precision(12);
    for (const auto& r : rows) {
        for (const auto& [name, value] : r.params) os << value << ",";
        os << r.verdict.label() << "," << r.verdict.criterion << "\n";
    }
    return os.str();
}

}  // namespace parabolic
