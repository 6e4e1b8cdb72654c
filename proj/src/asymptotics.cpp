#include "parabolic/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "parabolic/errors.hpp"
#include "parabolic/quadrature.hpp"

namespace parabolic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool zero(double v) { return std::fabs(v) <= kExponentTol; }

Growth inexact() {
    Growth g;
    g.exact = false;
    return g;
}

int sign_of(double v) { return zero(v) ? 0 : (v > 0 ? 1 : -1); }

// asymptotics of sum_{k <= m} [P(k) - Q(k - delta)] for log-affine P, Q
Growth difference_sum(const LogAffine& p, const LogAffine& q, double delta) {
    Growth g;
    double a = p.log_coef() - q.log_coef();
    double b = p.loglog_coef() - q.loglog_coef();
    double c = p.c - q.c;
    if (!zero(a)) {
        g.super = a;
    } else if (!zero(b)) {
        g.super = b;
    } else if (!zero(c)) {
        g.lin = c;
    } else {
        for (const auto& t : p.logs) g.log += t.coef * t.shift;
        for (const auto& t : q.logs) g.log -= t.coef * (t.shift - delta);
        for (const auto& t : p.loglogs) g.loglog += t.coef * t.shift;
        for (const auto& t : q.loglogs) g.loglog -= t.coef * (t.shift - delta);
    }
    return g;
}

std::optional<LogAffine> as_log_affine(const SequenceSpec& s) {
    if (auto* l = std::get_if<LogAffine>(&s.kind)) return *l;
    if (auto* c = std::get_if<Constant>(&s.kind)) {
        LogAffine l;
        l.c = c->v;
        return l;
    }
    return std::nullopt;
}

const SequenceSpec& strip_prefix(const SequenceSpec& s) {
    if (auto* p = std::get_if<Prefix>(&s.kind)) return strip_prefix(*p->tail);
    return s;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

Growth Growth::operator+(const Growth& o) const {
    return {super + o.super, lin + o.lin, log + o.log, loglog + o.loglog, logloglog + o.logloglog, exact && o.exact};
}

Growth Growth::operator-(const Growth& o) const { return *this + o * -1.0; }

Growth Growth::operator*(double k) const {
    return {super * k, lin * k, log * k, loglog * k, logloglog * k, exact};
}

bool Growth::is_bounded() const {
    return exact && zero(super) && zero(lin) && zero(log) && zero(loglog) && zero(logloglog);
}

std::string Growth::describe() const {
    if (!exact) return "unstructured";
    std::ostringstream os;
    os.precision(10);
    bool any = false;
    auto put = [&](double v, const char* name) {
        if (zero(v)) return;
        os << (any ? " + " : "") << v << " " << name;
        any = true;
    };
    put(super, "[superlinear]");
    put(lin, "n");
    put(log, "ln n");
    put(loglog, "lnln n");
    put(logloglog, "lnlnln n");
    if (!any) os << "O(1)";
    return os.str();
}

int compare(const Growth& a, const Growth& b) {
    for (double d : {a.super - b.super, a.lin - b.lin, a.log - b.log, a.loglog - b.loglog, a.logloglog - b.logloglog})
        if (int s = sign_of(d)) return s;
    return 0;
}

Growth max(const Growth& a, const Growth& b) {
    Growth g = compare(a, b) >= 0 ? a : b;
    g.exact = a.exact && b.exact;
    return g;
}

std::vector<Growth> branch_growth(const SequenceSpec& spec) {
    return std::visit(overloaded{
                          [](const LogAffine& l) {
                              Growth g;
                              g.log = l.log_coef();
                              g.loglog = l.loglog_coef();
                              return std::vector<Growth>{g};
                          },
                          [](const Constant&) { return std::vector<Growth>{Growth{}}; },
                          [](const Power& p) {
                              Growth g;
                              if (p.base > 1.0) g.super = p.coef;
                              else if (p.base < 1.0 || p.p <= 0.0) return std::vector<Growth>{g};
                              else if (p.p > 1.0) g.super = p.coef;
                              else if (p.p == 1.0) g.lin = p.coef;
                              else g = inexact();
                              return std::vector<Growth>{g};
                          },
                          [](const Alternating& a) {
                              auto e = branch_growth(*a.even), o = branch_growth(*a.odd);
                              if (e.size() != 1 || o.size() != 1) return std::vector<Growth>{inexact()};
                              return std::vector<Growth>{e[0], o[0]};
                          },
                          [](const Prefix& p) { return branch_growth(*p.tail); },
                      },
                      spec.kind);
}

std::vector<Growth> branch_log_growth(const SequenceSpec& spec) {
    return std::visit(overloaded{
                          [](const LogAffine& l) {
                              Growth g;
                              double a = l.log_coef(), b = l.loglog_coef();
                              if (a > kExponentTol) g.loglog = 1.0;
                              else if (zero(a) && b > kExponentTol) g.logloglog = 1.0;
                              else if (!(zero(a) && zero(b) && l.c > 0.0)) g = inexact();
                              return std::vector<Growth>{g};
                          },
                          [](const Constant&) { return std::vector<Growth>{Growth{}}; },
                          [](const Power& p) {
                              Growth g;
                              if (!(p.coef > 0.0 && p.base > 0.0)) return std::vector<Growth>{inexact()};
                              g.log = p.p;
                              g.lin = std::log(p.base);
                              return std::vector<Growth>{g};
                          },
                          [](const Alternating& a) {
                              auto e = branch_log_growth(*a.even), o = branch_log_growth(*a.odd);
                              if (e.size() != 1 || o.size() != 1) return std::vector<Growth>{inexact()};
                              return std::vector<Growth>{e[0], o[0]};
                          },
                          [](const Prefix& p) { return branch_log_growth(*p.tail); },
                      },
                      spec.kind);
}

std::vector<Growth> sigma_growth(const SequenceSpec& spec) {
    const SequenceSpec& tail = strip_prefix(spec);
    if (auto l = as_log_affine(tail); l && !std::holds_alternative<Alternating>(tail.kind)) {
        // sigma_n = l_n / 2 + O(1) for slowly varying l
        Growth g;
        g.log = l->log_coef() / 2;
        g.loglog = l->loglog_coef() / 2;
        return {g, g};
    }
    if (auto* p = std::get_if<Power>(&tail.kind)) {
        Growth g;
        if (p->base == 1.0 && p->p == 1.0) g.lin = p->coef;
        else if (p->base == 1.0 && p->p == 0.0) g = Growth{};
        else g = inexact();
        return {g, g};
    }
    if (auto* a = std::get_if<Alternating>(&tail.kind)) {
        auto e = as_log_affine(*a->even), o = as_log_affine(*a->odd);
        if (e && o) {
            // sigma_{2m} - sigma_{2m-2} = E(m) - O(m-1), sigma_{2m+1} - sigma_{2m-1} = O(m) - E(m)
            return {difference_sum(*e, *o, 1.0), difference_sum(*o, *e, 0.0)};
        }
    }
    return {inexact(), inexact()};
}

bool tends_to_zero(const SequenceSpec& spec) {
    return std::visit(overloaded{
                          [](const Power& p) { return p.base < 1.0 || (p.base == 1.0 && p.p < 0.0); },
                          [](const Alternating& a) { return tends_to_zero(*a.even) && tends_to_zero(*a.odd); },
                          [](const Prefix& p) { return tends_to_zero(*p.tail); },
                          [](const auto&) { return false; },
                      },
                      spec.kind);
}

SeriesVerdict bertrand(const Growth& g) {
    if (!g.exact) throw DomainError("Bertrand test needs an exact growth");
    for (double v : {g.super, g.lin})
        if (int s = sign_of(v)) return s > 0 ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
    for (double v : {g.log, g.loglog, g.logloglog})
        if (int s = sign_of(v - 1.0)) return s > 0 ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
    return SeriesVerdict::Diverges;
}

SeriesBehavior classify_series(const TermFamily& terms) {
    SeriesBehavior out;
    bool exact = !terms.branches.empty();
    for (const auto& g : terms.branches) exact = exact && g.exact;
    if (exact) {
        out.method = SeriesMethod::BertrandExact;
        // the slowest-decaying branch decides
        std::size_t best = 0;
        for (std::size_t b = 1; b < terms.branches.size(); ++b)
            if (compare(terms.branches[b], terms.branches[best]) < 0) best = b;
        const Growth& g = terms.branches[best];
        out.verdict = bertrand(g);
        out.p = g.log;
        out.q = g.loglog;
        out.r = g.logloglog;
        std::ostringstream os;
        os << "terms ~ exp(-(" << g.describe() << "))";
        if (terms.branches.size() > 1) os << " on branch " << best << " of " << terms.branches.size();
        out.detail = os.str();
        return out;
    }
    if (!terms.term) throw DomainError("unstructured series needs a numeric term");
    out.method = SeriesMethod::PartialSumHeuristic;
    std::vector<double> a(kHeuristicTerms);
    for (long n = 1; n <= kHeuristicTerms; ++n) a[n - 1] = terms.term(n);
    double partial = pairwise_sum(a);
    // least-squares slope of ln a_n against ln n per parity class, tail n in [1e3, 1e6]
    double p_hat = 1e300;
    for (int parity = 0; parity < 2; ++parity) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (int k = 0; k <= 64; ++k) {
            long n = static_cast<long>(std::llround(std::pow(10.0, 3.0 + 3.0 * k / 64)));
            if ((n & 1) != parity) --n;
            double v = a[n - 1];
            if (!(v > 0.0) || !std::isfinite(v)) continue;
            double x = std::log(static_cast<double>(n)), y = std::log(v);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++cnt;
        }
        if (cnt < 8) continue;
        double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        p_hat = std::min(p_hat, -slope);
    }
    out.p = p_hat;
    if (p_hat == 1e300) out.verdict = SeriesVerdict::Converges;  // terms vanish numerically
    else if (p_hat < 0.9) out.verdict = SeriesVerdict::Diverges;
    else if (p_hat > 1.1) out.verdict = SeriesVerdict::Converges;
    else out.verdict = SeriesVerdict::Inconclusive;
    out.detail = "partial sum S_" + std::to_string(kHeuristicTerms) + " = " + fmt(partial) +
                 ", fitted decay exponent " + fmt(p_hat);
    return out;
}

std::string to_string(SeriesVerdict v) {
    switch (v) {
        case SeriesVerdict::Diverges: return "Diverges";
        case SeriesVerdict::Converges: return "Converges";
        case SeriesVerdict::Inconclusive: return "Inconclusive";
    }
    return "";
}

std::string to_string(SeriesMethod m) {
    return m == SeriesMethod::BertrandExact ? "bertrand-exact" : "partial-sum-heuristic";
}

}  // namespace parabolic
