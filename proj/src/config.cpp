#include "parabolic/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "parabolic/errors.hpp"

namespace parabolic {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw ConfigError(where + ": " + msg); }

double as_number(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "expected a finite number");
    return v;
}

// Object reader that rejects keys nobody asked for.
class Fields {
public:
    Fields(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j.is_object()) fail(where_, "expected an object");
    }

    std::string path(const std::string& k) const { return where_ + "." + k; }
    bool has(const std::string& k) const { return j_.contains(k); }

    const Json& at(const std::string& k) {
        seen_.insert(k);
        if (!j_.contains(k)) fail(path(k), "missing required key");
        return j_.at(k);
    }
    const Json* opt(const std::string& k) {
        seen_.insert(k);
        auto it = j_.find(k);
        return it == j_.end() ? nullptr : &*it;
    }
    double number(const std::string& k) { return as_number(at(k), path(k)); }
    double number(const std::string& k, double def) {
        auto* v = opt(k);
        return v ? as_number(*v, path(k)) : def;
    }
    double length(const std::string& k, double def) {
        auto* v = opt(k);
        return v ? length_from_json(*v, path(k)) : def;
    }
    bool boolean(const std::string& k, bool def) {
        auto* v = opt(k);
        if (!v) return def;
        if (!v->is_boolean()) fail(path(k), "expected true or false");
        return v->get<bool>();
    }
    std::string text(const std::string& k) {
        const Json& v = at(k);
        if (!v.is_string()) fail(path(k), "expected a string");
        return v.get<std::string>();
    }
    SequenceSpec sequence(const std::string& k) { return sequence_from_json(at(k), path(k)); }
    SequenceSpec sequence(const std::string& k, SequenceSpec def) {
        auto* v = opt(k);
        return v ? sequence_from_json(*v, path(k)) : def;
    }
    int integer(const std::string& k, int def) {
        auto* v = opt(k);
        if (!v) return def;
        if (!v->is_number_integer()) fail(path(k), "expected an integer");
        return v->get<int>();
    }

    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) fail(path(it.key()), "unknown key");
    }

private:
    const Json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

std::vector<double> numbers(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

// [..] or {"from", "to", "step"}
std::vector<double> grid(const Json& j, const std::string& where) {
    if (j.is_array()) return numbers(j, where);
    Fields f(j, where);
    double from = f.number("from"), to = f.number("to"), step = f.number("step");
    f.done();
    if (!(step > 0)) fail(where + ".step", "must be > 0");
    std::vector<double> out;
    if (to < from) return out;
    long count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
    if (count > 1000000) fail(where, "grid too large");
    for (long i = 0; i < count; ++i) out.push_back(from + static_cast<double>(i) * step);
    return out;
}

std::vector<LogTerm> log_terms(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected [[coef, shift], ...]");
    std::vector<LogTerm> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto w = where + "[" + std::to_string(i) + "]";
        auto v = numbers(j[i], w);
        if (v.size() != 2) fail(w, "expected [coef, shift]");
        out.push_back({v[0], v[1]});
    }
    return out;
}

Json length_json(double v) { return std::isinf(v) ? Json("inf") : Json(v); }

FluteSpec flute_from(Fields& f) {
    FluteSpec s;
    s.lengths = f.sequence("lengths");
    s.twists = f.sequence("twists", Constant{0.0});
    return s;
}

FluteSpec flute_from_json(const Json& j, const std::string& where) {
    Fields f(j, where);
    FluteSpec s = flute_from(f);
    f.done();
    return s;
}

CoverConfig cover_config(const std::string& s, const std::string& where) {
    if (s == "single") return CoverConfig::Single;
    if (s == "disjoint_pair") return CoverConfig::DisjointPair;
    if (s == "intersecting_pair") return CoverConfig::IntersectingPair;
    fail(where, "expected single | disjoint_pair | intersecting_pair");
}

// Twists are checked on the first terms so a bad value is a config error, not a numeric one.
void check_twists(const SequenceSpec& t, const std::string& where) {
    try {
        for (long n = 1; n <= 256; ++n) twist_term(t, n);
    } catch (const DomainError& e) {
        fail(where, e.what());
    }
}

void validate_spec(const ExhaustionSpec& spec) {
    try {
        std::visit(
            [](const auto& fam) {
                using T = std::decay_t<decltype(fam)>;
                if constexpr (std::is_same_v<T, FluteFamily>) {
                    check_twists(fam.flute.twists, "$.twists");
                    fam.flute.validate();
                } else if constexpr (std::is_same_v<T, BiInfiniteFlute>) {
                    check_twists(fam.positive.twists, "$.positive.twists");
                    check_twists(fam.negative.twists, "$.negative.twists");
                    fam.positive.validate();
                    fam.negative.validate();
                } else if constexpr (std::is_same_v<T, LochNess>) {
                    check_twists(fam.twists, "$.twists");
                } else if constexpr (std::is_same_v<T, Ladder>) {
                    check_twists(fam.twists, "$.twists");
                    check_twists(fam.twists_negative, "$.twists_negative");
                } else if constexpr (std::is_same_v<T, BoundedBoundary>) {
                    check_twists(fam.twists, "$.twists");
                } else if constexpr (std::is_same_v<T, AbelianCover>) {
                    fam.validate();
                }
            },
            spec.family);
    } catch (const DomainError& e) {
        fail("$", e.what());
    }
}

double gap_mesh(const PeriodicFunctionPair& p) { return std::min(minimum_gap(p) / 6.0, 1.0 / 512); }

std::optional<PeriodicFunctionPair> collar_pair(const OracleRequest& r) {
    const Json& p = r.params;
    if (r.domain == "half_collar")
        return nonstandard_half_collar_graphs({p.at("l_alpha").get<double>(), p.at("l_gamma").get<double>()});
    if (r.domain == "glued_collar")
        return glued_collar_graphs({p.at("l_alpha").get<double>(), p.at("l_gamma").get<double>(),
                                    p.at("l_gamma2").get<double>(), Twist::checked(p.at("twist").get<double>())});
    return std::nullopt;
}

}  // namespace

Json parse_document(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

Json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

double length_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        fail(where, "expected a number or \"inf\"");
    }
    double v = as_number(j, where);
    if (!(v > 0)) fail(where, "length must be > 0");
    return v;
}

SequenceSpec sequence_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) return Constant{as_number(j, where)};
    Fields f(j, where);
    SequenceSpec out;
    if (f.has("logs") || f.has("loglogs")) {
        LogAffine l;
        if (auto* v = f.opt("logs")) l.logs = log_terms(*v, f.path("logs"));
        if (auto* v = f.opt("loglogs")) l.loglogs = log_terms(*v, f.path("loglogs"));
        l.c = f.number("c", 0.0);
        out = l;
    } else if (f.has("constant")) {
        out = Constant{f.number("constant")};
    } else if (f.has("log_affine")) {
        auto w = f.path("log_affine");
        const Json& v = f.at("log_affine");
        if (v.is_array()) {
            auto x = numbers(v, w);
            if (x.size() < 3 || x.size() > 5) fail(w, "expected [a, b, c, n0?, n1?]");
            out = log_affine(x[0], x[1], x[2], x.size() > 3 ? x[3] : 0.0, x.size() > 4 ? x[4] : 2.0);
        } else {
            Fields g(v, w);
            out = log_affine(g.number("a", 0.0), g.number("b", 0.0), g.number("c", 0.0), g.number("n0", 0.0),
                             g.number("n1", 2.0));
            g.done();
        }
    } else if (f.has("power")) {
        Fields g(f.at("power"), f.path("power"));
        out = Power{g.number("coef", 1.0), g.number("p", 0.0), g.number("base", 1.0)};
        g.done();
    } else if (f.has("alternating")) {
        Fields g(f.at("alternating"), f.path("alternating"));
        out = alternating(g.sequence("even"), g.sequence("odd"));
        g.done();
    } else if (f.has("prefix")) {
        Fields g(f.at("prefix"), f.path("prefix"));
        out = prefix(numbers(g.at("values"), g.path("values")), g.sequence("tail"));
        g.done();
    } else if (f.has("x_ab")) {
        Fields g(f.at("x_ab"), f.path("x_ab"));
        double a = g.number("a"), b = g.number("b");
        g.done();
        if (!(a > 0 && b > 0)) fail(f.path("x_ab"), "needs a, b > 0");
        out = parameter_family_lengths(a, b);
    } else if (f.has("x_s")) {
        double s = f.number("x_s");
        if (!(s > 0)) fail(f.path("x_s"), "needs s > 0");
        out = one_parameter_lengths(s);
    } else {
        fail(where, "unrecognised sequence");
    }
    f.done();
    return out;
}

ClassifyRequest classify_request_from_json(const Json& j) {
    Fields f(j, "$");
    ClassifyRequest r;
    std::string family = f.text("family");
    r.use_twists = f.boolean("use_twists", true);
    if (auto* h = f.opt("hypotheses")) {
        Fields g(*h, f.path("hypotheses"));
        r.hypotheses.components_not_pants = g.boolean("components_not_pants", false);
        r.hypotheses.uniform_distance_bound = g.boolean("uniform_distance_bound", false);
        g.done();
    }
    if (family == "flute") {
        r.spec.family = FluteFamily{flute_from(f)};
    } else if (family == "bi_infinite_flute") {
        r.spec.family = BiInfiniteFlute{flute_from_json(f.at("positive"), f.path("positive")),
                                        flute_from_json(f.at("negative"), f.path("negative"))};
    } else if (family == "loch_ness") {
        LochNess l;
        l.lengths = f.sequence("lengths");
        l.twists = f.sequence("twists", Constant{0.0});
        l.beta_bound = f.number("beta_bound", 1.0);
        r.spec.family = l;
    } else if (family == "ladder") {
        Ladder l;
        l.lengths = f.sequence("lengths");
        l.lengths_negative = f.sequence("lengths_negative");
        l.twists = f.sequence("twists", Constant{0.0});
        l.twists_negative = f.sequence("twists_negative", Constant{0.0});
        l.beta_bound = f.number("beta_bound", 1.0);
        r.spec.family = l;
    } else if (family == "cantor_tree") {
        r.spec.family = CantorTree{f.sequence("level_lengths")};
    } else if (family == "bounded_boundary") {
        BoundedBoundary b;
        b.k = f.number("k", 1.0);
        b.p = f.number("p", 0.0);
        b.lengths = f.sequence("lengths");
        b.twists = f.sequence("twists", Constant{0.0});
        r.spec.family = b;
    } else if (family == "abelian_cover") {
        AbelianCover c;
        c.rank = f.integer("rank", 1);
        if (f.has("config")) c.config = cover_config(f.text("config"), f.path("config"));
        c.max_length = f.sequence("max_length", Constant{1.0});
        c.min_twist = f.sequence("min_twist", Constant{0.0});
        c.collar_width = f.sequence("collar_width", Constant{1.0});
        c.curve_length = f.sequence("curve_length", Constant{1.0});
        r.spec.family = c;
    } else {
        fail("$.family",
             "expected flute | bi_infinite_flute | loch_ness | ladder | cantor_tree | bounded_boundary | abelian_cover");
    }
    f.done();
    validate_spec(r.spec);
    return r;
}

CollarRequest collar_request_from_json(const Json& j) {
    Fields f(j, "$");
    CollarRequest r;
    std::string mode = f.has("mode") ? f.text("mode") : "";
    r.l_alpha = f.length("l_alpha", 0.0);
    r.l_gamma = f.length("l_gamma", kInf);
    r.l_gamma2 = f.length("l_gamma2", kInf);
    r.twist = f.number("twist", 0.0);
    if (mode == "standard") r.mode = CollarMode::Standard;
    else if (mode == "nonstandard") r.mode = CollarMode::Nonstandard;
    else if (mode == "glued") r.mode = CollarMode::Glued;
    else if (mode.empty()) r.mode = (f.has("twist") || f.has("l_gamma2")) ? CollarMode::Glued : CollarMode::Nonstandard;
    else fail("$.mode", "expected standard | nonstandard | glued");
    f.done();
    if (!(r.l_alpha > 0) || std::isinf(r.l_alpha)) fail("$.l_alpha", "required, finite and > 0");
    try {
        Twist::checked(r.twist);
    } catch (const DomainError& e) {
        fail("$.twist", e.what());
    }
    return r;
}

Json collar_report(const CollarRequest& r) {
    Json out;
    const double ls = standard_half_collar_lambda(r.l_alpha);
    switch (r.mode) {
        case CollarMode::Standard:
            out["mode"] = "standard";
            out["l_alpha"] = r.l_alpha;
            out["lambda"] = ls;
            out["sector_angle"] = standard_sector_angle(r.l_alpha);
            break;
        case CollarMode::Nonstandard: {
            HalfCollarSpec s{r.l_alpha, r.l_gamma};
            ModulusBounds b = nonstandard_half_collar_lambda(s);
            out["mode"] = "nonstandard";
            out["l_alpha"] = r.l_alpha;
            out["l_gamma"] = length_json(r.l_gamma);
            out["eta"] = s.eta();
            out["extremal_distance"] = to_json(b);
            out["analytic_proxy"] = std::exp(-r.l_alpha / 2);
            out["standard_lambda"] = ls;
            out["lower_over_standard"] = b.lower / ls;
            break;
        }
        case CollarMode::Glued: {
            GluedCollarSpec s{r.l_alpha, r.l_gamma, r.l_gamma2, Twist::checked(r.twist)};
            ModulusBounds b = glued_collar_lambda(s);
            out["mode"] = "glued";
            out["l_alpha"] = r.l_alpha;
            out["l_gamma"] = length_json(r.l_gamma);
            out["l_gamma2"] = length_json(r.l_gamma2);
            out["twist"] = s.twist.value();
            out["extremal_distance"] = to_json(b);
            out["analytic_proxy"] = glued_analytic_proxy(s);
            out["four_interval_bound"] = glued_four_interval_bound(s);
            out["standard_pair_lambda"] = 2 * ls;
            out["lower_over_standard_pair"] = b.lower / (2 * ls);
            break;
        }
    }
    return out;
}

SweepRequest sweep_request_from_json(const Json& j) {
    Fields f(j, "$");
    SweepRequest r;
    r.family = f.text("family");
    if (r.family == "x_ab") {
        r.a = grid(f.at("a"), "$.a");
        r.b = grid(f.at("b"), "$.b");
    } else if (r.family == "x_s") {
        r.s = grid(f.at("s"), "$.s");
    } else {
        fail("$.family", "expected x_ab | x_s");
    }
    f.done();
    for (const auto* g : {&r.a, &r.b, &r.s})
        for (double v : *g)
            if (!(v > 0)) fail("$", "grid values must be > 0");
    return r;
}

std::vector<SweepRow> run_sweep(const SweepRequest& r) {
    if (r.family == "x_s") return sweep_one_parameter(r.s);
    return sweep_parameter_family(r.a, r.b);
}

std::vector<std::string> sweep_columns(const SweepRequest& r) {
    if (r.family == "x_s") return {"s"};
    return {"a", "b"};
}

OracleRequest oracle_request_from_json(const Json& j) {
    Fields f(j, "$");
    OracleRequest r;
    r.domain = f.text("domain");
    if (auto* h = f.opt("h")) {
        r.h = as_number(*h, "$.h");
        if (!(*r.h > 0)) fail("$.h", "must be > 0");
    }
    r.options.levels = f.integer("levels", r.options.levels);
    if (r.options.levels < 1 || r.options.levels > 4) fail("$.levels", "expected 1..4");
    r.options.cg_tol = f.number("cg_tol", r.options.cg_tol);
    if (!(r.options.cg_tol > 0 && r.options.cg_tol < 1)) fail("$.cg_tol", "expected a value in (0, 1)");
    r.options.max_iter = f.integer("max_iter", r.options.max_iter);
    if (auto* p = f.opt("preconditioner")) {
        std::string s = p->is_string() ? p->get<std::string>() : "";
        if (s == "multigrid") r.options.preconditioner = Preconditioner::Multigrid;
        else if (s == "jacobi") r.options.preconditioner = Preconditioner::Jacobi;
        else if (s == "none") r.options.preconditioner = Preconditioner::None;
        else fail("$.preconditioner", "expected multigrid | jacobi | none");
    }
    Json& p = r.params;
    p = Json::object();
    auto need = [&](const char* k) { p[k] = f.number(k); };
    auto length = [&](const char* k) { p[k] = f.length(k, kInf); };
    if (r.domain == "rectangle") {
        need("width");
        need("height");
    } else if (r.domain == "annulus") {
        need("r1");
        need("r2");
    } else if (r.domain == "sector") {
        need("r1");
        need("r2");
        need("theta");
        p["phi0"] = f.number("phi0", 0.0);
    } else if (r.domain == "maskit") {
        need("l");
    } else if (r.domain == "comb") {
        need("epsilon");
    } else if (r.domain == "half_collar") {
        need("l_alpha");
        length("l_gamma");
    } else if (r.domain == "glued_collar") {
        need("l_alpha");
        length("l_gamma");
        length("l_gamma2");
        p["twist"] = f.number("twist", 0.0);
    } else {
        fail("$.domain", "expected rectangle | annulus | sector | maskit | comb | half_collar | glued_collar");
    }
    f.done();
    for (auto it = p.begin(); it != p.end(); ++it)
        if (it.key() != "phi0" && it.key() != "twist" && !(it.value().get<double>() > 0))
            fail("$." + it.key(), "must be > 0");
    try {
        if (auto pair = collar_pair(r)) (void)pair;
    } catch (const DomainError& e) {
        fail("$", e.what());
    }
    return r;
}

GridDomain build_domain(const OracleRequest& r) {
    const Json& p = r.params;
    auto num = [&](const char* k) { return p.at(k).get<double>(); };
    double h = r.h.value_or(0.0);
    if (r.domain == "rectangle") return rectangle_domain(num("width"), num("height"), h > 0 ? h : 1.0 / 64);
    if (r.domain == "annulus") return annulus_domain(num("r1"), num("r2"), h > 0 ? h : 1.0 / 128);
    if (r.domain == "sector")
        return sector_domain(num("r1"), num("r2"), num("phi0"), num("theta"), h > 0 ? h : 1.0 / 128);
    if (r.domain == "maskit") return maskit_sector_domain(num("l"), h > 0 ? h : 0.02);
    if (r.domain == "comb") return comb_domain(num("epsilon"), h);
    auto pair = collar_pair(r);
    return graph_domain(*pair, h > 0 ? h : gap_mesh(*pair));
}

std::optional<double> oracle_reference(const OracleRequest& r) {
    const Json& p = r.params;
    auto num = [&](const char* k) { return p.at(k).get<double>(); };
    if (r.domain == "rectangle") return num("width") / num("height");
    if (r.domain == "annulus") return 2 * M_PI / std::log(num("r2") / num("r1"));
    if (r.domain == "sector") return std::log(num("r2") / num("r1")) / num("theta");
    if (r.domain == "maskit") return 1.0 / standard_half_collar_lambda(num("l"));
    return std::nullopt;
}

std::optional<ModulusBounds> oracle_sandwich(const OracleRequest& r) {
    auto pair = collar_pair(r);
    if (!pair) return std::nullopt;
    return sandwich_bounds(*pair, 1.0 / r.params.at("l_alpha").get<double>());
}

namespace {
std::optional<double> env_positive(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    double x = std::strtod(v, &end);
    if (end == v || *end != '\0' || !std::isfinite(x) || !(x > 0)) fail(name, "expected a positive number");
    return x;
}
}  // namespace

std::optional<double> env_mesh() { return env_positive("PARABOLIC_MESH"); }
std::optional<double> env_tolerance() {
    auto t = env_positive("PARABOLIC_TOL");
    if (t && !(*t < 1)) fail("PARABOLIC_TOL", "expected a value in (0, 1)");
    return t;
}

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Parabolic: return "Parabolic";
        case VerdictKind::NotParabolic: return "NotParabolic";
        case VerdictKind::Unknown: return "Unknown";
    }
    return "";
}

std::string to_string(CriterionKind k) {
    switch (k) {
        case CriterionKind::Iff: return "iff";
        case CriterionKind::Sufficient: return "sufficient";
        case CriterionKind::Incompleteness: return "incompleteness";
    }
    return "";
}

Json to_json(const SeriesBehavior& s) {
    Json out;
    out["series"] = to_string(s.verdict);
    out["method"] = to_string(s.method);
    out["detail"] = s.detail;
    out["p"] = s.p;
    out["q"] = s.q;
    out["r"] = s.r;
    return out;
}

Json to_json(const Verdict& v) {
    const CriterionInfo& c = criterion(v.criterion);
    Json out;
    out["kind"] = to_string(v.kind);
    if (v.kind == VerdictKind::NotParabolic)
        out["reason"] = v.reason == NotParabolicReason::Incomplete ? "Incomplete" : "SeriesConvergesUnderIff";
    out["label"] = v.label();
    out["criterion"] = c.id;
    out["criterion_kind"] = to_string(c.kind);
    out["statement"] = c.statement;
    out["evidence"] = to_json(v.evidence);
    out["hypotheses_assumed"] = v.hypotheses_assumed;
    out["trace"] = v.trace;
    return out;
}

Json to_json(const ModulusBounds& b) {
    Json out;
    out["lower"] = b.lower;
    out["upper"] = b.upper;
    out["provenance"] = b.provenance;
    Json d = Json::object();
    for (const auto& [k, v] : b.detail) d[k] = std::isfinite(v) ? Json(v) : Json(std::isinf(v) ? "inf" : "nan");
    out["detail"] = d;
    return out;
}

Json to_json(const ModulusEstimate& e) {
    Json out;
    out["value"] = e.value;
    out["error_bar"] = e.error_bar;
    out["extrapolated"] = e.extrapolated;
    Json levels = Json::array();
    for (std::size_t i = 0; i < e.meshes.size(); ++i) {
        Json l;
        l["h"] = e.meshes[i];
        l["energy"] = e.level_values[i];
        l["unknowns"] = e.unknowns[i];
        l["iterations"] = e.iterations[i];
        levels.push_back(l);
    }
    out["levels"] = levels;
    return out;
}

}  // namespace parabolic
