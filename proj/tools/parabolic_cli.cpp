#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parabolic/config.hpp"
#include "parabolic/errors.hpp"

using namespace parabolic;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfig = 2, kNumeric = 3, kHypothesis = 4, kResolution = 5 };

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError(path + ": cannot write");
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// "inf" or a number, as typed on the command line
Json length_arg(const std::string& s, const std::string& flag) {
    if (s == "inf") return "inf";
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw ConfigError(flag + ": expected a number or inf");
    return v;
}

void apply_env(OracleRequest& r) {
    if (auto h = env_mesh()) r.h = *h;
    if (auto t = env_tolerance()) r.options.cg_tol = *t;
}

Json run_oracle(const OracleRequest& r) {
    GridDomain d = build_domain(r);
    ModulusEstimate e = discrete_modulus(d, r.options);
    Json out;
    out["domain"] = r.domain;
    Json params = Json::object();
    for (auto it = r.params.begin(); it != r.params.end(); ++it) {
        double v = it.value().get<double>();
        params[it.key()] = std::isinf(v) ? Json("inf") : Json(v);
    }
    out["params"] = params;
    out["h"] = d.h;
    out["levels"] = r.options.levels;
    out["cg_tol"] = r.options.cg_tol;
    out["estimate"] = to_json(e);
    if (auto ref = oracle_reference(r)) {
        out["reference"] = *ref;
        out["relative_error"] = std::fabs(e.value - *ref) / *ref;
    }
    if (auto s = oracle_sandwich(r)) {
        Json sw;
        sw["lower"] = s->lower;
        sw["upper"] = s->upper;
        sw["inside"] = e.value - e.error_bar >= s->lower && e.value + e.error_bar <= s->upper;
        out["sandwich"] = sw;
    }
    return out;
}

struct Check {
    std::string name;
    double measured = 0, expected = 0, tolerance = 0;
    bool pass = false;
    double seconds = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OracleRequest request(Json j) {
    OracleRequest r = oracle_request_from_json(j);
    apply_env(r);
    return r;
}

Check relative_check(const std::string& name, const Json& doc, double tol) {
    auto t0 = std::chrono::steady_clock::now();
    OracleRequest r = request(doc);
    double v = discrete_modulus(build_domain(r), r.options).value;
    double ref = *oracle_reference(r);
    Check c{name, v, ref, tol};
    c.pass = std::fabs(v - ref) <= tol * ref;
    c.seconds = seconds_since(t0);
    return c;
}

std::vector<Check> suite_annulus() {
    return {
        relative_check("rectangle 2x1", {{"domain", "rectangle"}, {"width", 2.0}, {"height", 1.0}, {"h", 1.0 / 256}}, 0.005),
        relative_check("annulus r2/r1 = 2", {{"domain", "annulus"}, {"r1", 1.0}, {"r2", 2.0}, {"h", 1.0 / 256}}, 0.01),
        relative_check("sector theta = pi/2, r2/r1 = e",
                       {{"domain", "sector"}, {"r1", 1.0}, {"r2", std::exp(1.0)}, {"theta", M_PI / 2}, {"h", 1.0 / 256}},
                       0.01),
    };
}

std::vector<Check> suite_maskit() {
    std::vector<Check> out;
    for (double l : {1.0, 2.0, 4.0}) {
        auto t0 = std::chrono::steady_clock::now();
        OracleRequest r = request({{"domain", "maskit"}, {"l", l}, {"h", l < 3 ? 0.02 : 0.03}});
        double lambda = 1.0 / discrete_modulus(build_domain(r), r.options).value;
        double ref = standard_half_collar_lambda(l);
        Check c{"standard half-collar lambda, l = " + std::to_string(static_cast<int>(l)), lambda, ref, 0.02};
        c.pass = std::fabs(lambda - ref) <= 0.02 * ref;
        c.seconds = seconds_since(t0);
        out.push_back(c);
    }
    return out;
}

std::vector<Check> suite_comb() {
    std::vector<Check> out;
    double prev = INFINITY;
    for (double eps : {0.2, 0.1, 0.05}) {
        auto t0 = std::chrono::steady_clock::now();
        OracleRequest r = request({{"domain", "comb"}, {"epsilon", eps}});
        double ratio = (1.0 / eps) / discrete_modulus(build_domain(r), r.options).value;
        Check c{"comb ratio, eps = " + std::to_string(eps).substr(0, 4), ratio, prev, 0.0};
        c.pass = ratio < prev;
        c.seconds = seconds_since(t0);
        out.push_back(c);
        prev = ratio;
    }
    return out;
}

int cmd_verify(const std::string& suite, bool timing, const std::string& out_path) {
    std::vector<Check> checks;
    if (suite == "annulus") checks = suite_annulus();
    else if (suite == "maskit") checks = suite_maskit();
    else if (suite == "comb") checks = suite_comb();
    else throw ConfigError("suite: expected annulus | maskit | comb");
    Json report;
    report["suite"] = suite;
    Json list = Json::array();
    bool all = true;
    for (const auto& c : checks) {
        Json j;
        j["check"] = c.name;
        j["measured"] = c.measured;
        if (std::isfinite(c.expected)) j["expected"] = c.expected;
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        if (timing) j["seconds"] = std::round(c.seconds * 1000) / 1000;
        list.push_back(j);
        all = all && c.pass;
    }
    report["checks"] = list;
    report["passed"] = all;
    emit(dump(report), out_path);
    return all ? kOk : kCheckFailed;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ResolutionError& e) {
        std::cerr << "error: resolution refused: " << e.what() << "\n"
                  << "recommended_h: " << e.recommended_h << "\n";
        return kResolution;
    } catch (const HypothesisError& e) {
        std::cerr << "error: hypothesis violated: " << e.what() << "\n";
        return kHypothesis;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const NumericError& e) {
        std::cerr << "error: numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parabolicity verdicts for infinite-type hyperbolic surfaces, collar modulus bounds and a grid oracle"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    app.add_option("-o,--output", out_path, "Write the result to this file instead of stdout");

    auto* classify = app.add_subcommand("classify", "Classify a surface described by a JSON document");
    std::string classify_doc;
    classify->add_option("config", classify_doc, "Surface document")->required();

    auto* collar = app.add_subcommand("collar", "Extremal-distance bounds for half and glued collars");
    std::string collar_doc, l_gamma, l_gamma2;
    double l_alpha = 0, twist = 0;
    auto* c_cfg = collar->add_option("--config", collar_doc, "Collar document");
    auto* c_la = collar->add_option("--l-alpha", l_alpha, "Length of the core geodesic");
    auto* c_lg = collar->add_option("--l-gamma", l_gamma, "Length of the boundary curve gamma (number or inf)");
    auto* c_lg2 = collar->add_option("--l-gamma2", l_gamma2, "Length of gamma' for glued collars (number or inf)");
    auto* c_tw = collar->add_option("--twist", twist, "Twist parameter in [-1/2, 1/2]");
    auto* c_std = collar->add_flag("--standard", "Standard half collar");
    auto* c_ns = collar->add_flag("--nonstandard", "Nonstandard half collar");
    auto* c_gl = collar->add_flag("--glued", "Glued collar");
    for (auto* o : {c_la, c_lg, c_lg2, c_tw, c_std, c_ns, c_gl}) o->excludes(c_cfg);
    c_std->excludes(c_ns)->excludes(c_gl);
    c_ns->excludes(c_gl);

    auto* sweep = app.add_subcommand("sweep", "Verdict table over a parameter grid (CSV)");
    std::string sweep_doc, family = "x_ab";
    std::vector<double> ga, gb, gs;
    auto* s_cfg = sweep->add_option("--config", sweep_doc, "Sweep document");
    auto* s_fam = sweep->add_option("--family", family, "x_ab or x_s");
    auto* s_a = sweep->add_option("--a", ga, "Grid for a")->delimiter(',');
    auto* s_b = sweep->add_option("--b", gb, "Grid for b")->delimiter(',');
    auto* s_s = sweep->add_option("--s", gs, "Grid for s")->delimiter(',');
    for (auto* o : {s_fam, s_a, s_b, s_s}) o->excludes(s_cfg);

    auto* oracle = app.add_subcommand("oracle", "Discrete modulus of a planar domain");
    std::string oracle_doc;
    double mesh = 0;
    int levels = 0;
    oracle->add_option("config", oracle_doc, "Domain document")->required();
    oracle->add_option("--mesh", mesh, "Grid spacing (overrides the document)");
    oracle->add_option("--levels", levels, "Refinement levels");

    auto* verify = app.add_subcommand("verify", "Run a named oracle verification suite");
    std::string suite;
    bool no_timing = false;
    verify->add_option("suite", suite, "annulus | maskit | comb")->required();
    verify->add_flag("--no-timing", no_timing, "Omit runtimes (byte-stable output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    if (*classify) {
        return guarded([&] {
            ClassifyRequest r = classify_request_from_json(load_document(classify_doc));
            Verdict v = classify_exhaustion(r.spec, r.use_twists, r.hypotheses);
            Json out;
            out["family"] = r.spec.family_name();
            out["use_twists"] = r.use_twists;
            out["verdict"] = to_json(v);
            emit(dump(out), out_path);
            return kOk;
        });
    }
    if (*collar) {
        return guarded([&] {
            Json doc;
            if (!collar_doc.empty()) {
                doc = load_document(collar_doc);
            } else {
                doc = Json::object();
                if (*c_std) doc["mode"] = "standard";
                if (*c_ns) doc["mode"] = "nonstandard";
                if (*c_gl) doc["mode"] = "glued";
                if (*c_la) doc["l_alpha"] = l_alpha;
                if (*c_lg) doc["l_gamma"] = length_arg(l_gamma, "--l-gamma");
                if (*c_lg2) doc["l_gamma2"] = length_arg(l_gamma2, "--l-gamma2");
                if (*c_tw) doc["twist"] = twist;
            }
            emit(dump(collar_report(collar_request_from_json(doc))), out_path);
            return kOk;
        });
    }
    if (*sweep) {
        return guarded([&] {
            Json doc;
            if (!sweep_doc.empty()) {
                doc = load_document(sweep_doc);
            } else {
                doc = Json::object();
                doc["family"] = family;
                if (family == "x_s") doc["s"] = gs;
                else {
                    doc["a"] = ga;
                    doc["b"] = gb;
                }
            }
            SweepRequest r = sweep_request_from_json(doc);
            emit(sweep_csv(run_sweep(r), sweep_columns(r)), out_path);
            return kOk;
        });
    }
    if (*oracle) {
        return guarded([&] {
            OracleRequest r = oracle_request_from_json(load_document(oracle_doc));
            apply_env(r);
            if (mesh > 0) r.h = mesh;
            if (levels > 0) r.options.levels = levels;
            emit(dump(run_oracle(r)), out_path);
            return kOk;
        });
    }
    return guarded([&] { return cmd_verify(suite, !no_timing, out_path); });
}
