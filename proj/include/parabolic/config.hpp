#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "parabolic/classifier.hpp"
#include "parabolic/collar_modulus.hpp"
#include "parabolic/extremal_oracle.hpp"

namespace parabolic {

using Json = nlohmann::ordered_json;

// Parse a file; ConfigError on I/O or syntax errors.
Json load_document(const std::string& path);
Json parse_document(const std::string& text, const std::string& origin = "<input>");

// number | "inf"
double length_from_json(const Json& j, const std::string& where);

// number                                   -> constant
// {"constant": v}
// {"log_affine": [a, b, c, n0?, n1?]}      -> a ln(n + n0) + b ln ln(n + n1) + c
// {"logs": [[coef, shift], ...], "loglogs": [...], "c": v}
// {"power": {"coef", "p", "base"}}
// {"alternating": {"even": seq, "odd": seq}}
// {"prefix": {"values": [...], "tail": seq}}
// {"x_ab": {"a", "b"}}, {"x_s": s}
SequenceSpec sequence_from_json(const Json& j, const std::string& where);

struct ClassifyRequest {
    ExhaustionSpec spec;
    bool use_twists = true;
    HypothesisFlags hypotheses;
};
ClassifyRequest classify_request_from_json(const Json& j);

enum class CollarMode { Standard, Nonstandard, Glued };

struct CollarRequest {
    CollarMode mode = CollarMode::Nonstandard;
    double l_alpha = 0.0;
    double l_gamma = kInf;
    double l_gamma2 = kInf;
    double twist = 0.0;
};
CollarRequest collar_request_from_json(const Json& j);
Json collar_report(const CollarRequest& r);

struct SweepRequest {
    std::string family = "x_ab";  // x_ab | x_s
    std::vector<double> a, b, s;
};
SweepRequest sweep_request_from_json(const Json& j);
std::vector<SweepRow> run_sweep(const SweepRequest& r);
std::vector<std::string> sweep_columns(const SweepRequest& r);

struct OracleRequest {
    std::string domain;
    Json params;
    std::optional<double> h;
    OracleOptions options;
};
OracleRequest oracle_request_from_json(const Json& j);
// Builds the grid domain; h falls back to the request, then to the domain default.
GridDomain build_domain(const OracleRequest& r);
// Reference value of the modulus when known in closed form.
std::optional<double> oracle_reference(const OracleRequest& r);
// Sandwich interval on the modulus for collar domains.
std::optional<ModulusBounds> oracle_sandwich(const OracleRequest& r);

// PARABOLIC_MESH / PARABOLIC_TOL; ConfigError when set but malformed.
std::optional<double> env_mesh();
std::optional<double> env_tolerance();

Json to_json(const SeriesBehavior& s);
Json to_json(const Verdict& v);
Json to_json(const ModulusBounds& b);
Json to_json(const ModulusEstimate& e);

std::string to_string(VerdictKind k);
std::string to_string(CriterionKind k);

}  // namespace parabolic
