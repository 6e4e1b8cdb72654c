#pragma once

#include <string>
#include <utility>
#include <vector>

#include "parabolic/asymptotics.hpp"
#include "parabolic/surfaces.hpp"

namespace parabolic {

enum class VerdictKind { Parabolic, NotParabolic, Unknown };
enum class NotParabolicReason { None, Incomplete, SeriesConvergesUnderIff };

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    NotParabolicReason reason = NotParabolicReason::None;
    std::string criterion;  // id from criteria()
    SeriesBehavior evidence;
    std::vector<std::string> hypotheses_assumed;
    std::vector<std::string> trace;

    std::string label() const;  // Parabolic | NotParabolic(Incomplete) | ... | Unknown
};

enum class CriterionKind { Iff, Sufficient, Incompleteness };

struct CriterionInfo {
    std::string id;
    CriterionKind kind;
    std::string statement;
};

const std::vector<CriterionInfo>& criteria();
const CriterionInfo& criterion(const std::string& id);

Verdict classify_flute(const FluteSpec& spec);

struct HypothesisFlags {
    bool components_not_pants = false;     // components of X_{n+1} - X_n are not pairs of pants
    bool uniform_distance_bound = false;   // boundary-to-interior distances bounded below
};

// use_twists selects the twisted criteria; for the bounded-boundary family this needs both
// hypothesis flags (HypothesisError otherwise).
Verdict classify_exhaustion(const ExhaustionSpec& spec, bool use_twists = true, HypothesisFlags asserted = {});

Verdict classify_cover(const AbelianCover& spec);

struct SweepRow {
    std::vector<std::pair<std::string, double>> params;
    Verdict verdict;
};

// X_{a,b} over the grid, a outer, b inner.
std::vector<SweepRow> sweep_parameter_family(const std::vector<double>& as, const std::vector<double>& bs);
// X_s = X_{s,2s}.
std::vector<SweepRow> sweep_one_parameter(const std::vector<double>& ss);

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::vector<std::string>& param_names);

}  // namespace parabolic
