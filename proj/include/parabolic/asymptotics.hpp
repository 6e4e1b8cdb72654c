#pragma once

#include <functional>
#include <string>
#include <vector>

#include "parabolic/surfaces.hpp"

namespace parabolic {

// G(n) = super * (faster than n) + lin * n + log * ln n + loglog * ln ln n
//        + logloglog * ln ln ln n + O(1)
// Only the sign of super is meaningful.
struct Growth {
    double super = 0.0;
    double lin = 0.0;
    double log = 0.0;
    double loglog = 0.0;
    double logloglog = 0.0;
    bool exact = true;

    Growth operator+(const Growth& o) const;
    Growth operator-(const Growth& o) const;
    Growth operator*(double k) const;
    bool is_bounded() const;
    std::string describe() const;
};

// Lexicographic comparison of the dominant behaviour (tolerance 1e-9 per slot).
int compare(const Growth& a, const Growth& b);
Growth max(const Growth& a, const Growth& b);

inline constexpr double kExponentTol = 1e-9;

// Growth of l_n along each branch (one branch, or even/odd in the branch index m).
std::vector<Growth> branch_growth(const SequenceSpec& spec);
// Growth of ln l_n along each branch; inexact when l_n has no clean leading term.
std::vector<Growth> branch_log_growth(const SequenceSpec& spec);
// Growth of the alternating sums sigma_n along the even and odd branches.
std::vector<Growth> sigma_growth(const SequenceSpec& spec);
// Sequence tends to 0 (decided structurally).
bool tends_to_zero(const SequenceSpec& spec);

enum class SeriesVerdict { Diverges, Converges, Inconclusive };
enum class SeriesMethod { BertrandExact, PartialSumHeuristic };

struct SeriesBehavior {
    SeriesVerdict verdict = SeriesVerdict::Inconclusive;
    SeriesMethod method = SeriesMethod::BertrandExact;
    std::string detail;
    // exponents of the dominant branch: n^-p (ln n)^-q (ln ln n)^-r
    double p = 0.0, q = 0.0, r = 0.0;
};

// Terms a_n ~ exp(-G_b(m)) on each branch b; when any branch is inexact the numeric
// term(n) (n >= 1) is summed instead.
struct TermFamily {
    std::vector<Growth> branches;
    std::function<double(long)> term;
    std::string description;
};

SeriesBehavior classify_series(const TermFamily& terms);

// Bertrand test on a single growth (exact only).
SeriesVerdict bertrand(const Growth& g);

inline constexpr long kHeuristicTerms = 1'000'000;

std::string to_string(SeriesVerdict v);
std::string to_string(SeriesMethod m);

}  // namespace parabolic
