#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace parabolic {

// coef * ln(n + shift), or coef * ln ln(n + shift) when used as a loglog term
struct LogTerm {
    double coef = 0.0;
    double shift = 0.0;
};

// sum of log terms + sum of loglog terms + c
struct LogAffine {
    std::vector<LogTerm> logs;
    std::vector<LogTerm> loglogs;
    double c = 0.0;

    double log_coef() const;
    double loglog_coef() const;
};

// a ln(n + n0) + b ln ln(n + n1) + c
LogAffine log_affine(double a, double b, double c, double n0 = 0.0, double n1 = 2.0);

struct Constant {
    double v = 0.0;
};

// coef * n^p * base^n
struct Power {
    double coef = 1.0;
    double p = 0.0;
    double base = 1.0;
};

struct SequenceSpec;
using SpecPtr = std::shared_ptr<const SequenceSpec>;

// l_{2m} = even(m), l_{2m+1} = odd(m)
struct Alternating {
    SpecPtr even, odd;
};

// l_n = values[n-1] for n <= values.size(), tail(n) afterwards
struct Prefix {
    std::vector<double> values;
    SpecPtr tail;
};

struct SequenceSpec {
    std::variant<LogAffine, Constant, Power, Alternating, Prefix> kind;

    SequenceSpec() : kind(Constant{1.0}) {}
    SequenceSpec(LogAffine k) : kind(std::move(k)) {}
    SequenceSpec(Constant k) : kind(k) {}
    SequenceSpec(Power k) : kind(k) {}
    SequenceSpec(Alternating k) : kind(std::move(k)) {}
    SequenceSpec(Prefix k) : kind(std::move(k)) {}

    std::string describe() const;
};

SpecPtr share(SequenceSpec s);
SequenceSpec alternating(SequenceSpec even, SequenceSpec odd);
SequenceSpec prefix(std::vector<double> values, SequenceSpec tail);

// Raw value, no positivity check (lengths are checked by term, twists by twist_term).
double evaluate(const SequenceSpec& spec, long n);
// Length l_n; throws DomainError if not finite and positive.
double term(const SequenceSpec& spec, long n);
// Twist t_n normalised into (-1/2, 1/2]; throws DomainError outside [-1/2, 1/2].
double twist_term(const SequenceSpec& spec, long n);

// sigma_1 = l_1, sigma_n = l_n - sigma_{n-1}, with a running compensation term.
std::vector<double> sigma_sequence(const SequenceSpec& lengths, long count);

enum class Concavity { Yes, No, YesOnWindow };

struct ConcavityReport {
    Concavity verdict = Concavity::No;
    bool analytic = false;
    long witness = 0;  // first failing index (0 when none)
    std::string reason;
};

// Non-decreasing and 2 l_n >= l_{n+1} + l_{n-1}. Analytic for log-affine families with
// non-negative coefficients and constants, otherwise checked on 1..window.
ConcavityReport is_concave(const SequenceSpec& lengths, long window = 1000);

// Sequence bounded along an infinite subsequence, decided from the structure only.
bool has_bounded_subsequence(const SequenceSpec& spec);

// X_{a,b}: l_1 = a ln2 / 2, l_{2n} = a ln(n+1) + b ln n, l_{2n+1} = (a+b) ln(n+1).
SequenceSpec parameter_family_lengths(double a, double b);
// X_s = X_{s,2s}.
SequenceSpec one_parameter_lengths(double s);

struct FluteSpec {
    SequenceSpec lengths;
    SequenceSpec twists = Constant{0.0};

    void validate() const;
    bool zero_twist() const;
    bool half_twist() const;
    std::optional<double> constant_twist() const;
};

struct BoundaryCurve {
    double length = 0.0;
    double twist = 0.0;
};

enum class CoverConfig { Single, DisjointPair, IntersectingPair };

struct FluteFamily {
    FluteSpec flute;
};
struct BiInfiniteFlute {
    FluteSpec positive, negative;
};
struct LochNess {
    SequenceSpec lengths;
    SequenceSpec twists = Constant{0.0};
    double beta_bound = 1.0;  // l(beta_n) <= M
};
struct Ladder {
    SequenceSpec lengths, lengths_negative;
    SequenceSpec twists = Constant{0.0}, twists_negative = Constant{0.0};
    double beta_bound = 1.0;
};
struct CantorTree {
    SequenceSpec level_lengths;  // length of every curve of the level-n boundary
};
// |d0 X_n| = round(k n^p) curves of length L_n and twist t_n.
struct BoundedBoundary {
    double k = 1.0;
    double p = 0.0;
    SequenceSpec lengths;
    SequenceSpec twists = Constant{0.0};
};
struct AbelianCover {
    int rank = 1;
    CoverConfig config = CoverConfig::Single;
    SequenceSpec max_length = Constant{1.0};    // L_n
    SequenceSpec min_twist = Constant{0.0};     // tau_n
    SequenceSpec collar_width = Constant{1.0};  // eps_n (intersecting pair)
    SequenceSpec curve_length = Constant{1.0};  // l_n (intersecting pair)

    void validate() const;
    // number of boundary curves of X_n
    double boundary_count(long n) const;
};

struct ExhaustionSpec {
    std::variant<FluteFamily, BiInfiniteFlute, LochNess, Ladder, CantorTree, BoundedBoundary, AbelianCover> family;

    std::string family_name() const;
};

// Boundary curves of X_n as (length, twist).
std::vector<BoundaryCurve> boundary_data(const ExhaustionSpec& spec, long n);

}  // namespace parabolic
