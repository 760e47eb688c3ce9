#pragma once

// Evaluation statistics: weighted descriptives over survey ratings, the
// two-tailed independent t-test and TOST equivalence testing with
// Cohen's-d-derived bounds.
//
//   weighted mean      x̄ = Σ w_i x_i / Σ w_i
//   weighted variance  Σ w_i (x_i − x̄)² / ((n−1) Σ w_i / n)
//
// The variance expression reduces to the ordinary n−1 sample variance under
// uniform weights; weighted_std reports its square root.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace foon {

struct RatingSample {
    std::vector<double> ratings;  // each in [1, 10]
    std::vector<double> weights;  // same length, all > 0
    std::string question;
};

struct SummaryStats {
    double mean = 0.0;
    double sd = 0.0;
    double n = 0;  // rating count, or Kish effective size under that option
};

struct TestReport {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    double alpha = 0.05;
    bool reject = false;  // always p_value <= alpha
};

struct EquivalenceReport {
    double lower = 0.0;     // equivalence bounds: ±d · pooled sd
    double upper = 0.0;
    double ci_lower = 0.0;  // (1 − 2α) confidence interval of the mean difference
    double ci_upper = 0.0;
    bool equivalent = false;  // always ci ⊆ bounds
    double cohen_d = 0.0;     // the d that set the bounds
};

enum class TestKind { welch, student };

class StatsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class EmptySampleError : public StatsError {
public:
    using StatsError::StatsError;
};
class InsufficientDataError : public StatsError {
public:
    using StatsError::StatsError;
};
class InvalidAlphaError : public StatsError {
public:
    using StatsError::StatsError;
};
class UnknownOptionError : public StatsError {
public:
    using StatsError::StatsError;
};

double weighted_mean(const RatingSample& sample);   // throws EmptySampleError
double weighted_var(const RatingSample& sample);    // the raw expression; n >= 2
double weighted_std(const RatingSample& sample);    // sqrt(weighted_var)

// Sample size carried into the inferential tests: plain rating counts by
// default, or Kish's (Σw)²/Σw² when weighting should shrink n.
enum class EffectiveN { counts, kish };

double kish_effective_n(const RatingSample& sample);
SummaryStats summarize(const RatingSample& sample, EffectiveN mode = EffectiveN::counts);

// Welch's unequal-variance test by default; Student's pooled test behind the
// flag. Two summaries with zero variance and equal means give p = 1.
TestReport t_test(const SummaryStats& a, const SummaryStats& b, double alpha,
                  TestKind kind = TestKind::welch);

// Two one-sided tests: bounds = ±d × pooled sd, ci = (1 − 2α) CI of the mean
// difference; equivalent iff the CI lies within the bounds.
EquivalenceReport tost(const SummaryStats& a, const SummaryStats& b, double d, double alpha,
                       TestKind kind = TestKind::welch);

// --- t-distribution numerics (regularized incomplete beta backed) ---

double regularized_incomplete_beta(double a, double b, double x);
double students_t_cdf(double t, double df);
double students_t_sf(double t, double df);
double students_t_two_tailed_p(double t, double df);
double students_t_quantile(double p, double df);  // p in (0, 1)

// --- respondent weighting ---

// Q1 proficiency scale plus a bonus for having made the exact dish; shipped
// as data so researchers can rerun under their own scheme.
struct WeightScheme {
    std::map<std::string, double> q1_weights;
    double q3_exact_bonus = 0.5;
    std::set<std::string> q2_options;
    std::set<std::string> q3_options;
    std::string q3_exact_option;

    static const WeightScheme& defaults();
};

// Deterministic positive weight from the Q1-Q3 answers; monotone in the Q1
// proficiency scale. Throws UnknownOptionError for answers outside the scheme.
double proficiency_weight(const std::string& q1, const std::string& q2, const std::string& q3,
                          const WeightScheme& scheme = WeightScheme::defaults());

}  // namespace foon
