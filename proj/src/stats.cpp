#include "foon/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "foon/core.hpp"

namespace foon {

namespace {

void check_sample(const RatingSample& s) {
    if (s.ratings.size() != s.weights.size())
        throw StatsError("ratings and weights differ in length");
    for (double w : s.weights)
        if (!(w > 0)) throw StatsError("weights must be positive");
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw InvalidAlphaError("alpha must lie in (0, 1)");
}

void check_summaries(const SummaryStats& a, const SummaryStats& b) {
    if (!(a.n >= 2) || !(b.n >= 2))
        throw InsufficientDataError("both groups need an effective sample size of at least 2");
    if (a.sd < 0 || b.sd < 0) throw StatsError("standard deviation must be non-negative");
}

double pooled_sd(const SummaryStats& a, const SummaryStats& b) {
    const double na = a.n, nb = b.n;
    return std::sqrt(((na - 1) * a.sd * a.sd + (nb - 1) * b.sd * b.sd) / (na + nb - 2));
}

// Standard error and degrees of freedom of the mean difference.
std::pair<double, double> se_and_df(const SummaryStats& a, const SummaryStats& b, TestKind kind) {
    const double na = a.n, nb = b.n;
    if (kind == TestKind::student) {
        const double sp = pooled_sd(a, b);
        return {sp * std::sqrt(1.0 / na + 1.0 / nb), na + nb - 2};
    }
    const double va = a.sd * a.sd / na;
    const double vb = b.sd * b.sd / nb;
    const double se = std::sqrt(va + vb);
    double df = na + nb - 2;  // degenerate fallback when both variances vanish
    if (va + vb > 0)
        df = (va + vb) * (va + vb) / (va * va / (na - 1) + vb * vb / (nb - 1));
    return {se, df};
}

}  // namespace

double weighted_mean(const RatingSample& s) {
    check_sample(s);
    if (s.ratings.empty()) throw EmptySampleError("cannot average an empty sample");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < s.ratings.size(); ++i) {
        num += s.weights[i] * s.ratings[i];
        den += s.weights[i];
    }
    return num / den;
}

double weighted_var(const RatingSample& s) {
    check_sample(s);
    const std::size_t n = s.ratings.size();
    if (n < 2) throw InsufficientDataError("variance needs at least two ratings");
    const double mean = weighted_mean(s);
    double num = 0.0, wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = s.ratings[i] - mean;
        num += s.weights[i] * d * d;
        wsum += s.weights[i];
    }
    const double den = (static_cast<double>(n) - 1.0) * wsum / static_cast<double>(n);
    return num / den;
}

double weighted_std(const RatingSample& s) { return std::sqrt(weighted_var(s)); }

double kish_effective_n(const RatingSample& s) {
    check_sample(s);
    double sum = 0.0, sum_sq = 0.0;
    for (double w : s.weights) {
        sum += w;
        sum_sq += w * w;
    }
    return sum_sq == 0.0 ? 0.0 : sum * sum / sum_sq;
}

SummaryStats summarize(const RatingSample& s, EffectiveN mode) {
    const double n = mode == EffectiveN::kish ? kish_effective_n(s)
                                              : static_cast<double>(s.ratings.size());
    return {weighted_mean(s), weighted_std(s), n};
}

// Continued-fraction evaluation (modified Lentz) of the regularized
// incomplete beta function I_x(a, b).
static double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 400;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0) || !(b > 0)) throw StatsError("incomplete beta requires a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double students_t_sf(double t, double df) {
    if (df <= 0) throw StatsError("degrees of freedom must be positive");
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
    return t >= 0 ? half_tail : 1.0 - half_tail;
}

double students_t_cdf(double t, double df) { return 1.0 - students_t_sf(t, df); }

double students_t_two_tailed_p(double t, double df) {
    if (std::isinf(t)) return 0.0;
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double students_t_quantile(double p, double df) {
    if (!(p > 0.0) || !(p < 1.0)) throw StatsError("quantile requires p in (0, 1)");
    if (df <= 0) throw StatsError("degrees of freedom must be positive");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -students_t_quantile(1.0 - p, df);
    // Bisection on the monotone CDF; bracket grows until it encloses p.
    double lo = 0.0, hi = 1.0;
    while (students_t_cdf(hi, df) < p && hi < 1e12) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (students_t_cdf(mid, df) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

TestReport t_test(const SummaryStats& a, const SummaryStats& b, double alpha, TestKind kind) {
    check_alpha(alpha);
    check_summaries(a, b);

    TestReport report;
    report.alpha = alpha;
    const double diff = a.mean - b.mean;
    auto [se, df] = se_and_df(a, b, kind);
    report.df = df;
    if (se == 0.0) {
        // Degenerate variance: identical constant groups carry no evidence
        // against H0; differing constants are a certain difference.
        report.t = diff == 0.0 ? 0.0
                               : std::copysign(std::numeric_limits<double>::infinity(), diff);
        report.p_value = diff == 0.0 ? 1.0 : 0.0;
    } else {
        report.t = diff / se;
        report.p_value = students_t_two_tailed_p(report.t, df);
    }
    report.reject = report.p_value <= alpha;
    return report;
}

EquivalenceReport tost(const SummaryStats& a, const SummaryStats& b, double d, double alpha,
                       TestKind kind) {
    check_alpha(alpha);
    check_summaries(a, b);
    if (!(d > 0)) throw StatsError("Cohen's d for the bounds must be positive");

    EquivalenceReport report;
    report.cohen_d = d;
    const double sp = pooled_sd(a, b);
    report.upper = d * sp;
    report.lower = -report.upper;

    const double diff = a.mean - b.mean;
    auto [se, df] = se_and_df(a, b, kind);
    if (se == 0.0) {
        report.ci_lower = report.ci_upper = diff;
    } else {
        const double margin = students_t_quantile(1.0 - alpha, df) * se;
        report.ci_lower = diff - margin;
        report.ci_upper = diff + margin;
    }
    report.equivalent = report.ci_lower >= report.lower && report.ci_upper <= report.upper;
    return report;
}

const WeightScheme& WeightScheme::defaults() {
    static const WeightScheme scheme = [] {
        WeightScheme s;
        s.q1_weights = {
            {"i have no experience in cooking", 1.0},
            {"beginner home cook", 1.5},
            {"intermediate home cook", 2.0},
            {"advanced home cook", 2.5},
            {"i have received culinary training", 3.0},
        };
        s.q3_exact_bonus = 0.5;
        s.q2_options = {
            "i mostly use recipes that family or friends shared",
            "i look for recipes online",
            "i follow recipes from cookbooks",
            "i only use ingredients i have available",
        };
        s.q3_options = {
            "i have made this exact dish",
            "yes, but i left out some of the ingredients listed",
            "yes, but i added some ingredients not listed",
            "no",
        };
        s.q3_exact_option = "i have made this exact dish";
        return s;
    }();
    return scheme;
}

double proficiency_weight(const std::string& q1, const std::string& q2, const std::string& q3,
                          const WeightScheme& scheme) {
    const std::string k1 = normalize_token(q1);
    const std::string k2 = normalize_token(q2);
    const std::string k3 = normalize_token(q3);
    auto it = scheme.q1_weights.find(k1);
    if (it == scheme.q1_weights.end())
        throw UnknownOptionError("unknown cooking-proficiency answer: '" + q1 + "'");
    if (!scheme.q2_options.empty() && !scheme.q2_options.count(k2))
        throw UnknownOptionError("unknown recipe-source answer: '" + q2 + "'");
    if (!scheme.q3_options.empty() && !scheme.q3_options.count(k3))
        throw UnknownOptionError("unknown made-this-dish answer: '" + q3 + "'");
    double weight = it->second;
    if (k3 == scheme.q3_exact_option) weight += scheme.q3_exact_bonus;
    return weight;
}

}  // namespace foon
