#pragma once

// Survey CSV ingestion and the per-question comparison report.
//
// Ratings CSV columns:     respondent_id, question_id, recipe_source, rating
//   recipe_source is "foon" or "corpus". An empty rating (or "skip"/"na")
//   marks a skipped answer and is excluded from that question's sample.
// Respondents CSV columns: respondent_id, q1, q2, q3
//   Answers must come from the survey's option sets; they set the
//   respondent's rating weight.

#include <stdexcept>
#include <string>
#include <vector>

#include "foon/stats.hpp"

namespace foon {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Minimal RFC-4180-ish reader: comma separated, double quotes optional.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

struct QuestionReport {
    std::string question;
    SummaryStats foon_stats;
    SummaryStats corpus_stats;
    TestReport h0;
    EquivalenceReport equivalence;
};

struct SurveyReport {
    std::vector<QuestionReport> rows;
    std::vector<std::string> skipped_questions;  // fewer than 2 ratings on a side
    double alpha = 0.05;
    double cohen_d = 0.3;
    TestKind kind = TestKind::welch;
    EffectiveN effective_n = EffectiveN::counts;
};

// Builds per-question weighted samples for both sources and runs the t-test
// and TOST on each. Throws CsvError on malformed input.
SurveyReport analyze_survey(std::string_view ratings_csv, std::string_view respondents_csv,
                            double alpha = 0.05, double cohen_d = 0.3,
                            TestKind kind = TestKind::welch,
                            const WeightScheme& scheme = WeightScheme::defaults(),
                            EffectiveN effective_n = EffectiveN::counts);

// Tab-separated summary table with the columns:
// Question, p-value, Equivalence bounds, 90% TOST CI.
std::string report_table(const SurveyReport& report);

std::string report_json(const SurveyReport& report);

}  // namespace foon
