#include "foon/survey.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

#include "foon/core.hpp"

namespace foon {

namespace {

// "q10" sorts after "q4": compare by numeric suffix when both have one.
bool question_less(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) -> std::pair<std::string, long> {
        std::size_t i = s.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
        if (i == s.size()) return {s, -1};
        return {s.substr(0, i), std::stol(s.substr(i))};
    };
    auto [pa, na] = split(a);
    auto [pb, nb] = split(b);
    if (pa != pb) return pa < pb;
    if (na != nb) return na < nb;
    return a < b;
}

std::string format_number(double v, int precision = 4) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(precision);
    os << v;
    std::string s = os.str();
    if (s == "-0.0000") s = "0.0000";
    return s;
}

std::string format_interval(double lo, double hi) {
    return "[" + format_number(lo, 2) + ", " + format_number(hi, 2) + "]";
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;

    auto end_field = [&] {
        row.push_back(field);
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        const bool blank = row.size() == 1 && row[0].empty();
        if (!blank) rows.push_back(row);
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        any = true;
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
        } else {
            field += c;
        }
    }
    if (quoted) throw CsvError("unterminated quoted field");
    if (any && (!field.empty() || !row.empty())) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        end_row();
    }
    return rows;
}

namespace {

std::size_t column_of(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (normalize_token(header[i]) == name) return i;
    throw CsvError("missing CSV column '" + name + "'");
}

bool skipped_rating(const std::string& raw) {
    const std::string v = normalize_token(raw);
    return v.empty() || v == "skip" || v == "skipped" || v == "na" || v == "n/a";
}

}  // namespace

SurveyReport analyze_survey(std::string_view ratings_csv, std::string_view respondents_csv,
                            double alpha, double cohen_d, TestKind kind,
                            const WeightScheme& scheme, EffectiveN effective_n) {
    auto respondents = parse_csv(respondents_csv);
    if (respondents.empty()) throw CsvError("respondents CSV is empty");
    std::map<std::string, double> weight_of;
    {
        const auto& header = respondents.front();
        const std::size_t id_col = column_of(header, "respondent_id");
        const std::size_t q1_col = column_of(header, "q1");
        const std::size_t q2_col = column_of(header, "q2");
        const std::size_t q3_col = column_of(header, "q3");
        for (std::size_t r = 1; r < respondents.size(); ++r) {
            const auto& row = respondents[r];
            const std::size_t need = std::max({id_col, q1_col, q2_col, q3_col});
            if (row.size() <= need)
                throw CsvError("respondents row " + std::to_string(r + 1) + " is short");
            const std::string id = normalize_token(row[id_col]);
            if (id.empty()) throw CsvError("respondents row " + std::to_string(r + 1) +
                                           " has an empty respondent_id");
            try {
                weight_of[id] = proficiency_weight(row[q1_col], row[q2_col], row[q3_col], scheme);
            } catch (const UnknownOptionError& e) {
                throw CsvError("respondents row " + std::to_string(r + 1) + ": " + e.what());
            }
        }
    }

    auto ratings = parse_csv(ratings_csv);
    if (ratings.empty()) throw CsvError("ratings CSV is empty");
    // question -> {foon sample, corpus sample}
    std::map<std::string, std::pair<RatingSample, RatingSample>, bool (*)(const std::string&,
                                                                          const std::string&)>
        samples(question_less);
    {
        const auto& header = ratings.front();
        const std::size_t id_col = column_of(header, "respondent_id");
        const std::size_t q_col = column_of(header, "question_id");
        const std::size_t src_col = column_of(header, "recipe_source");
        const std::size_t rating_col = column_of(header, "rating");
        for (std::size_t r = 1; r < ratings.size(); ++r) {
            const auto& row = ratings[r];
            const std::size_t need = std::max({id_col, q_col, src_col, rating_col});
            if (row.size() <= need)
                throw CsvError("ratings row " + std::to_string(r + 1) + " is short");
            if (skipped_rating(row[rating_col])) continue;

            const std::string id = normalize_token(row[id_col]);
            auto wit = weight_of.find(id);
            if (wit == weight_of.end())
                throw CsvError("ratings row " + std::to_string(r + 1) +
                               ": unknown respondent '" + row[id_col] + "'");

            char* end = nullptr;
            const double value = std::strtod(row[rating_col].c_str(), &end);
            if (!end || *end != '\0' || !(value >= 1.0) || !(value <= 10.0))
                throw CsvError("ratings row " + std::to_string(r + 1) + ": rating '" +
                               row[rating_col] + "' is not in [1, 10]");

            const std::string question = normalize_token(row[q_col]);
            const std::string source = normalize_token(row[src_col]);
            auto& pair = samples.try_emplace(question).first->second;
            RatingSample* sample = nullptr;
            if (source == "foon")
                sample = &pair.first;
            else if (source == "corpus")
                sample = &pair.second;
            else
                throw CsvError("ratings row " + std::to_string(r + 1) +
                               ": recipe_source must be 'foon' or 'corpus'");
            sample->question = question;
            sample->ratings.push_back(value);
            sample->weights.push_back(wit->second);
        }
    }

    SurveyReport report;
    report.alpha = alpha;
    report.cohen_d = cohen_d;
    report.kind = kind;
    report.effective_n = effective_n;
    for (auto& [question, pair] : samples) {
        if (pair.first.ratings.size() < 2 || pair.second.ratings.size() < 2) {
            report.skipped_questions.push_back(question);
            continue;
        }
        QuestionReport row;
        row.question = question;
        row.foon_stats = summarize(pair.first, effective_n);
        row.corpus_stats = summarize(pair.second, effective_n);
        if (!(row.foon_stats.n >= 2) || !(row.corpus_stats.n >= 2)) {
            report.skipped_questions.push_back(question);
            continue;
        }
        row.h0 = t_test(row.foon_stats, row.corpus_stats, alpha, kind);
        row.equivalence = tost(row.foon_stats, row.corpus_stats, cohen_d, alpha, kind);
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string report_table(const SurveyReport& report) {
    std::string out = "Question\tp-value\tEquivalence bounds\t90% TOST CI\n";
    for (const auto& row : report.rows) {
        out += row.question;
        out += '\t';
        out += format_number(row.h0.p_value, 4);
        out += '\t';
        out += format_interval(row.equivalence.lower, row.equivalence.upper);
        out += '\t';
        out += format_interval(row.equivalence.ci_lower, row.equivalence.ci_upper);
        out += '\n';
    }
    return out;
}

std::string report_json(const SurveyReport& report) {
    nlohmann::json j;
    j["alpha"] = report.alpha;
    j["cohen_d"] = report.cohen_d;
    j["test"] = report.kind == TestKind::welch ? "welch" : "student";
    j["effective_n"] = report.effective_n == EffectiveN::kish ? "kish" : "counts";
    j["questions"] = nlohmann::json::array();
    auto n_json = [](double n) {
        return n == std::floor(n) ? nlohmann::json(static_cast<long long>(n))
                                  : nlohmann::json(n);
    };
    for (const auto& row : report.rows) {
        nlohmann::json q;
        q["question"] = row.question;
        q["foon"] = {{"mean", row.foon_stats.mean},
                     {"sd", row.foon_stats.sd},
                     {"n", n_json(row.foon_stats.n)}};
        q["corpus"] = {{"mean", row.corpus_stats.mean},
                       {"sd", row.corpus_stats.sd},
                       {"n", n_json(row.corpus_stats.n)}};
        q["t"] = row.h0.t;
        q["df"] = row.h0.df;
        q["p_value"] = row.h0.p_value;
        q["reject_h0"] = row.h0.reject;
        q["equivalence_bounds"] = {row.equivalence.lower, row.equivalence.upper};
        q["tost_ci90"] = {row.equivalence.ci_lower, row.equivalence.ci_upper};
        q["equivalent"] = row.equivalence.equivalent;
        j["questions"].push_back(std::move(q));
    }
    if (!report.skipped_questions.empty()) j["skipped_questions"] = report.skipped_questions;
    return j.dump(2) + "\n";
}

}  // namespace foon
