#include <doctest.h>

#include <array>
#include <sstream>

#include "foon/parser.hpp"
#include "foon/survey.hpp"

using namespace foon;

namespace {

const char* kRespondents =
    "respondent_id,q1,q2,q3\n"
    "p1,Beginner home cook,I look for recipes online,No\n"
    "p2,Advanced home cook,I follow recipes from cookbooks,\"Yes, but I left out some of the "
    "ingredients listed\"\n"
    "p3,I have received culinary training,I look for recipes online,I have made this exact "
    "dish\n";

std::string ratings_csv(const std::vector<std::array<std::string, 4>>& rows) {
    std::string out = "respondent_id,question_id,recipe_source,rating\n";
    for (const auto& r : rows) out += r[0] + "," + r[1] + "," + r[2] + "," + r[3] + "\n";
    return out;
}

std::string identical_dataset() {
    // Both sources get the same ratings per question -> p must be 1.
    std::vector<std::array<std::string, 4>> rows;
    const std::vector<std::string> values = {"6", "7", "8", "7", "6", "9"};
    for (const std::string q : {"q4", "q5"}) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::string who = "p" + std::to_string(i % 3 + 1);
            rows.push_back({who, q, "foon", values[i]});
            rows.push_back({who, q, "corpus", values[i]});
        }
    }
    return ratings_csv(rows);
}

}  // namespace

TEST_CASE("csv parser") {
    auto rows = parse_csv("a,b,c\n1,\"x,y\",3\n\n2,\"he said \"\"hi\"\"\",4\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][1] == "x,y");
    CHECK(rows[2][1] == "he said \"hi\"");
    CHECK(parse_csv("").empty());
    CHECK_THROWS_AS(parse_csv("a,\"unterminated\n"), CsvError);
}

TEST_CASE("analyze_survey") {
    SUBCASE("identical distributions cannot reject H0") {
        auto report = analyze_survey(identical_dataset(), kRespondents);
        REQUIRE(report.rows.size() == 2);
        for (const auto& row : report.rows) {
            CHECK(row.h0.p_value == doctest::Approx(1.0));
            CHECK_FALSE(row.h0.reject);
            CHECK(row.foon_stats.mean == doctest::Approx(row.corpus_stats.mean));
        }
    }
    SUBCASE("a strong mean shift rejects H0") {
        std::vector<std::array<std::string, 4>> rows;
        for (int i = 0; i < 12; ++i) {
            std::string who = "p" + std::to_string(i % 3 + 1);
            rows.push_back({who, "q4", "foon", i % 2 ? "9" : "10"});
            rows.push_back({who, "q4", "corpus", i % 2 ? "2" : "3"});
        }
        auto report = analyze_survey(ratings_csv(rows), kRespondents);
        REQUIRE(report.rows.size() == 1);
        CHECK(report.rows[0].h0.reject);
        CHECK(report.rows[0].h0.p_value < 0.001);
    }
    SUBCASE("weights follow the respondent scheme") {
        // p3 (trained + exact dish) weighs 3.5, p1 (beginner) 1.5.
        std::vector<std::array<std::string, 4>> rows = {
            {"p1", "q4", "foon", "2"}, {"p3", "q4", "foon", "10"},
            {"p1", "q4", "corpus", "2"}, {"p3", "q4", "corpus", "10"},
        };
        auto report = analyze_survey(ratings_csv(rows), kRespondents);
        REQUIRE(report.rows.size() == 1);
        // (1.5*2 + 3.5*10) / 5 = 7.6
        CHECK(report.rows[0].foon_stats.mean == doctest::Approx(7.6).epsilon(1e-12));
    }
    SUBCASE("skipped ratings are excluded; sparse questions are dropped") {
        std::vector<std::array<std::string, 4>> rows = {
            {"p1", "q4", "foon", "7"},   {"p2", "q4", "foon", "8"},
            {"p1", "q4", "corpus", "6"}, {"p2", "q4", "corpus", "9"},
            {"p1", "q5", "foon", "7"},   {"p2", "q5", "foon", ""},
            {"p1", "q5", "corpus", "6"}, {"p2", "q5", "corpus", "skip"},
        };
        auto report = analyze_survey(ratings_csv(rows), kRespondents);
        REQUIRE(report.rows.size() == 1);
        CHECK(report.rows[0].question == "q4");
        REQUIRE(report.skipped_questions.size() == 1);
        CHECK(report.skipped_questions[0] == "q5");
    }
    SUBCASE("questions are ordered numerically") {
        std::vector<std::array<std::string, 4>> rows;
        for (const std::string q : {"q10", "q4", "q9"})
            for (const std::string who : {"p1", "p2"}) {
                rows.push_back({who, q, "foon", "7"});
                rows.push_back({who, q, "corpus", "6"});
            }
        auto report = analyze_survey(ratings_csv(rows), kRespondents);
        REQUIRE(report.rows.size() == 3);
        CHECK(report.rows[0].question == "q4");
        CHECK(report.rows[1].question == "q9");
        CHECK(report.rows[2].question == "q10");
    }
    SUBCASE("malformed input raises CsvError") {
        CHECK_THROWS_AS(analyze_survey("bogus\n", kRespondents), CsvError);
        CHECK_THROWS_AS(
            analyze_survey(ratings_csv({{"p9", "q4", "foon", "7"}}), kRespondents),
            CsvError);  // unknown respondent
        CHECK_THROWS_AS(
            analyze_survey(ratings_csv({{"p1", "q4", "foon", "11"}}), kRespondents),
            CsvError);  // rating out of range
        CHECK_THROWS_AS(
            analyze_survey(ratings_csv({{"p1", "q4", "tv", "7"}}), kRespondents),
            CsvError);  // bad source
    }
}

TEST_CASE("report table mirrors the published column layout") {
    auto report = analyze_survey(identical_dataset(), kRespondents);
    std::string table = report_table(report);
    std::istringstream lines(table);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "Question\tp-value\tEquivalence bounds\t90% TOST CI");
    std::string row;
    std::getline(lines, row);
    CHECK(row.substr(0, 2) == "q4");
    CHECK(row.find("[") != std::string::npos);
    CHECK(std::count(row.begin(), row.end(), '\t') == 3);
    CHECK(table.back() == '\n');
}

TEST_CASE("json report carries the full detail") {
    auto report = analyze_survey(identical_dataset(), kRespondents);
    std::string json = report_json(report);
    CHECK(json.find("\"p_value\"") != std::string::npos);
    CHECK(json.find("\"equivalence_bounds\"") != std::string::npos);
    CHECK(json.find("\"tost_ci90\"") != std::string::npos);
    CHECK(json.find("\"equivalent\"") != std::string::npos);
}
