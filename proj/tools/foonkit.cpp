// foonkit: command-line front end for the FOON toolkit.
//
// Subcommands: validate, merge, retrieve, reachable, generate, match, stats.
// Exit codes: 0 success, 1 domain failure (e.g. unreachable goal),
// 2 usage or input-parse error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "foon/config.hpp"
#include "foon/core.hpp"
#include "foon/corpus.hpp"
#include "foon/parser.hpp"
#include "foon/recipegen.hpp"
#include "foon/retrieval.hpp"
#include "foon/stats.hpp"
#include "foon/survey.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

void emit(const std::string& text, const std::optional<std::string>& out_path) {
    std::string payload = text;
    // Every output ends with exactly one newline.
    while (!payload.empty() && payload.back() == '\n') payload.pop_back();
    payload += '\n';
    if (out_path) {
        foon::write_text_file(*out_path, payload);
    } else {
        std::fputs(payload.c_str(), stdout);
    }
}

void print_diagnostics(const std::string& file, const std::vector<foon::ParseDiagnostic>& diags) {
    for (const auto& d : diags) std::cerr << file << ": " << foon::to_string(d) << "\n";
}

// Parses a graph file; nullopt (after reporting) when it has errors.
std::optional<foon::FoonGraph> load_graph(const std::string& path) {
    auto result = foon::read_graph_file(path);
    print_diagnostics(path, result.diagnostics);
    if (!result.ok()) return std::nullopt;
    return std::move(result.graph);
}

std::optional<foon::Kitchen> load_kitchen(const std::string& path) {
    auto result = foon::parse_kitchen(foon::read_text_file(path));
    print_diagnostics(path, result.diagnostics);
    if (!result.ok()) return std::nullopt;
    return foon::Kitchen::from(std::move(result.items));
}

int cmd_validate(const std::vector<std::string>& files) {
    bool parse_failed = false;
    bool violations_found = false;
    for (const auto& file : files) {
        auto result = foon::read_graph_file(file);
        print_diagnostics(file, result.diagnostics);
        if (!result.ok()) {
            parse_failed = true;
            continue;
        }
        auto violations = foon::validate(result.graph);
        for (const auto& v : violations)
            std::cerr << file << ": unit " << v.unit << ": " << v.message << "\n";
        if (!violations.empty()) violations_found = true;
        std::cout << file << "\t" << result.graph.size() << " units\t"
                  << (violations.empty() ? "ok" : "invalid") << "\n";
    }
    if (parse_failed) return kUsageError;
    return violations_found ? kDomainError : kOk;
}

int cmd_merge(const std::vector<std::string>& inputs, const std::string& out) {
    std::vector<foon::FoonGraph> graphs;
    std::size_t total = 0;
    for (const auto& file : inputs) {
        auto graph = load_graph(file);
        if (!graph) return kUsageError;
        total += graph->size();
        graphs.push_back(std::move(*graph));
    }
    auto merged = foon::merge(graphs);
    foon::write_text_file(out, foon::serialize_graph(merged));
    std::cout << "units before dedup\t" << total << "\n";
    std::cout << "units after dedup\t" << merged.size() << "\n";
    return kOk;
}

int cmd_retrieve(const std::string& foon_path, const std::string& goal_text,
                 const std::string& kitchen_path, const std::optional<std::string>& out) {
    auto graph = load_graph(foon_path);
    if (!graph) return kUsageError;
    auto kitchen = load_kitchen(kitchen_path);
    if (!kitchen) return kUsageError;
    // Shells make tabs awkward; '|' works as a field separator too.
    std::string goal_line = goal_text;
    for (char& c : goal_line)
        if (c == '|') c = '\t';
    std::string error;
    auto goal = foon::parse_descriptor(goal_line, &error);
    if (!goal) {
        std::cerr << "bad goal descriptor: " << error << "\n";
        return kUsageError;
    }
    try {
        auto tree = foon::retrieve(*graph, *goal, *kitchen);
        emit(foon::serialize_graph(tree.graph), out);
        std::cerr << "task tree with " << tree.graph.size() << " units\n";
        return kOk;
    } catch (const foon::RetrievalError& e) {
        std::cerr << e.what() << "\n";
        return kDomainError;
    }
}

int cmd_reachable(const std::string& foon_path, const std::string& kitchen_path,
                  const std::optional<std::string>& out) {
    auto graph = load_graph(foon_path);
    if (!graph) return kUsageError;
    auto kitchen = load_kitchen(kitchen_path);
    if (!kitchen) return kUsageError;
    std::string text;
    for (const auto& node : foon::reachable_goals(*graph, *kitchen))
        text += foon::descriptor_line(node) + "\n";
    emit(text, out);
    return kOk;
}

int cmd_generate(const std::string& tree_path, const std::optional<std::string>& portions_path,
                 const std::optional<std::string>& kitchen_path,
                 const std::optional<std::string>& out, bool as_json, std::string title,
                 const foon::VerbClasses& verbs) {
    auto graph = load_graph(tree_path);
    if (!graph) return kUsageError;

    foon::TaskTree tree;
    tree.graph = std::move(*graph);
    if (kitchen_path) {
        auto kitchen = load_kitchen(*kitchen_path);
        if (!kitchen) return kUsageError;
        tree.kitchen = kitchen->items;
    } else {
        // Without a kitchen file, treat every input as available so the
        // stored unit order is used as-is.
        for (const auto& u : tree.graph.units())
            for (const auto& n : u.inputs) tree.kitchen.push_back(n);
    }

    foon::PortionTable portions;
    if (portions_path) portions = foon::PortionTable::load(*portions_path);
    if (title.empty()) title = std::filesystem::path(tree_path).stem().string();

    try {
        std::vector<std::string> ingredients;
        auto recipe = foon::generate_recipe(tree, portions, title, verbs, &ingredients);
        if (recipe.steps.empty())
            std::cerr << "warning: recipe has no steps (all units were skipped or tree is "
                         "empty)\n";
        emit(as_json ? foon::recipe_to_json(recipe, ingredients) : foon::recipe_to_text(recipe),
             out);
        return kOk;
    } catch (const foon::CycleError& e) {
        std::cerr << e.what() << "\n";
        return kUsageError;
    }
}

int cmd_match(const std::string& recipe_path, const std::string& corpus_path, std::size_t k,
              const foon::CorpusSchema& schema, const std::optional<std::string>& out,
              const std::set<std::string>& stopwords) {
    nlohmann::json recipe_json;
    try {
        recipe_json = nlohmann::json::parse(foon::read_text_file(recipe_path));
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "malformed recipe JSON: " << e.what() << "\n";
        return kUsageError;
    }
    foon::Recipe recipe;
    recipe.title = recipe_json.value("title", "");
    std::vector<std::string> ingredients;
    if (recipe_json.contains("steps"))
        for (const auto& s : recipe_json["steps"])
            if (s.is_string()) recipe.steps.push_back(s.get<std::string>());
    if (recipe_json.contains("ingredients"))
        for (const auto& s : recipe_json["ingredients"])
            if (s.is_string()) ingredients.push_back(s.get<std::string>());

    try {
        std::vector<std::string> warnings;
        auto corpus = foon::load_corpus(corpus_path, schema, &warnings);
        for (const auto& w : warnings) std::cerr << corpus_path << ": " << w << "\n";
        auto matches = foon::match_equivalent(recipe, ingredients, corpus, k, stopwords);
        nlohmann::json j = nlohmann::json::array();
        for (const auto& m : matches)
            j.push_back({{"id", m.id}, {"title", m.title}, {"score", m.score}});
        emit(j.dump(2), out);
        return kOk;
    } catch (const foon::EmptyCorpusError& e) {
        std::cerr << e.what() << "\n";
        return kDomainError;
    } catch (const foon::CorpusError& e) {
        std::cerr << e.what() << "\n";
        return kUsageError;
    }
}

int cmd_stats(const std::string& ratings_path, const std::string& respondents_path, double alpha,
              double cohen_d, const std::string& test, const std::string& effective_n,
              bool as_json, const std::optional<std::string>& out,
              const foon::WeightScheme& scheme) {
    const foon::TestKind kind =
        test == "student" ? foon::TestKind::student : foon::TestKind::welch;
    const foon::EffectiveN n_mode =
        effective_n == "kish" ? foon::EffectiveN::kish : foon::EffectiveN::counts;
    try {
        auto report = foon::analyze_survey(foon::read_text_file(ratings_path),
                                           foon::read_text_file(respondents_path), alpha, cohen_d,
                                           kind, scheme, n_mode);
        for (const auto& q : report.skipped_questions)
            std::cerr << "warning: question '" << q
                      << "' skipped (fewer than 2 ratings on a side)\n";
        emit(as_json ? foon::report_json(report) : foon::report_table(report), out);
        return kOk;
    } catch (const foon::CsvError& e) {
        std::cerr << e.what() << "\n";
        return kUsageError;
    } catch (const foon::StatsError& e) {
        std::cerr << e.what() << "\n";
        return kDomainError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FOON toolkit: parse, merge and query functional object-oriented networks,\n"
                 "generate recipes from task trees, and compare them statistically."};
    app.require_subcommand(1);
    std::optional<std::string> config_path;
    app.add_option("--config", config_path,
                   "config JSON (default: $FOONKIT_CONFIG, then built-ins)");

    // validate
    auto* validate = app.add_subcommand("validate", "parse graph files and check invariants");
    std::vector<std::string> validate_files;
    validate->add_option("files", validate_files, "input .foon files")->required();

    // merge
    auto* merge = app.add_subcommand("merge", "merge subgraphs into a universal FOON");
    std::vector<std::string> merge_inputs;
    std::string merge_out;
    merge->add_option("inputs", merge_inputs, "input .foon files")->required();
    merge->add_option("-o,--out", merge_out, "output .foon file")->required();

    // retrieve
    auto* retrieve = app.add_subcommand("retrieve", "extract a task tree for a goal");
    std::string retrieve_foon, retrieve_goal, retrieve_kitchen;
    std::optional<std::string> retrieve_out;
    retrieve->add_option("foon", retrieve_foon, "universal FOON file")->required();
    retrieve->add_option("-g,--goal", retrieve_goal,
                         "goal descriptor: name[|states][|{ings}][|rel:target]")
        ->required();
    retrieve->add_option("-k,--kitchen", retrieve_kitchen, "kitchen file")->required();
    retrieve->add_option("-o,--out", retrieve_out, "output task-tree file (default stdout)");

    // reachable
    auto* reachable = app.add_subcommand("reachable", "list everything producible from a kitchen");
    std::string reachable_foon, reachable_kitchen;
    std::optional<std::string> reachable_out;
    reachable->add_option("foon", reachable_foon, "universal FOON file")->required();
    reachable->add_option("-k,--kitchen", reachable_kitchen, "kitchen file")->required();
    reachable->add_option("-o,--out", reachable_out, "output file (default stdout)");

    // generate
    auto* generate = app.add_subcommand("generate", "render a task tree as recipe instructions");
    std::string generate_tree, generate_title;
    std::optional<std::string> generate_portions, generate_out, generate_kitchen;
    bool generate_json = false;
    generate->add_option("tree", generate_tree, "task-tree .foon file")->required();
    generate->add_option("-p,--portions", generate_portions, "portion table (TSV or JSON)");
    generate->add_option("-k,--kitchen", generate_kitchen,
                         "kitchen file (enables strict executable ordering)");
    generate->add_option("-o,--out", generate_out, "output file (default stdout)");
    generate->add_option("--title", generate_title, "recipe title (default: file stem)");
    generate->add_flag("--json", generate_json, "emit {title, steps, ingredients} JSON");

    // match
    auto* match = app.add_subcommand("match", "rank corpus recipes by ingredient overlap");
    std::string match_recipe, match_corpus;
    std::size_t match_k = 5;
    std::optional<std::string> match_out;
    foon::CorpusSchema schema;
    match->add_option("-r,--recipe", match_recipe, "generated recipe JSON")->required();
    match->add_option("-c,--corpus", match_corpus, "corpus JSON array")->required();
    match->add_option("-k,--top", match_k, "number of matches to report");
    match->add_option("-o,--out", match_out, "output file (default stdout)");
    match->add_option("--id-field", schema.id_field, "corpus id field name");
    match->add_option("--title-field", schema.title_field, "corpus title field name");
    match->add_option("--ingredients-field", schema.ingredients_field,
                      "corpus ingredients field name");
    match->add_option("--ingredients-text-field", schema.ingredients_text_field,
                      "text subfield of ingredient entries");
    match->add_option("--instructions-field", schema.instructions_field,
                      "corpus instructions field name");
    match->add_option("--instructions-text-field", schema.instructions_text_field,
                      "text subfield of instruction entries");

    // stats
    auto* stats = app.add_subcommand("stats", "run the per-question survey comparison");
    std::string stats_ratings, stats_respondents, stats_test = "welch";
    std::string stats_effective_n = "counts";
    double stats_alpha = 0.05, stats_d = 0.3;
    bool stats_json = false;
    std::optional<std::string> stats_out;
    stats->add_option("--ratings", stats_ratings, "ratings CSV")->required();
    stats->add_option("--respondents", stats_respondents, "respondents CSV")->required();
    stats->add_option("--alpha", stats_alpha, "significance level (default 0.05)");
    stats->add_option("--cohen-d", stats_d, "standardised difference for bounds (default 0.3)");
    stats->add_option("--test", stats_test, "welch or student (default welch)")
        ->check(CLI::IsMember({"welch", "student"}));
    stats->add_option("--effective-n", stats_effective_n,
                      "counts or kish weight-adjusted sample size (default counts)")
        ->check(CLI::IsMember({"counts", "kish"}));
    stats->add_flag("--json", stats_json, "emit the full JSON report");
    stats->add_option("-o,--out", stats_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        foon::ToolkitConfig config = foon::resolve_config(
            config_path ? std::optional<std::filesystem::path>(*config_path) : std::nullopt);

        if (validate->parsed()) return cmd_validate(validate_files);
        if (merge->parsed()) return cmd_merge(merge_inputs, merge_out);
        if (retrieve->parsed())
            return cmd_retrieve(retrieve_foon, retrieve_goal, retrieve_kitchen, retrieve_out);
        if (reachable->parsed())
            return cmd_reachable(reachable_foon, reachable_kitchen, reachable_out);
        if (generate->parsed())
            return cmd_generate(generate_tree, generate_portions, generate_kitchen, generate_out,
                                generate_json, generate_title, config.verbs);
        if (match->parsed())
            return cmd_match(match_recipe, match_corpus, match_k, schema, match_out,
                             config.ingredient_stopwords);
        if (stats->parsed())
            return cmd_stats(stats_ratings, stats_respondents, stats_alpha, stats_d, stats_test,
                             stats_effective_n, stats_json, stats_out, config.weights);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}
