#include "foon/corpus.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "foon/parser.hpp"

namespace foon {

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& value, const std::string& text_field) {
    std::vector<std::string> out;
    if (!value.is_array()) return out;
    for (const auto& item : value) {
        if (item.is_string()) {
            out.push_back(item.get<std::string>());
        } else if (item.is_object() && item.contains(text_field) &&
                   item[text_field].is_string()) {
            out.push_back(item[text_field].get<std::string>());
        }
    }
    return out;
}

bool is_number_token(const std::string& t) {
    return !t.empty() && t.find_first_not_of("0123456789/.-") == std::string::npos;
}

std::vector<std::string> words(const std::string& text) {
    std::vector<std::string> out;
    std::string word;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '/' || c == '.' || c == '-') {
            word += static_cast<char>(std::tolower(c));
        } else if (!word.empty()) {
            out.push_back(std::move(word));
            word.clear();
        }
    }
    if (!word.empty()) out.push_back(std::move(word));
    return out;
}

}  // namespace

std::vector<TextRecipe> load_corpus(const std::filesystem::path& path, const CorpusSchema& schema,
                                    std::vector<std::string>* warnings) {
    std::string text = read_text_file(path);
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CorpusError("malformed corpus JSON at byte " + std::to_string(e.byte) + ": " +
                          e.what());
    }
    if (!root.is_array()) throw CorpusError("corpus file must contain a JSON array of recipes");

    auto warn = [&](std::size_t index, const std::string& what) {
        if (warnings)
            warnings->push_back("entry " + std::to_string(index) + " skipped: " + what);
    };

    std::vector<TextRecipe> recipes;
    for (std::size_t i = 0; i < root.size(); ++i) {
        const auto& entry = root[i];
        if (!entry.is_object()) {
            warn(i, "not an object");
            continue;
        }
        TextRecipe r;
        if (entry.contains(schema.id_field) && entry[schema.id_field].is_string())
            r.id = entry[schema.id_field].get<std::string>();
        if (entry.contains(schema.title_field) && entry[schema.title_field].is_string())
            r.title = entry[schema.title_field].get<std::string>();
        if (entry.contains(schema.ingredients_field))
            r.ingredients = string_list(entry[schema.ingredients_field],
                                        schema.ingredients_text_field);
        if (entry.contains(schema.instructions_field))
            r.instructions = string_list(entry[schema.instructions_field],
                                         schema.instructions_text_field);
        if (r.id.empty()) {
            warn(i, "missing id");
            continue;
        }
        if (r.ingredients.empty()) {
            warn(i, "missing ingredients");
            continue;
        }
        if (r.instructions.empty()) {
            warn(i, "missing instructions");
            continue;
        }
        recipes.push_back(std::move(r));
    }
    return recipes;
}

const std::set<std::string>& default_ingredient_stopwords() {
    static const std::set<std::string> stopwords = {
        // units and quantities
        "cup", "cups", "tsp", "teaspoon", "teaspoons", "tbsp", "tablespoon", "tablespoons",
        "oz", "ounce", "ounces", "lb", "lbs", "pound", "pounds", "g", "gram", "grams", "kg",
        "ml", "l", "liter", "litre", "pinch", "dash", "quart", "pint", "gallon", "stick",
        "sticks", "clove", "cloves", "slice", "slices", "piece", "pieces", "can", "cans",
        "package", "packages", "bunch", "handful",
        // descriptors and filler
        "fresh", "freshly", "large", "small", "medium", "chopped", "diced", "minced",
        "sliced", "ground", "finely", "coarsely", "optional", "taste", "to", "of", "or",
        "and", "a", "an", "the", "for", "with", "into", "about", "plus", "more", "needed",
        "divided", "softened", "melted", "beaten", "peeled", "grated", "shredded", "cubed",
        "halved", "quartered", "trimmed", "rinsed", "drained", "room", "temperature",
    };
    return stopwords;
}

std::set<std::string> ingredient_tokens(const std::vector<std::string>& entries,
                                        const std::set<std::string>& stopwords) {
    std::set<std::string> tokens;
    for (const auto& entry : entries) {
        for (auto& w : words(entry)) {
            if (is_number_token(w) || stopwords.count(w)) continue;
            tokens.insert(std::move(w));
        }
    }
    return tokens;
}

double ingredient_overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& t : a) inter += b.count(t);
    const std::size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<MatchResult> match_equivalent(const Recipe& generated,
                                          const std::vector<std::string>& generated_ingredients,
                                          const std::vector<TextRecipe>& corpus, std::size_t k,
                                          const std::set<std::string>& stopwords) {
    if (corpus.empty()) throw EmptyCorpusError("cannot match against an empty corpus");
    if (k == 0) k = 1;

    std::set<std::string> gen_tokens =
        generated_ingredients.empty() ? ingredient_tokens(generated.steps, stopwords)
                                      : ingredient_tokens(generated_ingredients, stopwords);
    std::set<std::string> gen_title_tokens = ingredient_tokens({generated.title}, stopwords);

    std::vector<MatchResult> scored;
    scored.reserve(corpus.size());
    for (const auto& entry : corpus) {
        double score = ingredient_overlap(gen_tokens, ingredient_tokens(entry.ingredients,
                                                                        stopwords));
        // "similar recipe type" heuristic: shared title content word.
        auto title_tokens = ingredient_tokens({entry.title}, stopwords);
        bool shared_title_word = std::any_of(
            gen_title_tokens.begin(), gen_title_tokens.end(),
            [&](const std::string& t) { return title_tokens.count(t) > 0; });
        if (shared_title_word) score = std::min(1.0, score + 0.1);
        scored.push_back({entry.id, entry.title, score});
    }

    std::stable_sort(scored.begin(), scored.end(),
                     [](const MatchResult& a, const MatchResult& b) { return a.score > b.score; });
    if (scored.size() > k) scored.resize(k);
    return scored;
}

}  // namespace foon
