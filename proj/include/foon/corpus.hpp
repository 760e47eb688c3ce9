#pragma once

// Reference recipe corpora (Recipe1M+-style JSON) and ingredient-overlap
// matching between generated and human recipes.

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "foon/recipegen.hpp"

namespace foon {

struct TextRecipe {
    std::string id;
    std::string title;
    std::vector<std::string> ingredients;
    std::vector<std::string> instructions;
};

// Field names of the corpus JSON; defaults follow Recipe1M+ conventions
// (ingredients/instructions are arrays of {"text": ...} objects, but plain
// string arrays are accepted too).
struct CorpusSchema {
    std::string id_field = "id";
    std::string title_field = "title";
    std::string ingredients_field = "ingredients";
    std::string ingredients_text_field = "text";
    std::string instructions_field = "instructions";
    std::string instructions_text_field = "text";
};

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyCorpusError : public CorpusError {
public:
    using CorpusError::CorpusError;
};

// Loads a JSON array of recipes. Entries missing id/title/ingredients/
// instructions are skipped with a warning; malformed JSON raises CorpusError
// with the byte offset.
std::vector<TextRecipe> load_corpus(const std::filesystem::path& path,
                                    const CorpusSchema& schema = {},
                                    std::vector<std::string>* warnings = nullptr);

// Unit words, quantities and filler dropped during ingredient normalization.
const std::set<std::string>& default_ingredient_stopwords();

// Lowercased content tokens of free-text ingredient entries; numbers, unit
// words and stop words stripped.
std::set<std::string> ingredient_tokens(const std::vector<std::string>& entries,
                                        const std::set<std::string>& stopwords =
                                            default_ingredient_stopwords());

// Jaccard index |a∩b| / |a∪b|; defined as 0 when both sets are empty.
double ingredient_overlap(const std::set<std::string>& a, const std::set<std::string>& b);

struct MatchResult {
    std::string id;
    std::string title;
    double score = 0.0;
};

// Top-k corpus entries by ingredient overlap against a generated recipe,
// ties broken by corpus order. `generated_ingredients` are the recipe's
// object names; when empty, tokens are extracted from the step texts.
// A shared title content word adds +0.1 (capped at 1.0).
std::vector<MatchResult> match_equivalent(const Recipe& generated,
                                          const std::vector<std::string>& generated_ingredients,
                                          const std::vector<TextRecipe>& corpus, std::size_t k,
                                          const std::set<std::string>& stopwords =
                                              default_ingredient_stopwords());

}  // namespace foon
