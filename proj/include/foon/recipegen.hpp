#pragma once

// Turns a task tree into numbered, human-readable recipe instructions.
//
// Each unit becomes a sentence {motion, portion, states, names, extra}:
//  - a portion string (from an external table) is attached to the first
//    mention of an object only;
//  - source/target verbs (pour, add, place, transfer) get a "from X to Y"
//    clause resolved from the relation flags of the unit's inputs/outputs;
//  - utensil verbs (mix, stir, beat, whisk) get a "with X" clause;
//  - consecutive sentences sharing motion and clause are fused;
//  - housekeeping units (clean/dirty/empty toggles on utensils) are dropped.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "foon/core.hpp"

namespace foon {

struct SentenceObject {
    std::string portion;  // empty when none
    std::vector<std::string> states;
    std::string name;
};

struct SentenceExtra {
    enum class Kind { none, source_target, utensil };
    Kind kind = Kind::none;
    std::string source;   // source_target only; may be empty
    std::string target;   // source_target only; may be empty
    std::string utensil;  // utensil only

    friend bool operator==(const SentenceExtra&, const SentenceExtra&) = default;
};

struct Sentence {
    std::string motion;
    std::vector<SentenceObject> objects;  // non-empty
    SentenceExtra extra;
};

// Object-name -> portion string sidecar (e.g. "egg" -> "4", "milk" -> "2 tsp").
// Loaded from TSV (`name<TAB>portion`) or a JSON object; missing entries
// simply render without a portion.
class PortionTable {
public:
    PortionTable() = default;
    explicit PortionTable(std::map<std::string, std::string> entries);

    static PortionTable load(const std::filesystem::path& path);

    std::optional<std::string> find(const std::string& name) const;
    bool empty() const { return entries_.empty(); }

private:
    std::map<std::string, std::string> entries_;  // keys normalized
};

struct Recipe {
    std::string title;
    std::vector<std::string> steps;
};

// Verb classes for the "additional information" rule; overridable via config.
struct VerbClasses {
    std::set<std::string> source_target = {"pour", "add", "place", "transfer"};
    std::set<std::string> utensil = {"mix", "stir", "beat", "whisk"};
};

// True iff the unit's only effect is a clean/dirty/empty state toggle on
// ingredient-free objects (e.g. "wash bowl"). Anything else is instructive.
bool should_skip(const FunctionalUnit& unit);

// Builds the sentence for one unit, or nothing when the unit is skipped.
// `seen` tracks object names already mentioned (for the first-portion rule)
// and is updated with the names this sentence renders.
std::optional<Sentence> unit_to_sentence(const FunctionalUnit& unit, const PortionTable& portions,
                                         std::set<std::string>& seen,
                                         const VerbClasses& verbs = {});

// Fuses maximal runs of sentences sharing motion label and extra clause;
// fused object lists keep order and drop later duplicates by name.
std::vector<Sentence> merge_consecutive(std::vector<Sentence> sentences);

std::string render_sentence(const Sentence& sentence);

// Full pipeline: order units, translate, filter, merge, render.
// Throws CycleError for a corrupt tree. When `ingredients_out` is given it
// receives the distinct rendered object names in first-mention order.
Recipe generate_recipe(const TaskTree& tree, const PortionTable& portions, std::string title,
                       const VerbClasses& verbs = {},
                       std::vector<std::string>* ingredients_out = nullptr);

// "1. <step>" lines, one per step, trailing newline; "" for empty recipes.
std::string recipe_to_text(const Recipe& recipe);

std::string recipe_to_json(const Recipe& recipe, const std::vector<std::string>& ingredients);

}  // namespace foon
