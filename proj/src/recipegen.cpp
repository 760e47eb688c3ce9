#include "foon/recipegen.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "foon/parser.hpp"

namespace foon {

namespace {

const std::set<std::string>& housekeeping_states() {
    static const std::set<std::string> states = {"clean", "dirty", "empty"};
    return states;
}

bool same_name(const ObjectNode& n, const std::string& name) { return n.name == name; }

// Symmetric difference of two state sets.
std::vector<std::string> state_diff(const ObjectNode& a, const ObjectNode& b) {
    std::vector<std::string> diff;
    for (const auto& s : a.states)
        if (std::find(b.states.begin(), b.states.end(), s) == b.states.end()) diff.push_back(s);
    for (const auto& s : b.states)
        if (std::find(a.states.begin(), a.states.end(), s) == a.states.end()) diff.push_back(s);
    return diff;
}

bool contains_word(const std::string& text, const std::string& word) {
    std::size_t pos = 0;
    while ((pos = text.find(word, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || text[pos - 1] == ' ';
        std::size_t end = pos + word.size();
        bool right_ok = end == text.size() || text[end] == ' ';
        if (left_ok && right_ok) return true;
        pos = end;
    }
    return false;
}

}  // namespace

PortionTable::PortionTable(std::map<std::string, std::string> entries) {
    for (auto& [name, portion] : entries) {
        std::string key = normalize_token(name);
        if (!key.empty() && !portion.empty()) entries_[key] = portion;
    }
}

PortionTable PortionTable::load(const std::filesystem::path& path) {
    std::string text = read_text_file(path);
    std::map<std::string, std::string> entries;
    // Try JSON first; fall back to TSV lines.
    if (!text.empty() && text.find_first_not_of(" \t\r\n") != std::string::npos &&
        text[text.find_first_not_of(" \t\r\n")] == '{') {
        auto j = nlohmann::json::parse(text);
        for (auto& [key, value] : j.items())
            if (value.is_string()) entries[key] = value.get<std::string>();
        return PortionTable(std::move(entries));
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) continue;
        std::string name = line.substr(0, tab);
        std::string portion = line.substr(tab + 1);
        if (!name.empty() && !portion.empty()) entries[name] = portion;
    }
    return PortionTable(std::move(entries));
}

std::optional<std::string> PortionTable::find(const std::string& name) const {
    auto it = entries_.find(normalize_token(name));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

bool should_skip(const FunctionalUnit& unit) {
    // Ingredient-bearing objects anywhere make the unit instructive.
    for (const auto& n : unit.inputs)
        if (!n.ingredients.empty()) return false;
    for (const auto& n : unit.outputs)
        if (!n.ingredients.empty()) return false;
    if (unit.inputs.size() != unit.outputs.size()) return false;

    bool any_change = false;
    std::vector<bool> used(unit.outputs.size(), false);
    for (const auto& in : unit.inputs) {
        const ObjectNode* out = nullptr;
        for (std::size_t j = 0; j < unit.outputs.size(); ++j) {
            if (!used[j] && same_name(unit.outputs[j], in.name)) {
                used[j] = true;
                out = &unit.outputs[j];
                break;
            }
        }
        if (!out) return false;  // object created or consumed
        if (in.relation != out->relation || in.relation_target != out->relation_target)
            return false;  // relocation is instructive
        auto diff = state_diff(in, *out);
        if (diff.empty()) continue;
        for (const auto& s : diff)
            if (!housekeeping_states().count(s)) return false;
        any_change = true;
    }
    return any_change;
}

std::optional<Sentence> unit_to_sentence(const FunctionalUnit& unit, const PortionTable& portions,
                                         std::set<std::string>& seen, const VerbClasses& verbs) {
    if (should_skip(unit)) return std::nullopt;

    Sentence sentence;
    sentence.motion = unit.motion.label;

    // Names appearing on the output side, directly or as ingredients.
    std::unordered_set<std::string> output_names;
    std::unordered_set<std::string> relation_targets;
    for (const auto& n : unit.outputs) {
        output_names.insert(n.name);
        for (const auto& ing : n.ingredients) output_names.insert(ing);
        if (n.relation != Relation::none) relation_targets.insert(n.relation_target);
    }
    std::unordered_set<std::string> input_targets;
    for (const auto& n : unit.inputs) {
        if (n.relation != Relation::none) {
            relation_targets.insert(n.relation_target);
            input_targets.insert(n.relation_target);
        }
    }

    auto& extra = sentence.extra;
    if (verbs.source_target.count(sentence.motion)) {
        extra.kind = SentenceExtra::Kind::source_target;
        for (const auto& n : unit.inputs) {
            if (n.relation != Relation::none) {
                extra.source = n.relation_target;
                break;
            }
        }
        for (const auto& n : unit.outputs) {
            if (n.relation != Relation::none) {
                extra.target = n.relation_target;
                break;
            }
        }
        if (extra.source.empty() && extra.target.empty()) extra.kind = SentenceExtra::Kind::none;
    } else if (verbs.utensil.count(sentence.motion)) {
        // First tool-like input: vanishes from the outputs, is nobody's
        // container, and carries no ingredients.
        for (const auto& n : unit.inputs) {
            if (n.ingredients.empty() && !output_names.count(n.name) &&
                !relation_targets.count(n.name)) {
                extra.kind = SentenceExtra::Kind::utensil;
                extra.utensil = n.name;
                break;
            }
        }
    }

    const bool have_outputs = !unit.outputs.empty();
    for (const auto& n : unit.inputs) {
        if (extra.kind == SentenceExtra::Kind::source_target &&
            (n.name == extra.source || n.name == extra.target))
            continue;  // the container itself
        if (extra.kind == SentenceExtra::Kind::utensil && n.name == extra.utensil) continue;
        if (input_targets.count(n.name)) continue;  // context container of a co-input
        if (have_outputs && !output_names.count(n.name)) continue;  // pure tool
        SentenceObject obj;
        obj.name = n.name;
        obj.states = n.states;
        if (!seen.count(n.name)) {
            if (auto portion = portions.find(n.name)) obj.portion = *portion;
        }
        seen.insert(n.name);
        sentence.objects.push_back(std::move(obj));
    }

    // Never emit an object-less sentence: fall back to all inputs.
    if (sentence.objects.empty()) {
        for (const auto& n : unit.inputs) {
            SentenceObject obj;
            obj.name = n.name;
            obj.states = n.states;
            if (!seen.count(n.name)) {
                if (auto portion = portions.find(n.name)) obj.portion = *portion;
            }
            seen.insert(n.name);
            sentence.objects.push_back(std::move(obj));
        }
    }
    return sentence;
}

std::vector<Sentence> merge_consecutive(std::vector<Sentence> sentences) {
    std::vector<Sentence> out;
    std::size_t i = 0;
    while (i < sentences.size()) {
        std::size_t j = i + 1;
        while (j < sentences.size() && sentences[j].motion == sentences[i].motion &&
               sentences[j].extra == sentences[i].extra)
            ++j;
        if (j == i + 1) {
            out.push_back(std::move(sentences[i]));  // lone sentences pass unchanged
        } else {
            Sentence fused;
            fused.motion = sentences[i].motion;
            fused.extra = sentences[i].extra;
            std::unordered_set<std::string> names;
            for (std::size_t k = i; k < j; ++k)
                for (auto& obj : sentences[k].objects)
                    if (names.insert(obj.name).second) fused.objects.push_back(std::move(obj));
            out.push_back(std::move(fused));
        }
        i = j;
    }
    return out;
}

std::string render_sentence(const Sentence& sentence) {
    std::vector<std::string> rendered;
    rendered.reserve(sentence.objects.size());
    bool name_contains_and = false;
    for (const auto& obj : sentence.objects) {
        std::string piece;
        if (!obj.portion.empty()) piece += obj.portion + " ";
        for (const auto& s : obj.states) piece += s + " ";
        piece += obj.name;
        if (contains_word(obj.name, "and")) name_contains_and = true;
        rendered.push_back(std::move(piece));
    }

    std::string out = sentence.motion;
    for (std::size_t i = 0; i < rendered.size(); ++i) {
        if (i == 0)
            out += " ";
        else if (i + 1 == rendered.size() && !name_contains_and)
            out += " and ";
        else
            out += ", ";
        out += rendered[i];
    }

    const auto& extra = sentence.extra;
    if (extra.kind == SentenceExtra::Kind::source_target) {
        if (!extra.source.empty()) out += " from " + extra.source;
        if (!extra.target.empty()) out += " to " + extra.target;
    } else if (extra.kind == SentenceExtra::Kind::utensil && !extra.utensil.empty()) {
        out += " with " + extra.utensil;
    }
    return out;
}

Recipe generate_recipe(const TaskTree& tree, const PortionTable& portions, std::string title,
                       const VerbClasses& verbs, std::vector<std::string>* ingredients_out) {
    Recipe recipe;
    recipe.title = std::move(title);

    std::set<std::string> seen;
    std::vector<std::string> mention_order;
    std::vector<Sentence> sentences;
    for (const auto& unit : topological_order(tree)) {
        if (auto s = unit_to_sentence(unit, portions, seen, verbs)) {
            for (const auto& obj : s->objects)
                if (std::find(mention_order.begin(), mention_order.end(), obj.name) ==
                    mention_order.end())
                    mention_order.push_back(obj.name);
            sentences.push_back(std::move(*s));
        }
    }
    for (const auto& s : merge_consecutive(std::move(sentences)))
        recipe.steps.push_back(render_sentence(s));
    if (ingredients_out) *ingredients_out = std::move(mention_order);
    return recipe;
}

std::string recipe_to_text(const Recipe& recipe) {
    std::string out;
    for (std::size_t i = 0; i < recipe.steps.size(); ++i)
        out += std::to_string(i + 1) + ". " + recipe.steps[i] + "\n";
    return out;
}

std::string recipe_to_json(const Recipe& recipe, const std::vector<std::string>& ingredients) {
    nlohmann::json j;
    j["title"] = recipe.title;
    j["steps"] = recipe.steps;
    j["ingredients"] = ingredients;
    return j.dump(2) + "\n";
}

}  // namespace foon
