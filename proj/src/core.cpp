#include "foon/core.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <unordered_set>

namespace foon {

namespace {

// Non-printable separators; normalized tokens cannot contain them.
constexpr char kFieldSep = '\x1f';
constexpr char kItemSep = '\x1e';

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

void append_sorted(std::string& out, const std::vector<std::string>& items) {
    for (const auto& s : sorted(items)) {
        out += s;
        out += kItemSep;
    }
}

bool set_equal(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return a.size() == b.size() && sorted(a) == sorted(b);
}

void push_unique(std::vector<std::string>& out, std::string s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
}

}  // namespace

std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::in: return "in";
        case Relation::on: return "on";
        case Relation::under: return "under";
        case Relation::none: break;
    }
    return "none";
}

std::optional<Relation> relation_from(std::string_view s) {
    if (s == "in") return Relation::in;
    if (s == "on") return Relation::on;
    if (s == "under") return Relation::under;
    if (s == "none") return Relation::none;
    return std::nullopt;
}

std::string normalize_token(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (unsigned char c : s) {
        if (c <= ' ' || c == 0x7f) {  // whitespace and control chars collapse
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

ObjectNode make_node(std::string_view name, std::vector<std::string> states,
                     std::vector<std::string> ingredients, Relation relation,
                     std::string_view relation_target) {
    ObjectNode node;
    node.name = normalize_token(name);
    for (auto& s : states) {
        std::string t = normalize_token(s);
        if (!t.empty()) push_unique(node.states, std::move(t));
    }
    for (auto& s : ingredients) {
        std::string t = normalize_token(s);
        if (!t.empty()) push_unique(node.ingredients, std::move(t));
    }
    node.relation = relation;
    if (relation != Relation::none) node.relation_target = normalize_token(relation_target);
    return node;
}

MotionNode make_motion(std::string_view label, std::string_view start_time,
                       std::string_view end_time) {
    MotionNode m;
    m.label = normalize_token(label);
    m.start_time = std::string(start_time);
    m.end_time = std::string(end_time);
    return m;
}

bool node_equals(const ObjectNode& a, const ObjectNode& b) {
    return a.name == b.name && a.relation == b.relation &&
           a.relation_target == b.relation_target && set_equal(a.states, b.states) &&
           set_equal(a.ingredients, b.ingredients);
}

bool unit_equals(const FunctionalUnit& a, const FunctionalUnit& b) {
    if (a.motion.label != b.motion.label) return false;
    if (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size()) return false;
    // Multiset comparison via greedy matching; node_equals is an equivalence
    // relation, so greedy is exact.
    auto multiset_equal = [](const std::vector<ObjectNode>& xs, const std::vector<ObjectNode>& ys) {
        std::vector<bool> used(ys.size(), false);
        for (const auto& x : xs) {
            bool found = false;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (!used[j] && node_equals(x, ys[j])) {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    };
    return multiset_equal(a.inputs, b.inputs) && multiset_equal(a.outputs, b.outputs);
}

std::string node_key(const ObjectNode& n) {
    std::string key = n.name;
    key += kFieldSep;
    append_sorted(key, n.states);
    key += kFieldSep;
    append_sorted(key, n.ingredients);
    key += kFieldSep;
    key += to_string(n.relation);
    key += ':';
    key += n.relation_target;
    return key;
}

std::string unit_key(const FunctionalUnit& u) {
    std::vector<std::string> in_keys, out_keys;
    in_keys.reserve(u.inputs.size());
    out_keys.reserve(u.outputs.size());
    for (const auto& n : u.inputs) in_keys.push_back(node_key(n));
    for (const auto& n : u.outputs) out_keys.push_back(node_key(n));
    std::string key = u.motion.label;
    key += kFieldSep;
    append_sorted(key, in_keys);
    key += kFieldSep;
    append_sorted(key, out_keys);
    return key;
}

FoonGraph::FoonGraph(std::vector<FunctionalUnit> units) : units_(std::move(units)) {
    for (std::size_t i = 0; i < units_.size(); ++i) {
        for (const auto& n : units_[i].inputs) index_[node_key(n)].consumers.push_back(i);
        for (const auto& n : units_[i].outputs) index_[node_key(n)].producers.push_back(i);
    }
}

const FoonGraph::IndexEntry* FoonGraph::find(const ObjectNode& node) const {
    auto it = index_.find(node_key(node));
    return it == index_.end() ? nullptr : &it->second;
}

FoonGraph merge(const std::vector<FoonGraph>& graphs) {
    std::vector<FunctionalUnit> units;
    std::unordered_set<std::string> seen;
    for (const auto& g : graphs) {
        for (const auto& u : g.units()) {
            if (seen.insert(unit_key(u)).second) units.push_back(u);
        }
    }
    return FoonGraph(std::move(units));
}

namespace {

bool numeric(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end && *end == '\0';
}

void check_node(const ObjectNode& n, std::size_t unit, const char* side, std::size_t pos,
                std::vector<Violation>& out) {
    auto add = [&](std::string msg) {
        out.push_back({unit, std::string(side) + " node " + std::to_string(pos) + ": " + msg});
    };
    if (n.name.empty()) add("empty name");
    if (n.name != normalize_token(n.name)) add("name not normalized");
    for (std::size_t i = 0; i < n.states.size(); ++i)
        for (std::size_t j = i + 1; j < n.states.size(); ++j)
            if (n.states[i] == n.states[j]) add("duplicate state '" + n.states[i] + "'");
    for (std::size_t i = 0; i < n.ingredients.size(); ++i)
        for (std::size_t j = i + 1; j < n.ingredients.size(); ++j)
            if (n.ingredients[i] == n.ingredients[j])
                add("duplicate ingredient '" + n.ingredients[i] + "'");
    if (n.relation != Relation::none && n.relation_target.empty())
        add("relation without target object");
    if (n.relation == Relation::none && !n.relation_target.empty())
        add("relation target without relation kind");
}

}  // namespace

std::vector<Violation> validate(const FoonGraph& graph) {
    std::vector<Violation> out;
    const auto& units = graph.units();
    for (std::size_t i = 0; i < units.size(); ++i) {
        const auto& u = units[i];
        if (u.inputs.empty()) out.push_back({i, "unit has no input objects"});
        if (u.motion.label.empty()) out.push_back({i, "unit has empty motion label"});
        for (std::size_t k = 0; k < u.inputs.size(); ++k)
            check_node(u.inputs[k], i, "input", k, out);
        for (std::size_t k = 0; k < u.outputs.size(); ++k)
            check_node(u.outputs[k], i, "output", k, out);
        auto dup_within = [&](const std::vector<ObjectNode>& nodes, const char* side) {
            for (std::size_t a = 0; a < nodes.size(); ++a)
                for (std::size_t b = a + 1; b < nodes.size(); ++b)
                    if (node_equals(nodes[a], nodes[b]))
                        out.push_back({i, std::string("duplicate ") + side + " node '" +
                                              nodes[a].name + "'"});
        };
        dup_within(u.inputs, "input");
        dup_within(u.outputs, "output");
        double s = 0, e = 0;
        if (numeric(u.motion.start_time, s) && numeric(u.motion.end_time, e) && s > e)
            out.push_back({i, "motion start time after end time"});
    }
    std::unordered_map<std::string, std::size_t> first;
    for (std::size_t i = 0; i < units.size(); ++i) {
        auto [it, inserted] = first.emplace(unit_key(units[i]), i);
        if (!inserted)
            out.push_back({i, "duplicate functional unit (first at unit " +
                                  std::to_string(it->second) + ")"});
    }
    return out;
}

std::vector<FunctionalUnit> topological_order(const TaskTree& tree) {
    const auto& units = tree.graph.units();
    std::unordered_set<std::string> available;
    for (const auto& item : tree.kitchen) available.insert(node_key(item));

    std::vector<std::vector<std::string>> input_keys(units.size());
    for (std::size_t i = 0; i < units.size(); ++i)
        for (const auto& n : units[i].inputs) input_keys[i].push_back(node_key(n));

    std::vector<bool> done(units.size(), false);
    std::vector<FunctionalUnit> order;
    order.reserve(units.size());
    for (std::size_t step = 0; step < units.size(); ++step) {
        bool progressed = false;
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (done[i]) continue;
            bool ready = true;
            for (const auto& k : input_keys[i]) {
                if (!available.count(k)) {
                    ready = false;
                    break;
                }
            }
            if (!ready) continue;
            done[i] = true;
            order.push_back(units[i]);
            for (const auto& n : units[i].outputs) available.insert(node_key(n));
            progressed = true;
            break;
        }
        if (!progressed)
            throw CycleError("no executable order exists: cyclic dependencies or inputs "
                             "missing from the kitchen");
    }
    return order;
}

}  // namespace foon
