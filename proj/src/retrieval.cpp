#include "foon/retrieval.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "foon/parser.hpp"

namespace foon {

Kitchen Kitchen::from(std::vector<ObjectNode> items) {
    Kitchen k;
    std::unordered_set<std::string> seen;
    for (auto& item : items)
        if (seen.insert(node_key(item)).second) k.items.push_back(std::move(item));
    return k;
}

bool Kitchen::contains(const ObjectNode& node) const {
    const std::string key = node_key(node);
    return std::any_of(items.begin(), items.end(),
                       [&](const ObjectNode& item) { return node_key(item) == key; });
}

namespace {

constexpr int kNoTouch = std::numeric_limits<int>::max();

// Depth-wise solver with memoization. Failures are cached only when they did
// not involve a descriptor currently on the search path (tracked as the
// minimum touched path depth, lowlink-style), so cyclic graphs stay both
// sound and complete with respect to fixpoint producibility.
class Solver {
public:
    Solver(const FoonGraph& graph, const Kitchen& kitchen) : graph_(graph) {
        for (const auto& item : kitchen.items) kitchen_keys_.insert(node_key(item));
        unit_inputs_.resize(graph.units().size());
        for (std::size_t i = 0; i < graph.units().size(); ++i)
            for (const auto& n : graph.units()[i].inputs)
                unit_inputs_[i].push_back(node_key(n));
    }

    // Returns the unit indices of a plan in execution order, or nullopt.
    std::optional<std::vector<std::size_t>> solve(const ObjectNode& goal) {
        int touched = kNoTouch;
        return solve_key(node_key(goal), touched);
    }

private:
    std::optional<std::vector<std::size_t>> solve_key(const std::string& key, int& min_touched) {
        if (kitchen_keys_.count(key)) return std::vector<std::size_t>{};
        if (auto it = memo_.find(key); it != memo_.end()) {
            if (it->second) return *it->second;
            return std::nullopt;
        }
        if (auto it = path_depth_.find(key); it != path_depth_.end()) {
            min_touched = std::min(min_touched, it->second);
            return std::nullopt;
        }
        auto idx = graph_.node_index().find(key);
        if (idx == graph_.node_index().end() || idx->second.producers.empty()) {
            memo_.emplace(key, std::nullopt);
            return std::nullopt;
        }

        const int depth = static_cast<int>(path_depth_.size());
        path_depth_.emplace(key, depth);
        int worst_touch = kNoTouch;
        std::optional<std::vector<std::size_t>> result;

        for (std::size_t unit : idx->second.producers) {
            std::vector<std::size_t> plan;
            std::unordered_set<std::size_t> in_plan;
            bool ok = true;
            for (const auto& input_key : unit_inputs_[unit]) {
                int touched = kNoTouch;
                auto sub = solve_key(input_key, touched);
                if (!sub) {
                    worst_touch = std::min(worst_touch, touched);
                    ok = false;
                    break;
                }
                for (std::size_t s : *sub)
                    if (in_plan.insert(s).second) plan.push_back(s);
            }
            if (ok) {
                plan.push_back(unit);
                result = std::move(plan);
                break;
            }
        }

        path_depth_.erase(key);
        if (result) {
            memo_.emplace(key, result);
            return result;
        }
        // A failure that only touched this descriptor's own path entry (or no
        // path entry at all) is context-free and safe to cache.
        if (worst_touch >= depth) {
            memo_.emplace(key, std::nullopt);
        } else {
            min_touched = std::min(min_touched, worst_touch);
        }
        return std::nullopt;
    }

    const FoonGraph& graph_;
    std::unordered_set<std::string> kitchen_keys_;
    std::vector<std::vector<std::string>> unit_inputs_;
    std::unordered_map<std::string, std::optional<std::vector<std::size_t>>> memo_;
    std::unordered_map<std::string, int> path_depth_;
};

}  // namespace

TaskTree retrieve(const FoonGraph& foon, const ObjectNode& goal, const Kitchen& kitchen) {
    TaskTree tree;
    tree.goal = goal;
    tree.kitchen = kitchen.items;
    if (kitchen.contains(goal)) return tree;  // nothing to do

    auto idx = foon.node_index().find(node_key(goal));
    if (idx == foon.node_index().end() || idx->second.producers.empty())
        throw GoalNotInGraphError("goal never appears as an output: " + describe(goal));

    Solver solver(foon, kitchen);
    auto plan = solver.solve(goal);
    if (!plan)
        throw UnreachableGoalError("goal is not reachable from this kitchen: " + describe(goal));

    std::vector<FunctionalUnit> units;
    units.reserve(plan->size());
    for (std::size_t i : *plan) units.push_back(foon.units()[i]);
    tree.graph = FoonGraph(std::move(units));
    return tree;
}

std::vector<ObjectNode> reachable_goals(const FoonGraph& foon, const Kitchen& kitchen) {
    std::unordered_set<std::string> available;
    for (const auto& item : kitchen.items) available.insert(node_key(item));

    const auto& units = foon.units();
    std::vector<bool> fired(units.size(), false);
    std::vector<std::pair<std::string, ObjectNode>> produced;
    std::unordered_set<std::string> produced_keys;

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (fired[i]) continue;
            bool ready = std::all_of(units[i].inputs.begin(), units[i].inputs.end(),
                                     [&](const ObjectNode& n) { return available.count(node_key(n)) > 0; });
            if (!ready) continue;
            fired[i] = true;
            changed = true;
            for (const auto& n : units[i].outputs) {
                std::string key = node_key(n);
                if (available.insert(key).second && produced_keys.insert(key).second)
                    produced.emplace_back(std::move(key), n);
            }
        }
    }

    std::sort(produced.begin(), produced.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<ObjectNode> result;
    result.reserve(produced.size());
    for (auto& [key, node] : produced) result.push_back(std::move(node));
    return result;
}

}  // namespace foon
