#pragma once

// Deterministic random generators for graphs, units and planning instances.

#include <algorithm>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "foon/core.hpp"
#include "foon/retrieval.hpp"

namespace foon::test {

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    std::mt19937& rng() { return rng_; }

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    template <typename T>
    const T& choose(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))];
    }

    std::string name() { return choose(names_); }
    std::string verb() { return choose(verbs_); }

    ObjectNode node() {
        std::vector<std::string> states;
        for (int i = pick(0, 2); i > 0; --i) states.push_back(choose(states_));
        std::vector<std::string> ings;
        for (int i = pick(0, 2); i > 0; --i) ings.push_back(choose(names_));
        Relation rel = Relation::none;
        std::string target;
        if (chance(0.3)) {
            rel = choose(std::vector<Relation>{Relation::in, Relation::on, Relation::under});
            target = choose(names_);
        }
        return make_node(name(), std::move(states), std::move(ings), rel, target);
    }

    FunctionalUnit unit() {
        FunctionalUnit u;
        u.motion = make_motion(verb());
        if (chance(0.3)) {
            int start = pick(0, 500);
            u.motion.start_time = std::to_string(start);
            u.motion.end_time = std::to_string(start + pick(0, 100));
        }
        add_distinct_nodes(u.inputs, pick(1, 3));
        add_distinct_nodes(u.outputs, pick(0, 3));
        return u;
    }

    // Graph with no duplicate units.
    FoonGraph graph(int max_units) {
        std::vector<FunctionalUnit> units;
        std::unordered_set<std::string> keys;
        const int target = pick(0, max_units);
        int guard = 0;
        while (static_cast<int>(units.size()) < target && ++guard < max_units * 20) {
            FunctionalUnit u = unit();
            if (keys.insert(unit_key(u)).second) units.push_back(std::move(u));
        }
        return FoonGraph(std::move(units));
    }

    // Re-expresses a unit without changing unit_equals identity: permutes
    // node order, state/ingredient order, and rewrites timestamps.
    FunctionalUnit reorder(FunctionalUnit u) {
        std::shuffle(u.inputs.begin(), u.inputs.end(), rng_);
        std::shuffle(u.outputs.begin(), u.outputs.end(), rng_);
        auto shuffle_node = [&](ObjectNode& n) {
            std::shuffle(n.states.begin(), n.states.end(), rng_);
            std::shuffle(n.ingredients.begin(), n.ingredients.end(), rng_);
        };
        for (auto& n : u.inputs) shuffle_node(n);
        for (auto& n : u.outputs) shuffle_node(n);
        if (chance(0.5)) {
            u.motion.start_time = std::to_string(pick(0, 400));
            u.motion.end_time = u.motion.start_time;
        }
        return u;
    }

    // Planning instance grown from a kitchen: every unit's inputs come from
    // descriptors available at generation time, so the instance is executable
    // by construction (goals may still be unreachable from reduced kitchens).
    struct Instance {
        FoonGraph graph;
        Kitchen kitchen;
        std::vector<ObjectNode> pool;  // kitchen + produced descriptors
    };

    Instance instance(int unit_count) {
        Instance inst;
        std::unordered_set<std::string> pool_keys;
        auto add_pool = [&](const ObjectNode& n) {
            if (pool_keys.insert(node_key(n)).second) inst.pool.push_back(n);
        };

        const int kitchen_size = pick(2, 4);
        for (int i = 0; i < kitchen_size; ++i) add_pool(fresh_descriptor());
        inst.kitchen = Kitchen::from(inst.pool);

        std::vector<FunctionalUnit> units;
        std::unordered_set<std::string> keys;
        int guard = 0;
        while (static_cast<int>(units.size()) < unit_count && ++guard < unit_count * 30) {
            FunctionalUnit u;
            u.motion = make_motion(verb());
            const int n_in = pick(1, std::min(3, static_cast<int>(inst.pool.size())));
            std::unordered_set<std::string> used;
            for (int i = 0; i < n_in; ++i) {
                const ObjectNode& cand = choose(inst.pool);
                if (used.insert(node_key(cand)).second) u.inputs.push_back(cand);
            }
            const int n_out = pick(0, 2);
            std::unordered_set<std::string> out_used;
            for (int i = 0; i < n_out; ++i) {
                // Mostly fresh descriptors; occasionally an existing one so
                // that several units produce the same node.
                ObjectNode out = chance(0.8) ? fresh_descriptor() : choose(inst.pool);
                if (out_used.insert(node_key(out)).second) u.outputs.push_back(out);
            }
            if (!keys.insert(unit_key(u)).second) continue;
            for (const auto& out : u.outputs) add_pool(out);
            units.push_back(std::move(u));
        }
        inst.graph = FoonGraph(std::move(units));
        return inst;
    }

    ObjectNode fresh_descriptor() {
        std::vector<std::string> states;
        states.push_back("v" + std::to_string(counter_++));
        if (chance(0.3)) states.push_back(choose(states_));
        return make_node(name(), std::move(states));
    }

private:
    void add_distinct_nodes(std::vector<ObjectNode>& out, int count) {
        int guard = 0;
        while (static_cast<int>(out.size()) < count && ++guard < count * 20) {
            ObjectNode n = node();
            bool dup = std::any_of(out.begin(), out.end(),
                                   [&](const ObjectNode& o) { return node_equals(o, n); });
            if (!dup) out.push_back(std::move(n));
        }
    }

    std::mt19937 rng_;
    long counter_ = 0;
    std::vector<std::string> names_ = {"egg",   "milk",  "bowl",   "onion", "tomato",
                                       "pan",   "knife", "board",  "salt",  "butter",
                                       "plate", "oil",   "lemon",  "spoon", "cup"};
    std::vector<std::string> states_ = {"whole", "sliced", "diced", "raw",    "cooked",
                                        "clean", "dirty",  "empty", "beaten", "hot"};
    std::vector<std::string> verbs_ = {"slice", "pour", "mix",   "place", "add",
                                       "cook",  "stir", "wash",  "chop",  "fry"};
};

}  // namespace foon::test
