#include <doctest.h>

#include <set>

#include "foon/core.hpp"
#include "foon/parser.hpp"
#include "foon/retrieval.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace foon;
using foon::test::Gen;

namespace {

FoonGraph lemon_graph() {
    FunctionalUnit place, slice;
    place.inputs = {make_node("lemon", {"whole"}), make_node("cutting board")};
    place.motion = make_motion("place");
    place.outputs = {make_node("lemon", {"whole"}, {}, Relation::on, "cutting board")};
    slice.inputs = {make_node("lemon", {"whole"}, {}, Relation::on, "cutting board"),
                    make_node("knife")};
    slice.motion = make_motion("slice");
    slice.outputs = {make_node("lemon", {"sliced"})};
    return FoonGraph({place, slice});
}

Kitchen lemon_kitchen() {
    return Kitchen::from(
        {make_node("lemon", {"whole"}), make_node("knife"), make_node("cutting board")});
}

}  // namespace

TEST_CASE("retrieves the place+slice chain for a sliced lemon") {
    auto tree = retrieve(lemon_graph(), make_node("lemon", {"sliced"}), lemon_kitchen());
    REQUIRE(tree.graph.size() == 2);
    CHECK(tree.graph.units()[0].motion.label == "place");
    CHECK(tree.graph.units()[1].motion.label == "slice");
    CHECK(foon::test::replays_cleanly(tree));
    CHECK(foon::test::no_dead_units(tree));
}

TEST_CASE("goal already in the kitchen yields an empty tree") {
    auto tree = retrieve(lemon_graph(), make_node("lemon", {"whole"}), lemon_kitchen());
    CHECK(tree.graph.empty());
    CHECK(foon::test::replays_cleanly(tree));
}

TEST_CASE("missing base ingredient raises UnreachableGoal") {
    Kitchen knife_only = Kitchen::from({make_node("knife")});
    CHECK_THROWS_AS(retrieve(lemon_graph(), make_node("lemon", {"sliced"}), knife_only),
                    UnreachableGoalError);
}

TEST_CASE("goal absent from all outputs raises GoalNotInGraph") {
    CHECK_THROWS_AS(retrieve(lemon_graph(), make_node("pancake"), lemon_kitchen()),
                    GoalNotInGraphError);
}

TEST_CASE("kitchen items never satisfy relation-bearing inputs") {
    // A kitchen lemon is not a lemon already placed on the board.
    auto tree = retrieve(lemon_graph(), make_node("lemon", {"sliced"}), lemon_kitchen());
    CHECK(tree.graph.size() == 2);  // the place unit cannot be skipped
}

TEST_CASE("retrieval is deterministic") {
    Gen gen(11);
    auto inst = gen.instance(18);
    for (const auto& goal : inst.pool) {
        try {
            auto t1 = retrieve(inst.graph, goal, inst.kitchen);
            auto t2 = retrieve(inst.graph, goal, inst.kitchen);
            CHECK(serialize_graph(t1.graph) == serialize_graph(t2.graph));
        } catch (const RetrievalError&) {
            // determinism of failures is covered by the oracle agreement test
        }
    }
}

TEST_CASE("saturation oracle equals literal subset enumeration on small graphs") {
    Gen gen(22);
    for (int trial = 0; trial < 250; ++trial) {
        auto inst = gen.instance(gen.pick(1, 11));
        Kitchen kitchen = inst.kitchen;
        if (gen.chance(0.4) && kitchen.items.size() > 1)
            kitchen.items.erase(kitchen.items.begin() + gen.pick(0, (int)kitchen.items.size() - 1));
        for (int g = 0; g < 3; ++g) {
            const ObjectNode goal = gen.chance(0.8) ? gen.choose(inst.pool)
                                                    : gen.fresh_descriptor();
            CHECK(foon::test::saturation_reachable(inst.graph, goal, kitchen) ==
                  foon::test::subset_enumeration_reachable(inst.graph, goal, kitchen));
        }
    }
}

TEST_CASE("retrieve agrees with the exhaustive oracle and replays cleanly") {
    Gen gen(33);
    for (int trial = 0; trial < 120; ++trial) {
        auto inst = gen.instance(gen.pick(1, 20));
        // Exercise reduced kitchens to hit unreachable goals too.
        Kitchen kitchen = inst.kitchen;
        if (gen.chance(0.5) && kitchen.items.size() > 1)
            kitchen.items.erase(kitchen.items.begin());
        for (int g = 0; g < 4; ++g) {
            const ObjectNode goal = gen.chance(0.85) ? gen.choose(inst.pool)
                                                     : gen.fresh_descriptor();
            const bool expected = foon::test::saturation_reachable(inst.graph, goal, kitchen);
            bool produced_anywhere = false;
            for (const auto& u : inst.graph.units())
                for (const auto& out : u.outputs)
                    if (node_equals(out, goal)) produced_anywhere = true;

            try {
                auto tree = retrieve(inst.graph, goal, kitchen);
                CHECK(expected);
                CHECK(foon::test::replays_cleanly(tree));
                CHECK(foon::test::no_dead_units(tree));
                // No unit appears twice and all units come from the source graph.
                std::set<std::string> keys;
                for (const auto& u : tree.graph.units()) {
                    CHECK(keys.insert(unit_key(u)).second);
                    bool found = false;
                    for (const auto& src : inst.graph.units())
                        if (unit_equals(src, u)) found = true;
                    CHECK(found);
                }
            } catch (const GoalNotInGraphError&) {
                CHECK_FALSE(expected);
                CHECK_FALSE(produced_anywhere);
            } catch (const UnreachableGoalError&) {
                CHECK_FALSE(expected);
                CHECK(produced_anywhere);
            }
        }
    }
}

TEST_CASE("retrieval handles cyclic support without hanging") {
    // b -> a and a -> b, plus a kitchen route into a.
    FunctionalUnit ab, ba, ka;
    ab.inputs = {make_node("a")};
    ab.motion = make_motion("x");
    ab.outputs = {make_node("b")};
    ba.inputs = {make_node("b")};
    ba.motion = make_motion("y");
    ba.outputs = {make_node("a")};
    ka.inputs = {make_node("k")};
    ka.motion = make_motion("z");
    ka.outputs = {make_node("a")};

    SUBCASE("resolvable through the kitchen route") {
        FoonGraph g({ba, ab, ka});  // cycle candidates first
        Kitchen kitchen = Kitchen::from({make_node("k")});
        auto tree = retrieve(g, make_node("b"), kitchen);
        CHECK(foon::test::replays_cleanly(tree));
        CHECK(tree.graph.size() == 2);
    }
    SUBCASE("pure cycle is unreachable") {
        FoonGraph g({ba, ab});
        Kitchen kitchen = Kitchen::from({make_node("k")});
        CHECK_THROWS_AS(retrieve(g, make_node("b"), kitchen), UnreachableGoalError);
    }
    SUBCASE("failures caused by the search path are not cached") {
        // Solving z needs a and b. Solving a first walks into the a/b cycle
        // and b fails *in that context*; b is still reachable once a is
        // settled through the kitchen. A naive failure cache would wrongly
        // declare z unreachable.
        FunctionalUnit z;
        z.inputs = {make_node("a"), make_node("b")};
        z.motion = make_motion("combine");
        z.outputs = {make_node("z")};
        FoonGraph g({ba, ab, ka, z});  // cycle-first candidate order
        Kitchen kitchen = Kitchen::from({make_node("k")});
        auto tree = retrieve(g, make_node("z"), kitchen);
        CHECK(foon::test::replays_cleanly(tree));
        CHECK(tree.graph.size() == 3);  // ka, ab, z
    }
}

TEST_CASE("reachable_goals") {
    SUBCASE("lemon graph closure") {
        auto goals = reachable_goals(lemon_graph(), lemon_kitchen());
        REQUIRE(goals.size() == 2);
        std::set<std::string> keys;
        for (const auto& g : goals) keys.insert(node_key(g));
        CHECK(keys.count(node_key(make_node("lemon", {"sliced"}))) == 1);
        CHECK(keys.count(node_key(
                  make_node("lemon", {"whole"}, {}, Relation::on, "cutting board"))) == 1);
    }
    SUBCASE("empty kitchen and no zero-input units") {
        CHECK(reachable_goals(lemon_graph(), Kitchen{}).empty());
    }
    SUBCASE("consistency: reachable iff retrieve succeeds") {
        Gen gen(44);
        for (int trial = 0; trial < 40; ++trial) {
            auto inst = gen.instance(gen.pick(1, 14));
            auto goals = reachable_goals(inst.graph, inst.kitchen);
            std::set<std::string> reachable_keys;
            for (const auto& g : goals) reachable_keys.insert(node_key(g));
            for (const auto& goal : inst.pool) {
                if (inst.kitchen.contains(goal)) continue;
                const bool expected = reachable_keys.count(node_key(goal)) > 0;
                bool succeeded = true;
                try {
                    retrieve(inst.graph, goal, inst.kitchen);
                } catch (const RetrievalError&) {
                    succeeded = false;
                }
                CHECK(succeeded == expected);
            }
        }
    }
}
