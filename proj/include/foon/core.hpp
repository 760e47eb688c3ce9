#pragma once

// In-memory FOON graph model: object/motion nodes, functional units,
// graphs, task trees, merging and topological ordering.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace foon {

// Containment/placement context of an object ("motion identifier flag").
// Recipe generation uses it to resolve source/target clauses; node identity
// and availability matching include it as well.
enum class Relation { none, in, on, under };

std::string_view to_string(Relation r);
std::optional<Relation> relation_from(std::string_view s);

struct ObjectNode {
    std::string name;
    std::vector<std::string> states;       // insertion order, no duplicates
    std::vector<std::string> ingredients;  // insertion order, no duplicates
    Relation relation = Relation::none;
    std::string relation_target;           // non-empty iff relation != none
};

struct MotionNode {
    std::string label;
    std::string start_time;  // opaque timestamp, empty = absent
    std::string end_time;
};

// One action: input object nodes, a motion node, output object nodes.
// Outputs may be fewer than inputs (not every object changes state).
struct FunctionalUnit {
    std::vector<ObjectNode> inputs;
    MotionNode motion;
    std::vector<ObjectNode> outputs;
};

// Lowercases ASCII, trims, collapses inner whitespace/control runs to one space.
std::string normalize_token(std::string_view s);

// Builds a node with all string fields normalized and states/ingredients
// de-duplicated. The parser and tests go through this.
ObjectNode make_node(std::string_view name,
                     std::vector<std::string> states = {},
                     std::vector<std::string> ingredients = {},
                     Relation relation = Relation::none,
                     std::string_view relation_target = {});

MotionNode make_motion(std::string_view label,
                       std::string_view start_time = {},
                       std::string_view end_time = {});

// Node equality: name, state set, ingredient set (both order-insensitive)
// and relation. Timestamps never participate in identity.
bool node_equals(const ObjectNode& a, const ObjectNode& b);

// Unit equality: equal motion labels and input/output node multisets.
bool unit_equals(const FunctionalUnit& a, const FunctionalUnit& b);

// Canonical identity keys; key equality coincides with node_equals /
// unit_equals for normalized nodes. Used for hashing and fast dedup.
std::string node_key(const ObjectNode& n);
std::string unit_key(const FunctionalUnit& u);

// Ordered collection of functional units plus a derived node index.
// Immutable after construction; safe to share across threads.
class FoonGraph {
public:
    struct IndexEntry {
        std::vector<std::size_t> producers;  // units with this node as output
        std::vector<std::size_t> consumers;  // units with this node as input
    };

    FoonGraph() = default;
    explicit FoonGraph(std::vector<FunctionalUnit> units);

    const std::vector<FunctionalUnit>& units() const { return units_; }
    std::size_t size() const { return units_.size(); }
    bool empty() const { return units_.empty(); }

    const std::unordered_map<std::string, IndexEntry>& node_index() const { return index_; }
    const IndexEntry* find(const ObjectNode& node) const;

private:
    std::vector<FunctionalUnit> units_;
    std::unordered_map<std::string, IndexEntry> index_;
};

// A retrieval result: units executable from `kitchen` toward `goal`.
// Unit order is an execution order (every input of unit k is in the kitchen
// or an output of an earlier unit).
struct TaskTree {
    FoonGraph graph;
    ObjectNode goal;
    std::vector<ObjectNode> kitchen;
};

// Union of all units with duplicates (unit_equals) removed, first
// occurrence order preserved. merge({}) is the empty graph.
FoonGraph merge(const std::vector<FoonGraph>& graphs);

struct Violation {
    std::size_t unit = 0;  // index of the offending unit
    std::string message;
};

// Checks every type invariant; returns one entry per broken invariant.
// Violations are data, not errors.
std::vector<Violation> validate(const FoonGraph& graph);

class CycleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Stable executable order: repeatedly emits the earliest unit whose inputs
// are all available. Throws CycleError when no such order exists.
std::vector<FunctionalUnit> topological_order(const TaskTree& tree);

}  // namespace foon
