#pragma once

// Task-tree retrieval: given a universal FOON, a goal node and a kitchen
// inventory, extract an executable task tree. Search is depth-wise over
// candidate producing units (unit-list order, backtracking) and
// breadth-wise over each candidate's inputs, with per-call memoization.

#include <stdexcept>
#include <string>
#include <vector>

#include "foon/core.hpp"

namespace foon {

struct Kitchen {
    std::vector<ObjectNode> items;  // no duplicate descriptors

    // De-duplicates while preserving first-occurrence order.
    static Kitchen from(std::vector<ObjectNode> items);
    bool contains(const ObjectNode& node) const;
};

class RetrievalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The goal never appears as any unit's output (and is not in the kitchen).
class GoalNotInGraphError : public RetrievalError {
public:
    using RetrievalError::RetrievalError;
};

// The goal appears in the graph but no executable tree exists from this kitchen.
class UnreachableGoalError : public RetrievalError {
public:
    using RetrievalError::RetrievalError;
};

// Extracts an executable task tree producing `goal` from `kitchen`.
// Returns an empty tree when the goal is already a kitchen item. Unit order
// in the returned tree is an execution order. Deterministic.
TaskTree retrieve(const FoonGraph& foon, const ObjectNode& goal, const Kitchen& kitchen);

// Forward closure: every descriptor producible from the kitchen, minus the
// kitchen itself. Sorted for deterministic output.
std::vector<ObjectNode> reachable_goals(const FoonGraph& foon, const Kitchen& kitchen);

}  // namespace foon
