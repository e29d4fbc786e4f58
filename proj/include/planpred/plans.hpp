#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planpred/gridworld.hpp"

namespace planpred {

// A candidate "goal product": the item an agent may be assembling. Each
// required slot names a part type and the color the product needs; slots
// are kept sorted by collection priority and types are pairwise distinct.
struct GoalProduct {
    std::string id;
    std::vector<std::pair<PartType, std::string>> required;

    friend bool operator==(const GoalProduct&, const GoalProduct&) = default;
};

// Sorts required slots by priority and checks the 2..4 distinct-type rule.
// Returns violations; empty means ok.
std::vector<std::string> normalize_goal(GoalProduct& goal);

// A concrete way to build a goal product: one grid part instance per
// required slot. Keyed by part type, so iteration follows pickup priority.
struct Plan {
    std::string goal_id;
    std::map<PartType, std::string> assignment;  // type -> part instance id

    friend bool operator==(const Plan&, const Plan&) = default;
};

struct PlanSet {
    std::string goal_id;
    std::vector<Plan> plans;
};

// An observed prefix of agent behavior: the walked path plus the parts it
// picked up (derived, in pickup order). The agent currently stands on the
// last path cell.
struct Observation {
    Path path;
    std::vector<PartInstance> collected;

    Position current() const { return path.cells.back(); }
};

// Builds an Observation from a path, deriving the collected parts.
// The path must already be valid for the grid.
Observation make_observation(const Grid& grid, const Path& path);

// Convenience: an observation that has seen no movement at all.
Observation empty_observation(const Grid& grid);

struct ConsistencyResult {
    bool consistent = false;
    std::string reason;  // set when inconsistent
};

// A plan together with its full route cost and the cost of completing it
// from the observed position. remaining_cost is empty when the observation
// rules the plan out entirely (wrong or extra pickups).
struct ScoredPlan {
    Plan plan;
    int cost = 0;
    std::optional<int> remaining_cost;

    bool feasible() const { return remaining_cost.has_value(); }
};

// All ways to realize a goal on this grid: the Cartesian product, per
// required slot, of the grid instances matching that slot's type and color.
// Plans come out in lexicographic (slot-major, id-sorted) order. A slot
// with no matching instance yields an empty plan set.
PlanSet enumerate_plans(const Grid& grid, const GoalProduct& goal);

// Part positions of the plan's assignment in pickup-priority order.
// Throws DomainError("unknown part ...") for dangling instance ids.
std::vector<Position> plan_waypoints(const Grid& grid, const Plan& plan);

// Shortest route length from the agent start through the plan's parts in
// priority order.
int plan_cost(const Grid& grid, const Plan& plan);

// An observation is consistent with a plan iff the collected parts are,
// in order, exactly the plan's first assignments by priority (matching
// instance ids, not just type/color).
ConsistencyResult check_consistency(const Plan& plan, const Observation& obs);

// Cost of finishing the plan from the observed position: route through the
// not-yet-collected slots in priority order. Empty when inconsistent.
std::optional<int> remaining_cost(const Grid& grid, const Plan& plan, const Observation& obs);

// Scores every plan of every goal against the observation.
std::map<std::string, std::vector<ScoredPlan>> score_plans(const Grid& grid,
                                                           const std::vector<GoalProduct>& goals,
                                                           const Observation& obs);

}  // namespace planpred
