#include "planpred/plans.hpp"

#include <algorithm>

#include "planpred/errors.hpp"

namespace planpred {

std::vector<std::string> normalize_goal(GoalProduct& goal) {
    std::vector<std::string> violations;
    std::stable_sort(goal.required.begin(), goal.required.end(),
                     [](const auto& a, const auto& b) { return priority(a.first) < priority(b.first); });
    if (goal.required.size() < 2 || goal.required.size() > 4) {
        violations.push_back("goal '" + goal.id + "' needs between 2 and 4 part types, got " +
                             std::to_string(goal.required.size()));
    }
    for (std::size_t i = 0; i + 1 < goal.required.size(); ++i) {
        if (goal.required[i].first == goal.required[i + 1].first) {
            violations.push_back("goal '" + goal.id + "' repeats part type '" +
                                 to_token(goal.required[i].first) + "'");
        }
    }
    for (const auto& [type, color] : goal.required) {
        if (color.empty()) {
            violations.push_back("goal '" + goal.id + "' has empty color for type '" + to_token(type) + "'");
        }
    }
    return violations;
}

Observation make_observation(const Grid& grid, const Path& path) {
    return Observation{path, collected_along(grid, path)};
}

Observation empty_observation(const Grid& grid) {
    return Observation{Path{{grid.agent_start}}, {}};
}

PlanSet enumerate_plans(const Grid& grid, const GoalProduct& goal) {
    PlanSet set{goal.id, {}};

    // Candidate instance ids per required slot, sorted for stable output.
    std::vector<std::vector<std::string>> slots;
    for (const auto& [type, color] : goal.required) {
        std::vector<std::string> ids;
        for (const auto& part : grid.parts) {
            if (part.type == type && part.color == color) ids.push_back(part.id);
        }
        std::sort(ids.begin(), ids.end());
        if (ids.empty()) return set;  // goal impossible on this grid
        slots.push_back(std::move(ids));
    }
    if (slots.empty()) return set;

    std::vector<std::size_t> odometer(slots.size(), 0);
    while (true) {
        Plan plan;
        plan.goal_id = goal.id;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            plan.assignment[goal.required[i].first] = slots[i][odometer[i]];
        }
        set.plans.push_back(std::move(plan));

        // Advance, last slot fastest.
        std::size_t i = slots.size();
        while (i > 0) {
            --i;
            if (++odometer[i] < slots[i].size()) break;
            odometer[i] = 0;
            if (i == 0) return set;
        }
    }
}

std::vector<Position> plan_waypoints(const Grid& grid, const Plan& plan) {
    std::vector<Position> waypoints;
    for (const auto& [type, id] : plan.assignment) {
        const PartInstance* part = grid.part_by_id(id);
        if (!part) throw DomainError("unknown part '" + id + "' in plan for goal '" + plan.goal_id + "'");
        waypoints.push_back(part->pos);
    }
    return waypoints;
}

int plan_cost(const Grid& grid, const Plan& plan) {
    return route_cost(grid.agent_start, plan_waypoints(grid, plan));
}

ConsistencyResult check_consistency(const Plan& plan, const Observation& obs) {
    std::vector<std::pair<PartType, std::string>> expected(plan.assignment.begin(), plan.assignment.end());
    if (obs.collected.size() > expected.size()) {
        return {false, "collected " + std::to_string(obs.collected.size()) + " parts, plan needs only " +
                           std::to_string(expected.size())};
    }
    for (std::size_t i = 0; i < obs.collected.size(); ++i) {
        if (obs.collected[i].id != expected[i].second) {
            return {false, "collected part '" + obs.collected[i].id + "' where plan expects '" +
                               expected[i].second + "'"};
        }
    }
    return {true, {}};
}

std::optional<int> remaining_cost(const Grid& grid, const Plan& plan, const Observation& obs) {
    if (!check_consistency(plan, obs).consistent) return std::nullopt;
    std::vector<Position> waypoints = plan_waypoints(grid, plan);
    std::vector<Position> rest(waypoints.begin() + static_cast<std::ptrdiff_t>(obs.collected.size()),
                               waypoints.end());
    return route_cost(obs.current(), rest);
}

std::map<std::string, std::vector<ScoredPlan>> score_plans(const Grid& grid,
                                                           const std::vector<GoalProduct>& goals,
                                                           const Observation& obs) {
    std::map<std::string, std::vector<ScoredPlan>> scored;
    for (const auto& goal : goals) {
        PlanSet set = enumerate_plans(grid, goal);
        std::vector<ScoredPlan>& list = scored[goal.id];
        list.reserve(set.plans.size());
        for (auto& plan : set.plans) {
            ScoredPlan sp;
            sp.cost = plan_cost(grid, plan);
            sp.remaining_cost = remaining_cost(grid, plan, obs);
            sp.plan = std::move(plan);
            list.push_back(std::move(sp));
        }
    }
    return scored;
}

}  // namespace planpred
