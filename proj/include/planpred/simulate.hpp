#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "planpred/analysis.hpp"
#include "planpred/complexity.hpp"
#include "planpred/inference.hpp"
#include "planpred/rng.hpp"

namespace planpred {

// Controls the rejection-sampling stimulus search.
struct GeneratorSpec {
    ComplexitySignature signature;
    int width = 10;
    int height = 10;
    int min_instances = 1;  // instance count range per (type, color) pair
    int max_instances = 3;
    std::vector<std::string> palette = {"red", "green", "blue"};
    ModelConfig config;  // betas used to rank candidate products
    std::uint64_t seed = 0;
    int max_attempts = 10000;
    bool require_disagreement = false;
};

// The agent behavior a generated task was derived from: which product it
// was really building, the chosen plan, and the full walked route.
struct TrajectorySample {
    std::string goal_id;
    Plan plan;
    Path path;
};

struct GeneratedTask {
    Task task;
    TrajectorySample trajectory;
    int attempts = 0;  // rejection-sampling attempts consumed
};

// Draws one plan for the goal according to the Boltzmann plan-choice
// distribution at beta1. Throws DomainError when the goal has no plans.
Plan sample_plan(const Grid& grid, const GoalProduct& goal, double beta1, Rng& rng);

// Walks a shortest route through the plan's parts in pickup-priority order,
// stepping along x before y within each leg, truncated after prefix_steps
// moves (0 gives the single-cell path at the agent start).
Path execute_plan(const Grid& grid, const Plan& plan, int prefix_steps);

// Searches seeded random layouts until one matches the requested complexity
// signature (and, if asked, makes the two models disagree about the most
// likely candidate). Throws DomainError("no task found ...") when
// max_attempts is exhausted and DomainError up front when the palette or
// instance ranges cannot possibly satisfy the signature.
GeneratedTask generate_task(const GeneratorSpec& spec);

// Simulated raters: each scores every candidate by the configured model's
// posterior mapped onto the 1-7 scale plus clamped Gaussian noise, and
// selects their top-scored candidate.
std::vector<ParticipantRecord> synth_participants(const std::vector<TaskEntry>& tasks,
                                                  const ModelConfig& config,
                                                  double noise_sd,
                                                  int count,
                                                  std::uint64_t seed);

}  // namespace planpred
