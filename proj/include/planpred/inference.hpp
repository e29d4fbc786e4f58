#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planpred/plans.hpp"

namespace planpred {

// Which posterior model to run: "full" marginalizes a per-goal action
// likelihood over each goal's plan set; "ppo" replaces that likelihood with
// a plan-predictability term normalized across every candidate's plans.
enum class Model { Full, Ppo };

// How the probability terms inside the model sums are normalized.
// Conventional is the default; paper_literal swaps in the alternative
// normalizations (per-goal predictability, plan prior spread across
// requirement-identical candidates) so the two readings can be compared.
enum class Normalization { Conventional, PaperLiteral };

std::string to_token(Model model);
std::string to_token(Normalization normalization);
Model model_from_token(const std::string& token);                  // throws ParseError
Normalization normalization_from_token(const std::string& token);  // throws ParseError

struct ModelConfig {
    double beta1 = 0.3;  // plan choice rationality
    double beta2 = 0.3;  // action likelihood sharpness (full model)
    double beta3 = 0.5;  // plan predictability bias (ppo model)
    Model model = Model::Full;
    Normalization normalization = Normalization::Conventional;
};

// One inference problem: a grid, what the agent has done so far, and the
// candidate goal products the observer chooses between.
struct Task {
    Grid grid;
    Observation observation;
    std::vector<GoalProduct> candidates;
};

// A task plus the stable identifier used to join it with participant data
// and report rows (usually the task file's name stem).
struct TaskEntry {
    std::string id;
    Task task;
};

struct GoalPosterior {
    std::map<std::string, double> probs;  // goal id -> probability, sums to 1
};

// Per-plan probability that each plan is the one being executed, keyed by
// goal id and aligned with that goal's plan enumeration order.
struct PlanPredictability {
    std::map<std::string, std::vector<double>> probs;
};

// Checks grid, observation, and candidate well-formedness. Empty = valid.
std::vector<std::string> validate_task(const Task& task);

// exp(beta * v_i) / sum_j exp(beta * v_j), max-subtracted for stability.
// -infinity entries are excluded and get probability 0; results below
// 1e-300 flush to 0 before a final renormalization.
// Throws DomainError("no feasible support") when no entry is finite.
std::vector<double> softmax(const std::vector<double>& values, double beta);

// Probability the agent picks each plan of one goal before anything is
// observed: softmax of -beta1 * cost over the goal's own plans.
std::vector<double> plan_prior(const std::vector<ScoredPlan>& scored, double beta1);

// Probability of the observation under each of one goal's plans: softmax of
// -beta2 * remaining_cost over the goal's plans, infeasible plans excluded.
// All plans infeasible -> all zeros (the goal drops out of the posterior).
std::vector<double> full_likelihood(const std::vector<ScoredPlan>& scored, double beta2);

// Probability that each plan (across ALL candidates) is the one being
// executed, given the observation. Conventional: one softmax of
// -beta3 * remaining_cost over the union of all feasible plans.
// paper_literal: the softmax runs per goal instead.
// Throws DomainError("observation inconsistent with all plans") when no
// candidate retains a feasible plan.
PlanPredictability plan_predictability(const std::map<std::string, std::vector<ScoredPlan>>& scored,
                                       double beta3,
                                       Normalization normalization = Normalization::Conventional);

GoalPosterior full_model_posterior(const Task& task, const ModelConfig& config);
GoalPosterior ppo_model_posterior(const Task& task, const ModelConfig& config);

// Dispatches on config.model.
GoalPosterior infer(const Task& task, const ModelConfig& config);

// Extra per-goal numbers the CLI prints alongside the posterior.
struct GoalDiagnostics {
    int plan_count = 0;
    int feasible_count = 0;
    std::optional<int> min_cost;
    std::optional<int> min_remaining;  // over feasible plans
};

struct InferenceReport {
    ModelConfig config;
    GoalPosterior posterior;
    std::map<std::string, GoalDiagnostics> diagnostics;
};

InferenceReport infer_with_diagnostics(const Task& task, const ModelConfig& config);

}  // namespace planpred
