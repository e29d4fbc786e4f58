#include "planpred/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "planpred/errors.hpp"

namespace planpred {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlushThreshold = 1e-300;

bool infeasible_value(double v) { return std::isinf(v) && v < 0; }

// Divides by the total, zeroing out denormal dust so downstream sums are
// clean, then renormalizes.
void normalize(std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    for (double& v : values) v /= sum;
    double kept = 0.0;
    for (double& v : values) {
        if (v < kFlushThreshold) v = 0.0;
        kept += v;
    }
    if (kept != 1.0 && kept > 0.0) {
        for (double& v : values) v /= kept;
    }
}

void check_config(const ModelConfig& config) {
    for (double beta : {config.beta1, config.beta2, config.beta3}) {
        if (!std::isfinite(beta) || beta < 0.0) {
            throw DomainError("beta parameters must be finite and nonnegative");
        }
    }
}

void check_task(const Task& task) {
    std::vector<std::string> violations = validate_task(task);
    if (violations.empty()) return;
    std::string joined = "invalid task: " + violations.front();
    for (std::size_t i = 1; i < violations.size(); ++i) joined += "; " + violations[i];
    throw DomainError(joined);
}

// Unnormalized plan-choice weights exp(-beta1 * (cost - shift)). The shift
// is shared across every candidate, so it cancels once goal weights are
// normalized; it only keeps the exponents in floating-point range.
std::vector<double> prior_factors(const std::vector<ScoredPlan>& scored, double beta1, double shift) {
    std::vector<double> factors;
    factors.reserve(scored.size());
    for (const ScoredPlan& sp : scored) {
        factors.push_back(std::exp(-beta1 * (static_cast<double>(sp.cost) - shift)));
    }
    return factors;
}

double min_cost_over_all(const std::map<std::string, std::vector<ScoredPlan>>& scored) {
    double best = kInf;
    for (const auto& [goal_id, list] : scored) {
        for (const ScoredPlan& sp : list) best = std::min(best, static_cast<double>(sp.cost));
    }
    return std::isfinite(best) ? best : 0.0;
}

// Number of candidates whose requirements are identical to this goal's.
// The alternative normalization spreads a plan's prior mass across all of
// them, since such candidates share every plan.
int requirement_group_size(const std::vector<GoalProduct>& candidates, const GoalProduct& goal) {
    int n = 0;
    for (const GoalProduct& other : candidates) {
        if (other.required == goal.required) ++n;
    }
    return n;
}

GoalPosterior posterior_from_weights(const std::vector<std::string>& ids, std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw DomainError("all candidates infeasible");
    }
    normalize(weights);
    GoalPosterior posterior;
    for (std::size_t i = 0; i < ids.size(); ++i) posterior.probs[ids[i]] = weights[i];
    return posterior;
}

GoalPosterior model_posterior(const Task& task, const ModelConfig& config, Model model) {
    check_config(config);
    check_task(task);

    auto scored = score_plans(task.grid, task.candidates, task.observation);
    const double shift = min_cost_over_all(scored);

    std::optional<PlanPredictability> predictability;
    if (model == Model::Ppo) {
        predictability = plan_predictability(scored, config.beta3, config.normalization);
    }

    std::vector<std::string> ids;
    std::vector<double> weights;
    for (const GoalProduct& goal : task.candidates) {
        const std::vector<ScoredPlan>& list = scored.at(goal.id);
        ids.push_back(goal.id);
        if (list.empty()) {
            weights.push_back(0.0);
            continue;
        }

        std::vector<double> per_plan = (model == Model::Full)
                                           ? full_likelihood(list, config.beta2)
                                           : predictability->probs.at(goal.id);

        double weight = 0.0;
        if (config.normalization == Normalization::Conventional) {
            std::vector<double> factors = prior_factors(list, config.beta1, shift);
            for (std::size_t i = 0; i < list.size(); ++i) weight += per_plan[i] * factors[i];
        } else {
            const double group = requirement_group_size(task.candidates, goal);
            for (double p : per_plan) weight += p / group;
        }
        weights.push_back(weight);
    }
    return posterior_from_weights(ids, std::move(weights));
}

}  // namespace

std::string to_token(Model model) {
    return model == Model::Full ? "full" : "ppo";
}

std::string to_token(Normalization normalization) {
    return normalization == Normalization::Conventional ? "conventional" : "paper_literal";
}

Model model_from_token(const std::string& token) {
    if (token == "full") return Model::Full;
    if (token == "ppo") return Model::Ppo;
    throw ParseError("unknown model '" + token + "', expected 'full' or 'ppo'");
}

Normalization normalization_from_token(const std::string& token) {
    if (token == "conventional") return Normalization::Conventional;
    if (token == "paper_literal") return Normalization::PaperLiteral;
    throw ParseError("unknown normalization '" + token + "', expected 'conventional' or 'paper_literal'");
}

std::vector<std::string> validate_task(const Task& task) {
    std::vector<std::string> violations = validate_grid(task.grid);
    if (!violations.empty()) return violations;  // path checks need a sane grid

    std::vector<std::string> path_violations = validate_path(task.grid, task.observation.path);
    violations.insert(violations.end(), path_violations.begin(), path_violations.end());
    if (violations.empty()) {
        std::vector<PartInstance> derived = collected_along(task.grid, task.observation.path);
        bool match = derived.size() == task.observation.collected.size();
        for (std::size_t i = 0; match && i < derived.size(); ++i) {
            match = derived[i].id == task.observation.collected[i].id;
        }
        if (!match) violations.push_back("observation pickup record does not match path");
    }

    if (task.candidates.empty()) violations.push_back("no goal candidates");
    std::set<std::string> seen;
    for (const GoalProduct& goal : task.candidates) {
        if (!seen.insert(goal.id).second) violations.push_back("duplicate goal id '" + goal.id + "'");
        GoalProduct copy = goal;
        std::vector<std::string> goal_violations = normalize_goal(copy);
        violations.insert(violations.end(), goal_violations.begin(), goal_violations.end());
    }
    return violations;
}

std::vector<double> softmax(const std::vector<double>& values, double beta) {
    double best = -kInf;
    for (double v : values) {
        if (infeasible_value(v)) continue;
        if (!std::isfinite(v)) throw DomainError("non-finite value in softmax");
        best = std::max(best, beta * v);
    }
    if (best == -kInf) throw DomainError("no feasible support");

    std::vector<double> probs;
    probs.reserve(values.size());
    for (double v : values) {
        probs.push_back(infeasible_value(v) ? 0.0 : std::exp(beta * v - best));
    }
    normalize(probs);
    return probs;
}

std::vector<double> plan_prior(const std::vector<ScoredPlan>& scored, double beta1) {
    std::vector<double> values;
    values.reserve(scored.size());
    for (const ScoredPlan& sp : scored) values.push_back(-static_cast<double>(sp.cost));
    return softmax(values, beta1);
}

std::vector<double> full_likelihood(const std::vector<ScoredPlan>& scored, double beta2) {
    std::vector<double> values;
    values.reserve(scored.size());
    bool any_feasible = false;
    for (const ScoredPlan& sp : scored) {
        if (sp.feasible()) {
            values.push_back(-static_cast<double>(*sp.remaining_cost));
            any_feasible = true;
        } else {
            values.push_back(-kInf);
        }
    }
    if (!any_feasible) return std::vector<double>(scored.size(), 0.0);
    return softmax(values, beta2);
}

PlanPredictability plan_predictability(const std::map<std::string, std::vector<ScoredPlan>>& scored,
                                       double beta3,
                                       Normalization normalization) {
    PlanPredictability result;
    if (normalization == Normalization::PaperLiteral) {
        bool any_feasible = false;
        for (const auto& [goal_id, list] : scored) {
            if (list.empty()) {
                result.probs[goal_id] = {};
                continue;
            }
            std::vector<double> probs = full_likelihood(list, beta3);
            for (double p : probs) any_feasible = any_feasible || p > 0.0;
            result.probs[goal_id] = std::move(probs);
        }
        if (!any_feasible) throw DomainError("observation inconsistent with all plans");
        return result;
    }

    // One softmax over the union of every candidate's feasible plans.
    std::vector<double> values;
    std::vector<std::pair<std::string, std::size_t>> slots;
    for (const auto& [goal_id, list] : scored) {
        result.probs[goal_id] = std::vector<double>(list.size(), 0.0);
        for (std::size_t i = 0; i < list.size(); ++i) {
            values.push_back(list[i].feasible() ? -static_cast<double>(*list[i].remaining_cost) : -kInf);
            slots.emplace_back(goal_id, i);
        }
    }
    bool any_feasible = false;
    for (double v : values) any_feasible = any_feasible || !infeasible_value(v);
    if (!any_feasible) throw DomainError("observation inconsistent with all plans");

    std::vector<double> probs = softmax(values, beta3);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        result.probs[slots[i].first][slots[i].second] = probs[i];
    }
    return result;
}

GoalPosterior full_model_posterior(const Task& task, const ModelConfig& config) {
    return model_posterior(task, config, Model::Full);
}

GoalPosterior ppo_model_posterior(const Task& task, const ModelConfig& config) {
    return model_posterior(task, config, Model::Ppo);
}

GoalPosterior infer(const Task& task, const ModelConfig& config) {
    return model_posterior(task, config, config.model);
}

InferenceReport infer_with_diagnostics(const Task& task, const ModelConfig& config) {
    InferenceReport report;
    report.config = config;
    report.posterior = infer(task, config);

    auto scored = score_plans(task.grid, task.candidates, task.observation);
    for (const auto& [goal_id, list] : scored) {
        GoalDiagnostics d;
        d.plan_count = static_cast<int>(list.size());
        for (const ScoredPlan& sp : list) {
            if (!d.min_cost || sp.cost < *d.min_cost) d.min_cost = sp.cost;
            if (sp.feasible()) {
                ++d.feasible_count;
                if (!d.min_remaining || *sp.remaining_cost < *d.min_remaining) {
                    d.min_remaining = *sp.remaining_cost;
                }
            }
        }
        report.diagnostics[goal_id] = d;
    }
    return report;
}

}  // namespace planpred
