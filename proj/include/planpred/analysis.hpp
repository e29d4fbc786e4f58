#pragma once

#include <map>
#include <string>
#include <vector>

#include "planpred/inference.hpp"

namespace planpred {

// One participant's answers for one task: a 1-7 rating per candidate plus
// the candidate they picked as most likely.
struct ParticipantRecord {
    std::string participant_id;
    std::string task_id;
    std::map<std::string, int> scores;  // candidate id -> rating in [1, 7]
    std::string selected;
};

// Records grouped per participant, keyed by task id.
using ParticipantData = std::map<std::string, std::map<std::string, ParticipantRecord>>;

ParticipantData group_by_participant(const std::vector<ParticipantRecord>& records);

struct ExclusionLog {
    std::vector<std::string> valid;                 // surviving participant ids
    std::map<std::string, std::string> excluded;    // participant id -> first reason
};

// Drops participants who, on any task, rated every candidate identically or
// picked a candidate that does not hold the (possibly tied) top rating.
// Throws DomainError("incomplete record ...") when a participant is missing
// a task or a candidate score.
ExclusionLog exclude_invalid(const ParticipantData& data, const std::vector<TaskEntry>& tasks);

// Ratings serialized over (task order x candidate order); with the standard
// nine tasks of four candidates this has length 36.
std::vector<double> score_vector(const std::map<std::string, ParticipantRecord>& by_task,
                                 const std::vector<TaskEntry>& tasks);

// Elementwise mean of the valid participants' score vectors.
std::vector<double> average_score_vector(const ParticipantData& data,
                                         const std::vector<std::string>& valid,
                                         const std::vector<TaskEntry>& tasks);

// Posterior probabilities serialized in the same (task, candidate) order.
std::vector<double> model_vector(const std::vector<TaskEntry>& tasks, const ModelConfig& config);

struct CorrelationReport {
    double r = 0.0;
    double p_value = 1.0;
    int n = 0;
};

// Sample Pearson correlation; two-tailed p via the t transform
// t = r * sqrt((n-2) / (1-r^2)) with n-2 degrees of freedom.
// Throws DomainError("degenerate vector") on zero variance, and
// DomainError on length mismatch or n < 3.
CorrelationReport pearson(const std::vector<double>& x, const std::vector<double>& y);

struct PairedTResult {
    double t = 0.0;
    double p_value = 1.0;
    int n = 0;
};

// Standard paired t test on elementwise differences (two-tailed).
// Equal lists give t = 0, p = 1; mismatched lengths are an error.
PairedTResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct TaskCorrelation {
    std::string task_id;
    int k_minus_n = 0;      // task complexity factor
    double r_full = 0.0;
    double r_ppo = 0.0;
    bool degenerate = false;  // constant vectors; skipped downstream
};

// Correlates the participants' average per-task rating block (length =
// candidate count) with each model's posterior, task by task.
std::vector<TaskCorrelation> per_task_report(const std::vector<TaskEntry>& tasks,
                                             const ParticipantData& data,
                                             const std::vector<std::string>& valid,
                                             const ModelConfig& base_config);

// Pearson r of per-task correlations against the k-n complexity factor,
// skipping degenerate tasks. Needs at least 3 usable tasks.
CorrelationReport complexity_correlation(const std::vector<TaskCorrelation>& rows, Model model);

struct BetaFitResult {
    std::string participant_id;
    double best_beta3 = 0.0;
    std::map<double, double> per_beta_r;  // beta3 grid value -> r
};

struct BetaFitSummary {
    std::vector<BetaFitResult> fits;
    std::map<double, int> histogram;  // best beta3 -> participant count
    double avg_r_full = 0.0;          // full model at the base config
    double avg_r_ppo_same = 0.0;      // ppo at the shared base beta3
    double avg_r_ppo_individual = 0.0;  // ppo at each participant's best beta3
};

// The beta3 grid searched per participant: 0.0 to 1.0 in steps of 0.1.
std::vector<double> beta3_grid();

// Fits beta3 per participant by grid search on the correlation with the
// ppo model vector (ties resolved toward the smallest value), and averages
// the resulting correlations for the three-way model comparison.
BetaFitSummary fit_beta3(const std::vector<TaskEntry>& tasks,
                         const ParticipantData& data,
                         const std::vector<std::string>& valid,
                         const ModelConfig& base_config);

}  // namespace planpred
