#include "planpred/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "planpred/complexity.hpp"
#include "planpred/errors.hpp"

namespace planpred {

namespace {

double two_tailed_t_p(double t, double dof) {
    if (!std::isfinite(t)) return 0.0;
    boost::math::students_t_distribution<double> dist(dof);
    return 2.0 * boost::math::cdf(dist, -std::abs(t));
}

double mean_of(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

const ParticipantRecord& record_for(const std::map<std::string, ParticipantRecord>& by_task,
                                    const std::string& participant_id,
                                    const std::string& task_id) {
    auto it = by_task.find(task_id);
    if (it == by_task.end()) {
        throw DomainError("ordering mismatch: participant '" + participant_id +
                          "' has no record for task '" + task_id + "'");
    }
    return it->second;
}

}  // namespace

ParticipantData group_by_participant(const std::vector<ParticipantRecord>& records) {
    ParticipantData data;
    for (const ParticipantRecord& record : records) {
        auto [it, inserted] = data[record.participant_id].emplace(record.task_id, record);
        if (!inserted) {
            throw DomainError("duplicate record for participant '" + record.participant_id +
                              "' on task '" + record.task_id + "'");
        }
    }
    return data;
}

ExclusionLog exclude_invalid(const ParticipantData& data, const std::vector<TaskEntry>& tasks) {
    ExclusionLog log;
    for (const auto& [participant_id, by_task] : data) {
        std::string reason;
        for (const TaskEntry& entry : tasks) {
            auto it = by_task.find(entry.id);
            if (it == by_task.end()) {
                throw DomainError("incomplete record: participant '" + participant_id +
                                  "' is missing task '" + entry.id + "'");
            }
            const ParticipantRecord& record = it->second;
            if (record.scores.size() != entry.task.candidates.size()) {
                throw DomainError("incomplete record: participant '" + participant_id +
                                  "' scored " + std::to_string(record.scores.size()) + " of " +
                                  std::to_string(entry.task.candidates.size()) + " candidates on task '" +
                                  entry.id + "'");
            }

            int max_score = 0;
            int min_score = 8;
            for (const GoalProduct& goal : entry.task.candidates) {
                auto score_it = record.scores.find(goal.id);
                if (score_it == record.scores.end()) {
                    throw DomainError("incomplete record: participant '" + participant_id +
                                      "' has no score for candidate '" + goal.id + "' on task '" +
                                      entry.id + "'");
                }
                if (score_it->second < 1 || score_it->second > 7) {
                    throw DomainError("score out of range for participant '" + participant_id +
                                      "' on task '" + entry.id + "'");
                }
                max_score = std::max(max_score, score_it->second);
                min_score = std::min(min_score, score_it->second);
            }
            auto selected_it = record.scores.find(record.selected);
            if (selected_it == record.scores.end()) {
                throw DomainError("incomplete record: participant '" + participant_id +
                                  "' selected unknown candidate '" + record.selected + "' on task '" +
                                  entry.id + "'");
            }

            if (max_score == min_score) {
                reason = "uniform scores on task '" + entry.id + "'";
                break;
            }
            // A tie with another candidate at the top still counts as
            // holding the highest score.
            if (selected_it->second != max_score) {
                reason = "selected candidate not top-rated on task '" + entry.id + "'";
                break;
            }
        }
        if (reason.empty()) {
            log.valid.push_back(participant_id);
        } else {
            log.excluded[participant_id] = reason;
        }
    }
    return log;
}

std::vector<double> score_vector(const std::map<std::string, ParticipantRecord>& by_task,
                                 const std::vector<TaskEntry>& tasks) {
    if (tasks.empty()) throw DomainError("no tasks");
    const std::string participant_id =
        by_task.empty() ? std::string("?") : by_task.begin()->second.participant_id;
    std::vector<double> values;
    for (const TaskEntry& entry : tasks) {
        const ParticipantRecord& record = record_for(by_task, participant_id, entry.id);
        for (const GoalProduct& goal : entry.task.candidates) {
            auto it = record.scores.find(goal.id);
            if (it == record.scores.end()) {
                throw DomainError("ordering mismatch: no score for candidate '" + goal.id +
                                  "' on task '" + entry.id + "'");
            }
            values.push_back(static_cast<double>(it->second));
        }
    }
    return values;
}

std::vector<double> average_score_vector(const ParticipantData& data,
                                         const std::vector<std::string>& valid,
                                         const std::vector<TaskEntry>& tasks) {
    if (valid.empty()) throw DomainError("no valid participants");
    std::vector<double> sum;
    for (const std::string& participant_id : valid) {
        auto it = data.find(participant_id);
        if (it == data.end()) throw DomainError("unknown participant '" + participant_id + "'");
        std::vector<double> v = score_vector(it->second, tasks);
        if (sum.empty()) sum.assign(v.size(), 0.0);
        if (v.size() != sum.size()) throw DomainError("ordering mismatch: score vector lengths differ");
        for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
    }
    for (double& s : sum) s /= static_cast<double>(valid.size());
    return sum;
}

std::vector<double> model_vector(const std::vector<TaskEntry>& tasks, const ModelConfig& config) {
    if (tasks.empty()) throw DomainError("no tasks");
    std::vector<double> values;
    for (const TaskEntry& entry : tasks) {
        GoalPosterior posterior = infer(entry.task, config);
        for (const GoalProduct& goal : entry.task.candidates) {
            values.push_back(posterior.probs.at(goal.id));
        }
    }
    return values;
}

CorrelationReport pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("length mismatch");
    const int n = static_cast<int>(x.size());
    if (n < 3) throw DomainError("need at least 3 points");

    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = x[static_cast<std::size_t>(i)] - mx;
        const double dy = y[static_cast<std::size_t>(i)] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DomainError("degenerate vector");

    CorrelationReport report;
    report.n = n;
    report.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    if (std::abs(report.r) == 1.0) {
        report.p_value = 0.0;
    } else {
        const double t = report.r * std::sqrt((n - 2) / (1.0 - report.r * report.r));
        report.p_value = two_tailed_t_p(t, static_cast<double>(n - 2));
    }
    return report;
}

PairedTResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DomainError("length mismatch");
    const int n = static_cast<int>(a.size());
    if (n < 2) throw DomainError("need at least 2 pairs");

    std::vector<double> diffs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diffs[i] = a[i] - b[i];
    const double mean_diff = mean_of(diffs);
    double ss = 0.0;
    for (double d : diffs) ss += (d - mean_diff) * (d - mean_diff);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    PairedTResult result;
    result.n = n;
    if (sd == 0.0) {
        if (mean_diff == 0.0) {
            result.t = 0.0;
            result.p_value = 1.0;
        } else {
            result.t = mean_diff > 0 ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
            result.p_value = 0.0;
        }
        return result;
    }
    result.t = mean_diff / (sd / std::sqrt(static_cast<double>(n)));
    result.p_value = two_tailed_t_p(result.t, static_cast<double>(n - 1));
    return result;
}

std::vector<TaskCorrelation> per_task_report(const std::vector<TaskEntry>& tasks,
                                             const ParticipantData& data,
                                             const std::vector<std::string>& valid,
                                             const ModelConfig& base_config) {
    if (valid.empty()) throw DomainError("no valid participants");
    std::vector<TaskCorrelation> rows;
    for (const TaskEntry& entry : tasks) {
        TaskCorrelation row;
        row.task_id = entry.id;
        ComplexitySignature signature = complexity_signature(entry.task);
        row.k_minus_n = signature.k - signature.n;

        // Participants' mean rating per candidate, in candidate order.
        std::vector<double> human(entry.task.candidates.size(), 0.0);
        for (const std::string& participant_id : valid) {
            const ParticipantRecord& record = record_for(data.at(participant_id), participant_id, entry.id);
            for (std::size_t i = 0; i < entry.task.candidates.size(); ++i) {
                human[i] += static_cast<double>(record.scores.at(entry.task.candidates[i].id));
            }
        }
        for (double& h : human) h /= static_cast<double>(valid.size());

        ModelConfig full_config = base_config;
        full_config.model = Model::Full;
        ModelConfig ppo_config = base_config;
        ppo_config.model = Model::Ppo;
        std::vector<double> post_full, post_ppo;
        GoalPosterior full = infer(entry.task, full_config);
        GoalPosterior ppo = infer(entry.task, ppo_config);
        for (const GoalProduct& goal : entry.task.candidates) {
            post_full.push_back(full.probs.at(goal.id));
            post_ppo.push_back(ppo.probs.at(goal.id));
        }

        try {
            row.r_full = pearson(human, post_full).r;
            row.r_ppo = pearson(human, post_ppo).r;
        } catch (const DomainError&) {
            row.degenerate = true;
            row.r_full = 0.0;
            row.r_ppo = 0.0;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CorrelationReport complexity_correlation(const std::vector<TaskCorrelation>& rows, Model model) {
    std::vector<double> factor, rs;
    for (const TaskCorrelation& row : rows) {
        if (row.degenerate) continue;
        factor.push_back(static_cast<double>(row.k_minus_n));
        rs.push_back(model == Model::Full ? row.r_full : row.r_ppo);
    }
    if (factor.size() < 3) throw DomainError("need at least 3 usable tasks");
    return pearson(factor, rs);
}

std::vector<double> beta3_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(static_cast<double>(i) / 10.0);
    return grid;
}

BetaFitSummary fit_beta3(const std::vector<TaskEntry>& tasks,
                         const ParticipantData& data,
                         const std::vector<std::string>& valid,
                         const ModelConfig& base_config) {
    if (valid.empty()) throw DomainError("no valid participants");

    ModelConfig full_config = base_config;
    full_config.model = Model::Full;
    const std::vector<double> full_vector = model_vector(tasks, full_config);

    ModelConfig ppo_base = base_config;
    ppo_base.model = Model::Ppo;
    const std::vector<double> ppo_base_vector = model_vector(tasks, ppo_base);

    const std::vector<double> grid = beta3_grid();
    std::map<double, std::vector<double>> ppo_vectors;
    for (double beta3 : grid) {
        ModelConfig config = ppo_base;
        config.beta3 = beta3;
        ppo_vectors[beta3] = model_vector(tasks, config);
    }

    BetaFitSummary summary;
    for (double beta3 : grid) summary.histogram[beta3] = 0;

    double sum_full = 0.0, sum_same = 0.0, sum_individual = 0.0;
    for (const std::string& participant_id : valid) {
        const std::vector<double> scores = score_vector(data.at(participant_id), tasks);

        BetaFitResult fit;
        fit.participant_id = participant_id;
        double best_r = -2.0;
        for (double beta3 : grid) {
            const double r = pearson(scores, ppo_vectors.at(beta3)).r;
            fit.per_beta_r[beta3] = r;
            if (r > best_r) {  // ties keep the smallest beta3
                best_r = r;
                fit.best_beta3 = beta3;
            }
        }
        summary.histogram[fit.best_beta3] += 1;

        sum_full += pearson(scores, full_vector).r;
        sum_same += pearson(scores, ppo_base_vector).r;
        sum_individual += best_r;
        summary.fits.push_back(std::move(fit));
    }

    const double count = static_cast<double>(valid.size());
    summary.avg_r_full = sum_full / count;
    summary.avg_r_ppo_same = sum_same / count;
    summary.avg_r_ppo_individual = sum_individual / count;
    return summary;
}

}  // namespace planpred
