#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "planpred/analysis.hpp"
#include "planpred/errors.hpp"
#include "test_support.hpp"

using namespace planpred;
using testsupport::goal;
using testsupport::part;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

ParticipantRecord record(std::string pid, std::string tid, std::map<std::string, int> scores,
                         std::string selected) {
    return ParticipantRecord{std::move(pid), std::move(tid), std::move(scores), std::move(selected)};
}

// Two single-plan candidates whose remaining costs tie after the observed
// walk while their full route costs differ: the shared-normalization term
// cancels, so the second model's posterior ignores its beta entirely.
Task beta_blind_task() {
    Task task;
    task.grid.width = 5;
    task.grid.height = 3;
    task.grid.agent_start = {0, 0};
    task.grid.parts = {
        part("sr", PartType::Square, "red", 1, 2),   part("tr", PartType::Triangle, "red", 0, 2),
        part("sb", PartType::Square, "blue", 3, 2),  part("tb", PartType::Triangle, "blue", 4, 2),
    };
    task.candidates = {goal("a", {{PartType::Square, "red"}, {PartType::Triangle, "red"}}),
                       goal("b", {{PartType::Square, "blue"}, {PartType::Triangle, "blue"}})};
    task.observation = make_observation(
        task.grid, testsupport::path_of({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}}));
    return task;
}

// plan_count_task plus a one-plan green pair and a no-plan ghost, giving a
// four-candidate task usable for per-candidate correlations.
TaskEntry four_candidate_entry(const std::string& id) {
    Task task = testsupport::plan_count_task();
    task.grid.parts.push_back(part("sg0", PartType::Square, "green", 1, 4));
    task.grid.parts.push_back(part("tg0", PartType::Triangle, "green", 2, 4));
    task.candidates.push_back(goal("green_pair", {{PartType::Square, "green"}, {PartType::Triangle, "green"}}));
    task.candidates.push_back(goal("ghost", {{PartType::Square, "green"}, {PartType::Circle, "green"}}));
    return TaskEntry{id, task};
}

}  // namespace

TEST_CASE("pearson endpoints are exact") {
    const std::vector<double> x = {1.0, 2.0, 5.0, 9.0};
    std::vector<double> minus_x;
    for (double v : x) minus_x.push_back(-v);

    const CorrelationReport same = pearson(x, x);
    CHECK(close(same.r, 1.0, 1e-12));
    CHECK(same.p_value == 0.0);
    CHECK(same.n == 4);

    const CorrelationReport opposite = pearson(x, minus_x);
    CHECK(close(opposite.r, -1.0, 1e-12));
    CHECK(opposite.p_value == 0.0);
}

TEST_CASE("pearson worked example") {
    const CorrelationReport report = pearson({1.0, 2.0, 3.0}, {1.0, 2.0, 4.0});
    CHECK(close(report.r, 0.9819805060619659, 1e-3));
    CHECK(report.p_value > 0.0);
    CHECK(report.p_value < 1.0);
    CHECK(report.n == 3);
}

TEST_CASE("pearson rejects unusable input") {
    CHECK_THROWS_WITH_AS(pearson({1.0, 2.0}, {1.0, 2.0, 3.0}), "length mismatch", DomainError);
    CHECK_THROWS_WITH_AS(pearson({1.0, 2.0}, {1.0, 2.0}), "need at least 3 points", DomainError);
    CHECK_THROWS_WITH_AS(pearson({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}), "degenerate vector", DomainError);
    CHECK_THROWS_WITH_AS(pearson({1.0, 2.0, 3.0}, {4.0, 4.0, 4.0}), "degenerate vector", DomainError);
}

TEST_CASE("paired t on equal lists is exactly zero") {
    const PairedTResult result = paired_t_test({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
    CHECK(result.t == 0.0);
    CHECK(result.p_value == 1.0);
    CHECK(result.n == 3);
}

TEST_CASE("paired t worked example: differences 0.1, 0.2, 0.3") {
    const PairedTResult result = paired_t_test({1.1, 2.2, 3.3}, {1.0, 2.0, 3.0});
    CHECK(close(result.t, 2.0 * std::sqrt(3.0), 1e-9));
    CHECK(close(result.p_value, 0.0742, 1e-3));
}

TEST_CASE("paired t edge cases") {
    CHECK_THROWS_WITH_AS(paired_t_test({1.0}, {2.0, 3.0}), "length mismatch", DomainError);
    CHECK_THROWS_AS(paired_t_test({1.0}, {2.0}), DomainError);

    // Constant nonzero difference: infinitely strong evidence.
    const PairedTResult shifted = paired_t_test({2.0, 3.0, 4.0}, {1.0, 2.0, 3.0});
    CHECK(std::isinf(shifted.t));
    CHECK(shifted.p_value == 0.0);
}

TEST_CASE("group_by_participant groups and rejects duplicates") {
    const std::vector<ParticipantRecord> records = {
        record("p1", "t1", {{"a", 7}}, "a"),
        record("p1", "t2", {{"a", 3}}, "a"),
        record("p2", "t1", {{"a", 5}}, "a"),
    };
    const ParticipantData data = group_by_participant(records);
    CHECK(data.size() == 2);
    CHECK(data.at("p1").size() == 2);
    CHECK(data.at("p2").at("t1").scores.at("a") == 5);

    auto duplicated = records;
    duplicated.push_back(record("p1", "t1", {{"a", 1}}, "a"));
    CHECK_THROWS_AS(group_by_participant(duplicated), DomainError);
}

TEST_CASE("exclusion keeps exactly the attentive participants") {
    const TaskEntry entry{"t1", testsupport::plan_count_task()};
    const std::vector<TaskEntry> tasks = {entry};

    ParticipantData data;
    data["ok"]["t1"] = record("ok", "t1", {{"two_plans", 6}, {"six_plans", 3}}, "two_plans");
    data["flat"]["t1"] = record("flat", "t1", {{"two_plans", 4}, {"six_plans", 4}}, "two_plans");
    data["contrary"]["t1"] = record("contrary", "t1", {{"two_plans", 6}, {"six_plans", 3}}, "six_plans");
    data["tied"]["t1"] = record("tied", "t1", {{"two_plans", 7}, {"six_plans", 7}}, "six_plans");

    const ExclusionLog log = exclude_invalid(data, tasks);
    // "tied" rates everything 7: uniform, excluded by the first rule even
    // though the selection would pass.
    CHECK(log.valid == std::vector<std::string>{"ok"});
    CHECK(log.excluded.at("flat") == "uniform scores on task 't1'");
    CHECK(log.excluded.at("contrary") == "selected candidate not top-rated on task 't1'");
    CHECK(log.excluded.at("tied") == "uniform scores on task 't1'");
}

TEST_CASE("a top-score tie is not a reason to exclude") {
    const TaskEntry entry{"t1", four_candidate_entry("t1").task};
    ParticipantData data;
    data["p"]["t1"] = record(
        "p", "t1", {{"two_plans", 7}, {"six_plans", 7}, {"green_pair", 3}, {"ghost", 1}}, "six_plans");
    const ExclusionLog log = exclude_invalid(data, {TaskEntry{"t1", entry.task}});
    CHECK(log.valid == std::vector<std::string>{"p"});
    CHECK(log.excluded.empty());
}

TEST_CASE("incomplete or corrupt records are errors, not exclusions") {
    const std::vector<TaskEntry> tasks = {{"t1", testsupport::plan_count_task()},
                                          {"t2", testsupport::plan_count_task()}};
    SUBCASE("missing task") {
        ParticipantData data;
        data["p"]["t1"] = record("p", "t1", {{"two_plans", 6}, {"six_plans", 3}}, "two_plans");
        CHECK_THROWS_WITH_AS(exclude_invalid(data, tasks),
                             "incomplete record: participant 'p' is missing task 't2'", DomainError);
    }
    SUBCASE("missing candidate score") {
        ParticipantData data;
        data["p"]["t1"] = record("p", "t1", {{"two_plans", 6}}, "two_plans");
        data["p"]["t2"] = record("p", "t2", {{"two_plans", 6}, {"six_plans", 3}}, "two_plans");
        CHECK_THROWS_AS(exclude_invalid(data, tasks), DomainError);
    }
    SUBCASE("score out of range") {
        ParticipantData data;
        data["p"]["t1"] = record("p", "t1", {{"two_plans", 9}, {"six_plans", 3}}, "two_plans");
        data["p"]["t2"] = record("p", "t2", {{"two_plans", 6}, {"six_plans", 3}}, "two_plans");
        CHECK_THROWS_AS(exclude_invalid(data, tasks), DomainError);
    }
    SUBCASE("selection of an unknown candidate") {
        ParticipantData data;
        data["p"]["t1"] = record("p", "t1", {{"two_plans", 6}, {"six_plans", 3}}, "mystery");
        data["p"]["t2"] = record("p", "t2", {{"two_plans", 6}, {"six_plans", 3}}, "two_plans");
        CHECK_THROWS_AS(exclude_invalid(data, tasks), DomainError);
    }
}

TEST_CASE("score vectors serialize in task-then-candidate order") {
    const std::vector<TaskEntry> tasks = {{"t1", testsupport::plan_count_task()},
                                          {"t2", testsupport::plan_count_task()}};
    ParticipantData data;
    data["p"]["t1"] = record("p", "t1", {{"two_plans", 7}, {"six_plans", 1}}, "two_plans");
    data["p"]["t2"] = record("p", "t2", {{"two_plans", 2}, {"six_plans", 5}}, "six_plans");

    // plan_count_task lists two_plans before six_plans.
    CHECK(score_vector(data.at("p"), tasks) == std::vector<double>{7.0, 1.0, 2.0, 5.0});

    data["q"]["t1"] = record("q", "t1", {{"two_plans", 3}, {"six_plans", 3}}, "two_plans");
    data["q"]["t2"] = record("q", "t2", {{"two_plans", 4}, {"six_plans", 7}}, "six_plans");
    const auto average = average_score_vector(data, {"p", "q"}, tasks);
    CHECK(average == std::vector<double>{5.0, 2.0, 3.0, 6.0});
}

TEST_CASE("score vector ordering mismatches are reported") {
    const std::vector<TaskEntry> tasks = {{"t1", testsupport::plan_count_task()}};
    ParticipantData data;
    data["p"]["t9"] = record("p", "t9", {{"two_plans", 7}, {"six_plans", 1}}, "two_plans");
    CHECK_THROWS_AS(score_vector(data.at("p"), tasks), DomainError);

    ParticipantData wrong;
    wrong["p"]["t1"] = record("p", "t1", {{"other", 7}, {"six_plans", 1}}, "six_plans");
    CHECK_THROWS_AS(score_vector(wrong.at("p"), tasks), DomainError);
}

TEST_CASE("model vectors concatenate posteriors in the same order") {
    const std::vector<TaskEntry> tasks = {{"t1", testsupport::plan_count_task()},
                                          {"t2", testsupport::margin_one_task()}};
    ModelConfig config;
    config.model = Model::Ppo;
    const std::vector<double> vector = model_vector(tasks, config);
    REQUIRE(vector.size() == 4);

    const GoalPosterior first = infer(tasks[0].task, config);
    const GoalPosterior second = infer(tasks[1].task, config);
    CHECK(vector[0] == first.probs.at("two_plans"));
    CHECK(vector[1] == first.probs.at("six_plans"));
    CHECK(vector[2] == second.probs.at("near"));
    CHECK(vector[3] == second.probs.at("far"));
}

TEST_CASE("per-task rows carry the complexity factor and per-model correlations") {
    const TaskEntry entry = four_candidate_entry("t1");
    const std::vector<TaskEntry> tasks = {entry};

    ParticipantData data;
    data["p"]["t1"] = record(
        "p", "t1", {{"two_plans", 7}, {"six_plans", 5}, {"green_pair", 2}, {"ghost", 1}}, "two_plans");

    const ModelConfig base;
    const auto rows = per_task_report(tasks, data, {"p"}, base);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].task_id == "t1");
    CHECK(rows[0].k_minus_n == 2);  // two required types, nothing collected
    CHECK_FALSE(rows[0].degenerate);

    // The row must equal a hand-rolled correlation of the same vectors.
    ModelConfig full_config = base;
    full_config.model = Model::Full;
    std::vector<double> human = {7.0, 5.0, 2.0, 1.0};
    std::vector<double> post;
    const GoalPosterior full = infer(entry.task, full_config);
    for (const GoalProduct& g : entry.task.candidates) post.push_back(full.probs.at(g.id));
    CHECK(close(rows[0].r_full, pearson(human, post).r, 1e-12));
}

TEST_CASE("a flat average rating block marks the task degenerate") {
    const TaskEntry entry = four_candidate_entry("t1");
    ParticipantData data;
    data["p1"]["t1"] = record(
        "p1", "t1", {{"two_plans", 7}, {"six_plans", 1}, {"green_pair", 1}, {"ghost", 1}}, "two_plans");
    data["p2"]["t1"] = record(
        "p2", "t1", {{"two_plans", 1}, {"six_plans", 7}, {"green_pair", 7}, {"ghost", 7}}, "six_plans");

    const auto rows = per_task_report({entry}, data, {"p1", "p2"}, ModelConfig{});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].degenerate);
    CHECK(rows[0].r_full == 0.0);
    CHECK(rows[0].r_ppo == 0.0);
}

TEST_CASE("complexity correlation ignores degenerate rows and needs three usable ones") {
    std::vector<TaskCorrelation> rows(3);
    rows[0] = {"t1", 1, 0.9, 0.2, false};
    rows[1] = {"t2", 2, 0.5, 0.5, false};
    rows[2] = {"t3", 3, 0.1, 0.8, false};

    const CorrelationReport full = complexity_correlation(rows, Model::Full);
    CHECK(close(full.r, -1.0, 1e-12));
    const CorrelationReport ppo = complexity_correlation(rows, Model::Ppo);
    CHECK(close(ppo.r, 1.0, 1e-12));

    rows.push_back({"t4", 9, -123.0, 123.0, true});  // ignored entirely
    CHECK(close(complexity_correlation(rows, Model::Full).r, -1.0, 1e-12));

    rows[2].degenerate = true;
    rows[3].degenerate = true;
    CHECK_THROWS_WITH_AS(complexity_correlation(rows, Model::Full), "need at least 3 usable tasks", DomainError);
}

TEST_CASE("the beta3 grid is 0.0 through 1.0 in steps of 0.1") {
    const std::vector<double> grid = beta3_grid();
    REQUIRE(grid.size() == 11);
    for (int i = 0; i <= 10; ++i) CHECK(grid[static_cast<std::size_t>(i)] == static_cast<double>(i) / 10.0);
}

TEST_CASE("beta3 fitting resolves full ties toward the smallest grid value") {
    // Both tasks are blind to beta3, so every grid point correlates equally.
    const std::vector<TaskEntry> tasks = {{"t1", beta_blind_task()}, {"t2", beta_blind_task()}};
    ParticipantData data;
    data["p1"]["t1"] = record("p1", "t1", {{"a", 7}, {"b", 3}}, "a");
    data["p1"]["t2"] = record("p1", "t2", {{"a", 6}, {"b", 2}}, "a");
    data["p2"]["t1"] = record("p2", "t1", {{"a", 2}, {"b", 5}}, "b");
    data["p2"]["t2"] = record("p2", "t2", {{"a", 1}, {"b", 6}}, "b");

    const BetaFitSummary summary = fit_beta3(tasks, data, {"p1", "p2"}, ModelConfig{});
    REQUIRE(summary.fits.size() == 2);
    for (const BetaFitResult& fit : summary.fits) {
        CHECK(fit.best_beta3 == 0.0);
        CHECK(fit.per_beta_r.size() == 11);
        const double reference = fit.per_beta_r.at(0.0);
        for (const auto& [beta3, r] : fit.per_beta_r) CHECK(close(r, reference, 1e-12));
    }
    CHECK(summary.histogram.at(0.0) == 2);
    int total = 0;
    for (const auto& [beta3, count] : summary.histogram) total += count;
    CHECK(total == 2);
    CHECK(summary.histogram.size() == 11);  // every grid point present, even at zero

    // Fitting per participant can never do worse than the shared setting.
    CHECK(summary.avg_r_ppo_individual >= summary.avg_r_ppo_same - 1e-12);
}

TEST_CASE("per-participant fits never lose to the shared beta on average") {
    const std::vector<TaskEntry> tasks = {{"t1", four_candidate_entry("t1").task},
                                          {"t2", testsupport::plan_count_task()}};
    ParticipantData data;
    data["p1"]["t1"] = record(
        "p1", "t1", {{"two_plans", 6}, {"six_plans", 4}, {"green_pair", 2}, {"ghost", 1}}, "two_plans");
    data["p1"]["t2"] = record("p1", "t2", {{"two_plans", 3}, {"six_plans", 6}}, "six_plans");
    data["p2"]["t1"] = record(
        "p2", "t1", {{"two_plans", 2}, {"six_plans", 7}, {"green_pair", 4}, {"ghost", 1}}, "six_plans");
    data["p2"]["t2"] = record("p2", "t2", {{"two_plans", 5}, {"six_plans", 7}}, "six_plans");

    const BetaFitSummary summary = fit_beta3(tasks, data, {"p1", "p2"}, ModelConfig{});
    CHECK(summary.avg_r_ppo_individual >= summary.avg_r_ppo_same - 1e-12);
    int total = 0;
    for (const auto& [beta3, count] : summary.histogram) total += count;
    CHECK(total == 2);
}
