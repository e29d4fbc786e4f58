#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <tuple>

#include "doctest.h"
#include "planpred/complexity.hpp"
#include "planpred/errors.hpp"
#include "planpred/participant_io.hpp"
#include "planpred/simulate.hpp"
#include "planpred/task_io.hpp"
#include "test_support.hpp"

using namespace planpred;
using testsupport::goal;
using testsupport::part;

namespace {

GeneratorSpec spec_for(int k, int n, int c, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.signature = {k, n, c};
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("execute_plan walks x before y within each leg") {
    Grid grid;
    grid.width = 4;
    grid.height = 3;
    grid.agent_start = {0, 0};
    grid.parts = {part("s", PartType::Square, "red", 2, 1), part("t", PartType::Triangle, "red", 0, 1)};

    Plan plan;
    plan.goal_id = "g";
    plan.assignment = {{PartType::Square, "s"}, {PartType::Triangle, "t"}};

    const Path full = execute_plan(grid, plan, plan_cost(grid, plan));
    const std::vector<Position> expected = {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}};
    CHECK(full.cells == expected);
    CHECK(full.length() == plan_cost(grid, plan));

    SUBCASE("prefixes truncate the same route") {
        const Path three = execute_plan(grid, plan, 3);
        CHECK(three.cells == std::vector<Position>{{0, 0}, {1, 0}, {2, 0}, {2, 1}});
        const Path none = execute_plan(grid, plan, 0);
        CHECK(none.cells == std::vector<Position>{{0, 0}});
    }
    SUBCASE("prefix bounds are enforced") {
        CHECK_THROWS_WITH_AS(execute_plan(grid, plan, -1), "negative prefix length", DomainError);
        CHECK_THROWS_WITH_AS(execute_plan(grid, plan, 6), "prefix exceeds route length", DomainError);
    }
}

TEST_CASE("sample_plan follows the cost-softmax choice distribution") {
    const Task task = testsupport::plan_count_task();
    const GoalProduct& two = task.candidates.front();  // plans cost 2 and 3

    Rng rng(9);
    int cheap = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        const Plan plan = sample_plan(task.grid, two, 0.3, rng);
        if (plan.assignment.at(PartType::Triangle) == "tr0") ++cheap;
    }
    // softmax(-0.3 * [2, 3]) puts 0.5744 on the cheaper plan.
    const double frequency = static_cast<double>(cheap) / draws;
    CHECK(frequency > 0.5744 - 0.02);
    CHECK(frequency < 0.5744 + 0.02);

    SUBCASE("beta 0 is a coin flip, high beta is nearly argmax") {
        Rng flat(11);
        int c0 = 0;
        for (int i = 0; i < draws; ++i) {
            if (sample_plan(task.grid, two, 0.0, flat).assignment.at(PartType::Triangle) == "tr0") ++c0;
        }
        CHECK(std::abs(static_cast<double>(c0) / draws - 0.5) < 0.02);

        Rng sharp(13);
        int c50 = 0;
        for (int i = 0; i < 200; ++i) {
            if (sample_plan(task.grid, two, 50.0, sharp).assignment.at(PartType::Triangle) == "tr0") ++c50;
        }
        CHECK(c50 == 200);
    }
}

TEST_CASE("sample_plan refuses goals with no realization") {
    const Task task = testsupport::plan_count_task();
    GoalProduct ghost = goal("ghost", {{PartType::Square, "green"}, {PartType::Triangle, "green"}});
    REQUIRE(normalize_goal(ghost).empty());
    Rng rng(1);
    CHECK_THROWS_AS(sample_plan(task.grid, ghost, 0.3, rng), DomainError);
}

TEST_CASE("generate_task produces a valid task with the requested signature") {
    for (const auto& [k, n, c] : std::vector<std::tuple<int, int, int>>{{2, 1, 2}, {3, 2, 2}, {4, 3, 3}}) {
        const GeneratorSpec spec = spec_for(k, n, c, 7);
        const GeneratedTask generated = generate_task(spec);

        CHECK(validate_task(generated.task).empty());
        CHECK(complexity_signature(generated.task) == ComplexitySignature{k, n, c});
        CHECK(generated.task.candidates.size() == 4);
        CHECK(generated.attempts >= 1);
        CHECK(generated.attempts <= spec.max_attempts);

        // Exactly n parts picked up so far (one instance per collected type).
        CHECK(static_cast<int>(generated.task.observation.collected.size()) == n);

        // The recorded behavior is coherent: the walked route starts at the
        // agent start, realizes the sampled plan, and picks up nothing else.
        const TrajectorySample& trajectory = generated.trajectory;
        CHECK(trajectory.path.cells.front() == generated.task.grid.agent_start);
        std::vector<std::string> route_pickups;
        for (const PartInstance& p : collected_along(generated.task.grid, trajectory.path)) {
            route_pickups.push_back(p.id);
        }
        std::vector<std::string> plan_ids;
        for (const auto& [type, id] : trajectory.plan.assignment) plan_ids.push_back(id);
        CHECK(route_pickups == plan_ids);
        CHECK(trajectory.plan.goal_id == trajectory.goal_id);

        // The observation is the walked route cut short.
        REQUIRE(generated.task.observation.path.cells.size() <= trajectory.path.cells.size());
        for (std::size_t i = 0; i < generated.task.observation.path.cells.size(); ++i) {
            CHECK(generated.task.observation.path.cells[i] == trajectory.path.cells[i]);
        }
    }
}

TEST_CASE("require_disagreement makes the two models pick different winners") {
    GeneratorSpec spec = spec_for(3, 1, 2, 5);
    spec.require_disagreement = true;
    const GeneratedTask generated = generate_task(spec);

    const GoalPosterior full = full_model_posterior(generated.task, spec.config);
    const GoalPosterior ppo = ppo_model_posterior(generated.task, spec.config);
    auto winner = [](const GoalPosterior& posterior) {
        std::string id;
        double best = -1.0;
        for (const auto& [goal_id, p] : posterior.probs) {
            if (p > best) {
                best = p;
                id = goal_id;
            }
        }
        return id;
    };
    CHECK(winner(full) != winner(ppo));
}

TEST_CASE("generation is deterministic in the seed") {
    const GeneratorSpec spec = spec_for(3, 2, 2, 99);
    const GeneratedTask a = generate_task(spec);
    const GeneratedTask b = generate_task(spec);
    CHECK(serialize_task(a.task, {}) == serialize_task(b.task, {}));
    CHECK(a.attempts == b.attempts);
    CHECK(a.trajectory.path == b.trajectory.path);

    GeneratorSpec other = spec;
    other.seed = 100;
    const GeneratedTask c = generate_task(other);
    CHECK(serialize_task(a.task, {}) != serialize_task(c.task, {}));
}

TEST_CASE("impossible generator requests fail up front") {
    CHECK_THROWS_WITH_AS(generate_task(spec_for(5, 1, 2, 0)), "signature k must be between 2 and 4", DomainError);
    CHECK_THROWS_WITH_AS(generate_task(spec_for(2, 2, 2, 0)), "signature n must satisfy 0 <= n < k", DomainError);
    CHECK_THROWS_WITH_AS(generate_task(spec_for(2, 1, 0, 0)), "signature c must be at least 1", DomainError);

    GeneratorSpec bad_attempts = spec_for(2, 1, 2, 0);
    bad_attempts.max_attempts = 0;
    CHECK_THROWS_WITH_AS(generate_task(bad_attempts), "max_attempts must be at least 1", DomainError);

    GeneratorSpec bad_instances = spec_for(2, 1, 2, 0);
    bad_instances.min_instances = 0;
    CHECK_THROWS_WITH_AS(generate_task(bad_instances), "invalid instance count range", DomainError);

    GeneratorSpec dup_palette = spec_for(2, 1, 2, 0);
    dup_palette.palette = {"red", "red", "blue"};
    CHECK_THROWS_WITH_AS(generate_task(dup_palette), "palette has duplicate colors", DomainError);

    GeneratorSpec thin_palette = spec_for(2, 1, 3, 0);
    thin_palette.palette = {"red", "blue"};
    CHECK_THROWS_AS(generate_task(thin_palette), DomainError);

    GeneratorSpec tiny = spec_for(4, 3, 3, 0);
    tiny.width = 4;
    tiny.height = 4;
    CHECK_THROWS_WITH_AS(generate_task(tiny), "grid too small for the requested part counts", DomainError);

    // 2 types, 1 collected, 1 color open: only 2^1 * 1 = 2 possible products.
    CHECK_THROWS_WITH_AS(generate_task(spec_for(2, 1, 1, 0)),
                         "candidate universe too small for four distinct products", DomainError);
}

TEST_CASE("synthetic raters score by posterior and select their own maximum") {
    const std::vector<TaskEntry> tasks = {{"t1", testsupport::plan_count_task()},
                                          {"t2", testsupport::margin_one_task()}};
    ModelConfig config;
    config.model = Model::Ppo;

    SUBCASE("noise-free scores are the rounded affine map of the posterior") {
        const auto records = synth_participants(tasks, config, 0.0, 3, 21);
        REQUIRE(records.size() == 6);  // 3 raters x 2 tasks
        for (const ParticipantRecord& record : records) {
            const TaskEntry& entry = record.task_id == "t1" ? tasks[0] : tasks[1];
            const GoalPosterior posterior = infer(entry.task, config);
            double p_max = 0.0;
            for (const auto& [id, p] : posterior.probs) p_max = std::max(p_max, p);
            for (const auto& [id, score] : record.scores) {
                const int expected = static_cast<int>(std::lround(1.0 + 6.0 * posterior.probs.at(id) / p_max));
                CHECK(score == expected);
            }
            // The selected candidate holds the top score.
            int top = 0;
            for (const auto& [id, score] : record.scores) top = std::max(top, score);
            CHECK(record.scores.at(record.selected) == top);
        }
    }
    SUBCASE("ids are zero-padded to the count's width") {
        const auto records = synth_participants(tasks, config, 0.0, 12, 4);
        CHECK(records.front().participant_id == "p01");
        CHECK(records.back().participant_id == "p12");
    }
    SUBCASE("noisy scores stay on the 1-7 scale and stay deterministic per seed") {
        const auto a = synth_participants(tasks, config, 0.8, 10, 5);
        const auto b = synth_participants(tasks, config, 0.8, 10, 5);
        CHECK(serialize_participants(a) == serialize_participants(b));
        for (const ParticipantRecord& record : a) {
            for (const auto& [id, score] : record.scores) {
                CHECK(score >= 1);
                CHECK(score <= 7);
            }
        }
        const auto c = synth_participants(tasks, config, 0.8, 10, 6);
        CHECK(serialize_participants(a) != serialize_participants(c));
    }
    SUBCASE("invalid knobs are rejected") {
        CHECK_THROWS_AS(synth_participants(tasks, config, 0.5, 0, 1), DomainError);
        CHECK_THROWS_AS(synth_participants(tasks, config, -0.5, 5, 1), DomainError);
        CHECK_THROWS_AS(synth_participants(tasks, config, std::nan(""), 5, 1), DomainError);
    }
}

TEST_CASE("noise-free synthetic raters survive the exclusion rules") {
    const std::vector<TaskEntry> tasks = {{"t1", testsupport::plan_count_task()}};
    ModelConfig config;
    config.model = Model::Ppo;
    const auto records = synth_participants(tasks, config, 0.0, 20, 77);
    const ExclusionLog log = exclude_invalid(group_by_participant(records), tasks);
    CHECK(log.valid.size() == 20);
    CHECK(log.excluded.empty());
}
