#include "planpred/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "planpred/errors.hpp"

namespace planpred {

namespace {

std::vector<PartType> first_types(int k) {
    const std::vector<PartType> by_priority = {PartType::Square, PartType::Triangle,
                                               PartType::SmallRectangle, PartType::Circle};
    return {by_priority.begin(), by_priority.begin() + k};
}

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(items[i - 1], items[j]);
    }
}

void check_generator_spec(const GeneratorSpec& spec) {
    const ComplexitySignature& sig = spec.signature;
    if (sig.k < 2 || sig.k > 4) throw DomainError("signature k must be between 2 and 4");
    if (sig.n < 0 || sig.n >= sig.k) throw DomainError("signature n must satisfy 0 <= n < k");
    if (sig.c < 1) throw DomainError("signature c must be at least 1");
    if (spec.max_attempts < 1) throw DomainError("max_attempts must be at least 1");
    if (spec.min_instances < 1 || spec.max_instances < spec.min_instances) {
        throw DomainError("invalid instance count range");
    }

    std::set<std::string> colors(spec.palette.begin(), spec.palette.end());
    if (colors.size() != spec.palette.size()) throw DomainError("palette has duplicate colors");
    std::size_t needed = static_cast<std::size_t>(sig.c);
    if (sig.n > 0) needed = std::max<std::size_t>(needed, 2);  // collected types vary over 2 colors
    if (colors.size() < needed) {
        throw DomainError("palette has " + std::to_string(colors.size()) +
                          " colors but the signature needs " + std::to_string(needed));
    }

    const int pairs = sig.n * 2 + (sig.k - sig.n) * sig.c;
    if (spec.width * spec.height - 1 < pairs * spec.max_instances) {
        throw DomainError("grid too small for the requested part counts");
    }

    const double universe = std::pow(2.0, sig.n) * std::pow(static_cast<double>(sig.c), sig.k - sig.n);
    if (universe < 4.0) throw DomainError("candidate universe too small for four distinct products");
}

std::string product_id(const GoalProduct& goal) {
    std::string id;
    for (const auto& [type, color] : goal.required) {
        if (!id.empty()) id += "+";
        id += color + "-" + to_token(type);
    }
    return id;
}

std::vector<std::string> color_multiset(const GoalProduct& goal) {
    std::vector<std::string> colors;
    for (const auto& [type, color] : goal.required) colors.push_back(color);
    std::sort(colors.begin(), colors.end());
    return colors;
}

std::string argmax_id(const GoalPosterior& posterior) {
    std::string best_id;
    double best = -1.0;
    for (const auto& [id, p] : posterior.probs) {
        if (p > best) {
            best = p;
            best_id = id;
        }
    }
    return best_id;
}

// True when the maximum clearly beats the runner-up.
bool strict_argmax(const GoalPosterior& posterior, std::string& out) {
    double best = -1.0, second = -1.0;
    for (const auto& [id, p] : posterior.probs) {
        if (p > best) {
            second = best;
            best = p;
            out = id;
        } else {
            second = std::max(second, p);
        }
    }
    return best - second > 1e-12;
}

// One seeded layout-and-behavior draw; false means "reject and retry".
bool try_generate(const GeneratorSpec& spec, Rng& rng, Task& out_task, TrajectorySample& out_sample) {
    const ComplexitySignature& sig = spec.signature;
    const std::vector<PartType> types = first_types(sig.k);

    // Color choice per type: the types the agent will have collected vary
    // over 2 colors, the still-open types over exactly c, so the final
    // signature's color factor lands on c by construction.
    std::map<PartType, std::vector<std::string>> colors_by_type;
    for (int i = 0; i < sig.k; ++i) {
        std::vector<std::string> palette = spec.palette;
        shuffle(palette, rng);
        const std::size_t m = (i < sig.n) ? 2 : static_cast<std::size_t>(sig.c);
        std::vector<std::string> chosen(palette.begin(), palette.begin() + static_cast<std::ptrdiff_t>(m));
        std::sort(chosen.begin(), chosen.end());
        colors_by_type[types[static_cast<std::size_t>(i)]] = std::move(chosen);
    }

    Grid grid;
    grid.width = spec.width;
    grid.height = spec.height;
    grid.agent_start = {static_cast<int>(rng.uniform_int(0, spec.width - 1)),
                        static_cast<int>(rng.uniform_int(0, spec.height - 1))};
    std::set<std::pair<int, int>> occupied{{grid.agent_start.x, grid.agent_start.y}};
    for (PartType type : types) {
        for (const std::string& color : colors_by_type[type]) {
            const auto count = static_cast<int>(rng.uniform_int(spec.min_instances, spec.max_instances));
            for (int j = 0; j < count; ++j) {
                Position pos{};
                int guard = 0;
                do {
                    pos = {static_cast<int>(rng.uniform_int(0, spec.width - 1)),
                           static_cast<int>(rng.uniform_int(0, spec.height - 1))};
                    if (++guard > 1000) return false;
                } while (occupied.count({pos.x, pos.y}));
                occupied.insert({pos.x, pos.y});
                grid.parts.push_back(
                    {to_token(type) + "_" + color + "_" + std::to_string(j + 1), type, color, pos});
            }
        }
    }

    // Candidate universe: every color combination over the k types.
    std::vector<GoalProduct> universe;
    std::vector<std::size_t> odometer(types.size(), 0);
    while (true) {
        GoalProduct goal;
        for (std::size_t i = 0; i < types.size(); ++i) {
            goal.required.emplace_back(types[i], colors_by_type[types[i]][odometer[i]]);
        }
        goal.id = product_id(goal);
        universe.push_back(std::move(goal));

        std::size_t i = types.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (++odometer[i] < colors_by_type[types[i]].size()) {
                done = false;
                break;
            }
            odometer[i] = 0;
        }
        if (done) break;
    }
    if (universe.size() < 4) return false;

    // The agent's actual behavior: a uniformly chosen true product, a
    // Boltzmann-sampled plan for it, and the executed route.
    const GoalProduct& truth = rng.pick(universe);
    Plan plan = sample_plan(grid, truth, spec.config.beta1, rng);
    Path full_path = execute_plan(grid, plan, plan_cost(grid, plan));

    // The route must not sweep up parts outside the plan; a stray pickup
    // would contradict every candidate plan downstream.
    const std::vector<PartInstance> picked = collected_along(grid, full_path);
    if (picked.size() != plan.assignment.size()) return false;
    {
        std::size_t i = 0;
        for (const auto& [type, id] : plan.assignment) {
            if (picked[i].id != id) return false;
            ++i;
        }
    }

    // Cell indices at which each pickup happens, to find every truncation
    // point that leaves exactly n types collected.
    std::vector<int> pickup_steps;
    {
        std::set<std::string> seen;
        for (std::size_t t = 0; t < full_path.cells.size(); ++t) {
            const PartInstance* part = grid.part_at(full_path.cells[t]);
            if (part && seen.insert(part->id).second) pickup_steps.push_back(static_cast<int>(t));
        }
    }
    const int lo = (sig.n == 0) ? 0 : pickup_steps[static_cast<std::size_t>(sig.n) - 1];
    const int hi = pickup_steps[static_cast<std::size_t>(sig.n)] - 1;
    if (hi < lo) return false;
    const auto prefix = static_cast<int>(rng.uniform_int(lo, hi));

    Path observed;
    observed.cells.assign(full_path.cells.begin(), full_path.cells.begin() + prefix + 1);
    const Observation obs = make_observation(grid, observed);

    // Rank the whole universe under both models.
    Task universe_task{grid, obs, universe};
    GoalPosterior full_rank, ppo_rank;
    try {
        full_rank = full_model_posterior(universe_task, spec.config);
        ppo_rank = ppo_model_posterior(universe_task, spec.config);
    } catch (const DomainError&) {
        return false;
    }

    std::string top_full = argmax_id(full_rank);
    std::string top_ppo = argmax_id(ppo_rank);
    if (top_full == top_ppo) {
        if (spec.require_disagreement) return false;
        // Fall back to the runner-up so the four candidates stay distinct.
        GoalPosterior rest = ppo_rank;
        rest.probs.erase(top_full);
        top_ppo = argmax_id(rest);
    }

    // Low-probability fillers: combined-probability ascending, id as the
    // tie-break; the fourth prefers a fresh color multiset for variety.
    std::vector<std::pair<double, std::string>> combined;
    for (const GoalProduct& goal : universe) {
        combined.emplace_back(full_rank.probs.at(goal.id) + ppo_rank.probs.at(goal.id), goal.id);
    }
    std::sort(combined.begin(), combined.end());

    std::map<std::string, const GoalProduct*> by_id;
    for (const GoalProduct& goal : universe) by_id[goal.id] = &goal;

    std::string low1;
    for (const auto& [p, id] : combined) {
        if (id != top_full && id != top_ppo) {
            low1 = id;
            break;
        }
    }
    std::set<std::vector<std::string>> used_colors = {color_multiset(*by_id[top_full]),
                                                      color_multiset(*by_id[top_ppo]),
                                                      color_multiset(*by_id[low1])};
    std::string low2;
    for (const auto& [p, id] : combined) {
        if (id == top_full || id == top_ppo || id == low1) continue;
        if (low2.empty()) low2 = id;  // fallback: plain lowest
        if (!used_colors.count(color_multiset(*by_id[id]))) {
            low2 = id;
            break;
        }
    }
    if (low1.empty() || low2.empty()) return false;

    Task task{grid, obs, {*by_id[top_full], *by_id[top_ppo], *by_id[low1], *by_id[low2]}};
    if (!validate_task(task).empty()) return false;
    if (!(complexity_signature(task) == sig)) return false;

    if (spec.require_disagreement) {
        GoalPosterior final_full, final_ppo;
        try {
            final_full = full_model_posterior(task, spec.config);
            final_ppo = ppo_model_posterior(task, spec.config);
        } catch (const DomainError&) {
            return false;
        }
        std::string a, b;
        if (!strict_argmax(final_full, a) || !strict_argmax(final_ppo, b) || a == b) return false;
    }

    out_task = std::move(task);
    out_sample = {truth.id, std::move(plan), std::move(full_path)};
    return true;
}

}  // namespace

Plan sample_plan(const Grid& grid, const GoalProduct& goal, double beta1, Rng& rng) {
    PlanSet set = enumerate_plans(grid, goal);
    if (set.plans.empty()) throw DomainError("goal '" + goal.id + "' has no plans on this grid");
    std::vector<ScoredPlan> scored;
    scored.reserve(set.plans.size());
    for (const Plan& plan : set.plans) scored.push_back({plan, plan_cost(grid, plan), std::nullopt});
    const std::vector<double> probs = plan_prior(scored, beta1);
    return set.plans[rng.weighted_index(probs)];
}

Path execute_plan(const Grid& grid, const Plan& plan, int prefix_steps) {
    if (prefix_steps < 0) throw DomainError("negative prefix length");
    const std::vector<Position> waypoints = plan_waypoints(grid, plan);

    Path path;
    path.cells.push_back(grid.agent_start);
    Position at = grid.agent_start;
    for (const Position& target : waypoints) {
        while (at.x != target.x) {
            at.x += (target.x > at.x) ? 1 : -1;
            path.cells.push_back(at);
        }
        while (at.y != target.y) {
            at.y += (target.y > at.y) ? 1 : -1;
            path.cells.push_back(at);
        }
    }
    if (prefix_steps > path.length()) throw DomainError("prefix exceeds route length");
    path.cells.resize(static_cast<std::size_t>(prefix_steps) + 1);
    return path;
}

GeneratedTask generate_task(const GeneratorSpec& spec) {
    check_generator_spec(spec);
    for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
        Rng rng(Rng::derive(spec.seed, static_cast<std::uint64_t>(attempt)));
        Task task;
        TrajectorySample sample;
        if (try_generate(spec, rng, task, sample)) {
            return {std::move(task), std::move(sample), attempt + 1};
        }
    }
    throw DomainError("no task found after " + std::to_string(spec.max_attempts) +
                      " attempts for signature (" + std::to_string(spec.signature.k) + ", " +
                      std::to_string(spec.signature.n) + ", " + std::to_string(spec.signature.c) + ")");
}

std::vector<ParticipantRecord> synth_participants(const std::vector<TaskEntry>& tasks,
                                                  const ModelConfig& config,
                                                  double noise_sd,
                                                  int count,
                                                  std::uint64_t seed) {
    if (count < 1) throw DomainError("participant count must be at least 1");
    if (!std::isfinite(noise_sd) || noise_sd < 0.0) throw DomainError("noise sd must be finite and nonnegative");

    // Posteriors are participant-independent; compute them once.
    std::vector<GoalPosterior> posteriors;
    posteriors.reserve(tasks.size());
    for (const TaskEntry& entry : tasks) posteriors.push_back(infer(entry.task, config));

    const int width = static_cast<int>(std::to_string(count).size());
    std::vector<ParticipantRecord> records;
    for (int j = 0; j < count; ++j) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(j)));
        char buf[32];
        std::snprintf(buf, sizeof buf, "p%0*d", width, j + 1);
        const std::string participant_id = buf;

        for (std::size_t t = 0; t < tasks.size(); ++t) {
            const TaskEntry& entry = tasks[t];
            double p_max = 0.0;
            for (const auto& [id, p] : posteriors[t].probs) p_max = std::max(p_max, p);

            ParticipantRecord record;
            record.participant_id = participant_id;
            record.task_id = entry.id;
            int best_score = -1;
            for (const GoalProduct& goal : entry.task.candidates) {
                double raw = 1.0 + 6.0 * (posteriors[t].probs.at(goal.id) / p_max);
                if (noise_sd > 0.0) raw += rng.normal(0.0, noise_sd);
                const int score = static_cast<int>(std::lround(std::clamp(raw, 1.0, 7.0)));
                record.scores[goal.id] = score;
                if (score > best_score) {
                    best_score = score;
                    record.selected = goal.id;
                }
            }
            records.push_back(std::move(record));
        }
    }
    return records;
}

}  // namespace planpred
