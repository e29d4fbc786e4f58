#include "planpred/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "planpred/analysis.hpp"
#include "planpred/complexity.hpp"
#include "planpred/errors.hpp"
#include "planpred/inference.hpp"
#include "planpred/ioutil.hpp"
#include "planpred/participant_io.hpp"
#include "planpred/rng.hpp"
#include "planpred/simulate.hpp"
#include "planpred/svg.hpp"
#include "planpred/task_io.hpp"

namespace planpred {

namespace {

namespace fs = std::filesystem;

constexpr const char* kFullColor = "#4878a8";
constexpr const char* kPpoColor = "#e49444";
constexpr const char* kHumanColor = "#6a9f58";

std::uint64_t env_default_seed() {
    const char* env = std::getenv("PLANPRED_SEED");
    if (!env || *env == '\0') return 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
        throw ParseError("PLANPRED_SEED must be a nonnegative integer, got '" + std::string(env) + "'");
    }
    return static_cast<std::uint64_t>(value);
}

struct InferOptions {
    std::string file;
    std::string model = "full";
    std::string normalization = "conventional";
    std::string format = "table";
    double beta1 = 0.3;
    double beta2 = 0.3;
    double beta3 = 0.5;
};

struct GenOptions {
    int k = 2;
    int n = 1;
    int c = 2;
    int count = 1;
    int width = 10;
    int height = 10;
    int max_attempts = 10000;
    bool require_disagreement = false;
    std::uint64_t seed = 0;
    std::string out_dir;
};

struct SimulateOptions {
    std::string tasks_dir;
    std::string gen_spec;
    std::string tasks_out;
    std::string out_csv;
    std::string model = "ppo";
    int participants = 0;
    double beta1 = 0.3;
    double beta2 = 0.3;
    double beta3 = 0.5;
    double noise = 0.5;
    std::uint64_t seed = 0;
};

struct AnalyzeOptions {
    std::string tasks_dir;
    std::string participants_csv;
    std::string out_dir = "reports";
    std::string normalization = "conventional";
    double beta1 = 0.3;
    double beta2 = 0.3;
    double beta3 = 0.5;
};

ModelConfig make_config(double beta1, double beta2, double beta3, const std::string& model,
                        const std::string& normalization) {
    ModelConfig config;
    config.beta1 = beta1;
    config.beta2 = beta2;
    config.beta3 = beta3;
    config.model = model_from_token(model);
    config.normalization = normalization_from_token(normalization);
    return config;
}

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw DomainError("cannot create output directory '" + dir.string() + "'");
    }
}

int cmd_validate(const std::vector<std::string>& files, std::ostream& out) {
    bool any_violation = false;
    for (const std::string& file : files) {
        const TaskFileContents contents = read_task_file(file);
        const std::vector<std::string> violations = validate_task(contents.entry.task);
        if (violations.empty()) {
            out << file << ": OK\n";
        } else {
            any_violation = true;
            for (const std::string& violation : violations) {
                out << file << ": " << violation << "\n";
            }
        }
    }
    return any_violation ? 1 : 0;
}

int cmd_infer(const InferOptions& opts, std::ostream& out) {
    const TaskFileContents contents = read_task_file(opts.file);
    const ModelConfig config = make_config(opts.beta1, opts.beta2, opts.beta3, opts.model, opts.normalization);
    const InferenceReport report = infer_with_diagnostics(contents.entry.task, config);

    const auto row_values = [&](const GoalProduct& goal) {
        const GoalDiagnostics& d = report.diagnostics.at(goal.id);
        return std::tuple<double, int, int, std::string, std::string>(
            report.posterior.probs.at(goal.id), d.plan_count, d.feasible_count,
            d.min_cost ? std::to_string(*d.min_cost) : std::string("-"),
            d.min_remaining ? std::to_string(*d.min_remaining) : std::string("-"));
    };

    if (opts.format == "csv") {
        out << "# task=" << contents.entry.id << " model=" << to_token(config.model)
            << " normalization=" << to_token(config.normalization) << " beta1=" << format_full(config.beta1)
            << " beta2=" << format_full(config.beta2) << " beta3=" << format_full(config.beta3) << "\n";
        out << "goal_id,probability,plan_count,feasible_count,min_cost,min_remaining\n";
        for (const GoalProduct& goal : contents.entry.task.candidates) {
            const auto [p, plans, feasible, cost, remaining] = row_values(goal);
            out << goal.id << ',' << format_full(p) << ',' << plans << ',' << feasible << ','
                << (cost == "-" ? "" : cost) << ',' << (remaining == "-" ? "" : remaining) << "\n";
        }
        return 0;
    }

    std::size_t id_width = 7;
    for (const GoalProduct& goal : contents.entry.task.candidates) {
        id_width = std::max(id_width, goal.id.size());
    }
    out << "task: " << contents.entry.id << "\n";
    out << "model: " << to_token(config.model) << "  normalization: " << to_token(config.normalization)
        << "  beta1: " << format_sig6(config.beta1) << "  beta2: " << format_sig6(config.beta2)
        << "  beta3: " << format_sig6(config.beta3) << "\n";
    out << std::left << std::setw(static_cast<int>(id_width) + 2) << "goal_id" << std::right
        << std::setw(12) << "probability" << std::setw(7) << "plans" << std::setw(10) << "feasible"
        << std::setw(10) << "min_cost" << std::setw(8) << "remain" << "\n";
    for (const GoalProduct& goal : contents.entry.task.candidates) {
        const auto [p, plans, feasible, cost, remaining] = row_values(goal);
        out << std::left << std::setw(static_cast<int>(id_width) + 2) << goal.id << std::right
            << std::setw(12) << format_sig6(p) << std::setw(7) << plans << std::setw(10) << feasible
            << std::setw(10) << cost << std::setw(8) << remaining << "\n";
    }
    return 0;
}

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
    GeneratorSpec spec;
    spec.signature = {opts.k, opts.n, opts.c};
    spec.width = opts.width;
    spec.height = opts.height;
    spec.max_attempts = opts.max_attempts;
    spec.require_disagreement = opts.require_disagreement;

    const fs::path out_dir = opts.out_dir;
    ensure_out_dir(out_dir);

    int written = 0;
    try {
        for (int i = 0; i < opts.count; ++i) {
            GeneratorSpec task_spec = spec;
            task_spec.seed = Rng::derive(opts.seed, static_cast<std::uint64_t>(i));
            const GeneratedTask generated = generate_task(task_spec);

            char name[64];
            std::snprintf(name, sizeof name, "task_%d%d%d_%02d", opts.k, opts.n, opts.c, i + 1);
            TaskMetadata metadata;
            metadata.id = name;
            metadata.signature = spec.signature;
            metadata.seed = task_spec.seed;
            metadata.attempts = generated.attempts;
            metadata.true_goal_id = generated.trajectory.goal_id;

            const fs::path file = out_dir / (std::string(name) + ".json");
            write_task_file(file, generated.task, metadata);
            ++written;
            out << file.string() << ": signature (" << opts.k << "," << opts.n << "," << opts.c
                << "), attempts " << generated.attempts << "\n";
        }
    } catch (const DomainError&) {
        err << "kept " << written << " of " << opts.count << " task files in '" << out_dir.string()
            << "'\n";
        throw;
    }
    return 0;
}

std::vector<TaskEntry> tasks_from_gen_spec(const SimulateOptions& opts, std::ostream& out) {
    std::vector<int> numbers;
    std::stringstream stream(opts.gen_spec);
    std::string piece;
    while (std::getline(stream, piece, ',')) {
        try {
            std::size_t used = 0;
            numbers.push_back(std::stoi(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw ParseError("--gen expects 'k,n,c' or 'k,n,c,count', got '" + opts.gen_spec + "'");
        }
    }
    if (numbers.size() != 3 && numbers.size() != 4) {
        throw ParseError("--gen expects 'k,n,c' or 'k,n,c,count', got '" + opts.gen_spec + "'");
    }
    const int count = numbers.size() == 4 ? numbers[3] : 1;
    if (count < 1) throw ParseError("--gen count must be at least 1");

    GeneratorSpec spec;
    spec.signature = {numbers[0], numbers[1], numbers[2]};
    spec.require_disagreement = true;

    std::vector<TaskEntry> tasks;
    const std::uint64_t gen_stream = Rng::derive(opts.seed, 1);
    for (int i = 0; i < count; ++i) {
        GeneratorSpec task_spec = spec;
        task_spec.seed = Rng::derive(gen_stream, static_cast<std::uint64_t>(i));
        const GeneratedTask generated = generate_task(task_spec);

        char name[64];
        std::snprintf(name, sizeof name, "task_%d%d%d_%02d", numbers[0], numbers[1], numbers[2], i + 1);
        tasks.push_back({name, generated.task});
        out << name << ": generated (attempts " << generated.attempts << ")\n";

        if (!opts.tasks_out.empty()) {
            ensure_out_dir(opts.tasks_out);
            TaskMetadata metadata;
            metadata.id = name;
            metadata.signature = spec.signature;
            metadata.seed = task_spec.seed;
            metadata.attempts = generated.attempts;
            metadata.true_goal_id = generated.trajectory.goal_id;
            write_task_file(fs::path(opts.tasks_out) / (std::string(name) + ".json"), generated.task,
                            metadata);
        }
    }
    return tasks;
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out) {
    if (opts.tasks_dir.empty() && opts.gen_spec.empty()) {
        throw ParseError("either --tasks or --gen is required");
    }

    std::vector<TaskEntry> tasks;
    if (!opts.tasks_dir.empty()) {
        tasks = load_task_dir(opts.tasks_dir);
    } else {
        tasks = tasks_from_gen_spec(opts, out);
    }

    const ModelConfig config = make_config(opts.beta1, opts.beta2, opts.beta3, opts.model, "conventional");
    const std::vector<ParticipantRecord> records = synth_participants(
        tasks, config, opts.noise, opts.participants, Rng::derive(opts.seed, 2));
    write_participant_csv(opts.out_csv, records);
    out << "wrote " << records.size() << " records for " << opts.participants << " participants over "
        << tasks.size() << " tasks to '" << opts.out_csv << "'\n";
    return 0;
}

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
    const std::vector<TaskEntry> tasks = load_task_dir(opts.tasks_dir);
    const std::vector<ParticipantRecord> records = read_participant_csv(opts.participants_csv);
    const ParticipantData data = group_by_participant(records);
    const ModelConfig base = make_config(opts.beta1, opts.beta2, opts.beta3, "full", opts.normalization);

    const fs::path out_dir = opts.out_dir;
    ensure_out_dir(out_dir);

    const ExclusionLog exclusion = exclude_invalid(data, tasks);
    {
        std::ostringstream csv;
        csv << "participant_id,reason\n";
        for (const auto& [participant_id, reason] : exclusion.excluded) {
            csv << participant_id << ',' << reason << "\n";
        }
        write_text_atomic(out_dir / "exclusions.csv", csv.str());
    }
    out << "participants: " << data.size() << " total, " << exclusion.valid.size() << " valid, "
        << exclusion.excluded.size() << " excluded\n";
    if (exclusion.valid.empty()) {
        for (const auto& [participant_id, reason] : exclusion.excluded) {
            err << "excluded " << participant_id << ": " << reason << "\n";
        }
        throw DomainError("no valid participants after exclusion");
    }

    // Overall correlations: average participant vector against each model.
    const std::vector<double> avg_vector = average_score_vector(data, exclusion.valid, tasks);
    ModelConfig full_config = base;
    full_config.model = Model::Full;
    ModelConfig ppo_config = base;
    ppo_config.model = Model::Ppo;
    const std::vector<double> full_vec = model_vector(tasks, full_config);
    const std::vector<double> ppo_vec = model_vector(tasks, ppo_config);
    const CorrelationReport overall_full = pearson(avg_vector, full_vec);
    const CorrelationReport overall_ppo = pearson(avg_vector, ppo_vec);
    {
        std::ostringstream csv;
        csv << "model,r,p_value,n\n";
        csv << "full," << format_full(overall_full.r) << ',' << format_full(overall_full.p_value) << ','
            << overall_full.n << "\n";
        csv << "ppo," << format_full(overall_ppo.r) << ',' << format_full(overall_ppo.p_value) << ','
            << overall_ppo.n << "\n";
        write_text_atomic(out_dir / "overall.csv", csv.str());
    }

    // Per-participant correlations, the paired test, and the beta3 fit.
    const BetaFitSummary fit = fit_beta3(tasks, data, exclusion.valid, base);
    std::vector<double> rs_full, rs_ppo;
    {
        std::ostringstream csv;
        csv << "participant_id,r_full,r_ppo,best_beta3,r_ppo_best\n";
        for (std::size_t i = 0; i < exclusion.valid.size(); ++i) {
            const std::string& participant_id = exclusion.valid[i];
            const std::vector<double> scores = score_vector(data.at(participant_id), tasks);
            const double r_full = pearson(scores, full_vec).r;
            const double r_ppo = pearson(scores, ppo_vec).r;
            rs_full.push_back(r_full);
            rs_ppo.push_back(r_ppo);
            const BetaFitResult& participant_fit = fit.fits[i];
            csv << participant_id << ',' << format_full(r_full) << ',' << format_full(r_ppo) << ','
                << format_full(participant_fit.best_beta3) << ','
                << format_full(participant_fit.per_beta_r.at(participant_fit.best_beta3)) << "\n";
        }
        write_text_atomic(out_dir / "per_participant.csv", csv.str());
    }
    PairedTResult paired{0.0, 1.0, static_cast<int>(rs_full.size())};
    const bool paired_ok = rs_full.size() >= 2;
    if (paired_ok) paired = paired_t_test(rs_ppo, rs_full);

    {
        std::ostringstream csv;
        csv << "beta3,best_count,avg_r\n";
        for (const auto& [beta3, count] : fit.histogram) {
            double sum = 0.0;
            for (const BetaFitResult& f : fit.fits) sum += f.per_beta_r.at(beta3);
            csv << format_full(beta3) << ',' << count << ','
                << format_full(sum / static_cast<double>(fit.fits.size())) << "\n";
        }
        write_text_atomic(out_dir / "beta_fit.csv", csv.str());
    }
    double modal_beta3 = 0.0;
    int modal_count = -1;
    for (const auto& [beta3, count] : fit.histogram) {
        if (count > modal_count) {
            modal_count = count;
            modal_beta3 = beta3;
        }
    }

    // Per-task correlations and the complexity-factor trend.
    const std::vector<TaskCorrelation> task_rows = per_task_report(tasks, data, exclusion.valid, base);
    {
        std::ostringstream csv;
        csv << "task_id,model,k,n,c,k_minus_n,r,degenerate\n";
        for (const TaskCorrelation& row : task_rows) {
            const ComplexitySignature sig = complexity_signature(
                std::find_if(tasks.begin(), tasks.end(),
                             [&](const TaskEntry& t) { return t.id == row.task_id; })
                    ->task);
            for (const std::string& model : {std::string("full"), std::string("ppo")}) {
                csv << row.task_id << ',' << model << ',' << sig.k << ',' << sig.n << ',' << sig.c << ','
                    << row.k_minus_n << ',' << format_full(model == "full" ? row.r_full : row.r_ppo)
                    << ',' << (row.degenerate ? 1 : 0) << "\n";
            }
            if (row.degenerate) {
                err << "warning: task '" << row.task_id
                    << "' is degenerate and excluded from the complexity correlation\n";
            }
        }
        write_text_atomic(out_dir / "per_task.csv", csv.str());
    }
    std::string complexity_full_r = "", complexity_full_p = "";
    std::string complexity_ppo_r = "", complexity_ppo_p = "";
    try {
        const CorrelationReport c_full = complexity_correlation(task_rows, Model::Full);
        const CorrelationReport c_ppo = complexity_correlation(task_rows, Model::Ppo);
        complexity_full_r = format_full(c_full.r);
        complexity_full_p = format_full(c_full.p_value);
        complexity_ppo_r = format_full(c_ppo.r);
        complexity_ppo_p = format_full(c_ppo.p_value);
    } catch (const DomainError& e) {
        err << "warning: complexity correlation unavailable: " << e.what() << "\n";
    }

    {
        std::ostringstream csv;
        csv << "key,value\n";
        csv << "tasks," << tasks.size() << "\n";
        csv << "participants_total," << data.size() << "\n";
        csv << "participants_valid," << exclusion.valid.size() << "\n";
        csv << "participants_excluded," << exclusion.excluded.size() << "\n";
        csv << "score_vector_length," << avg_vector.size() << "\n";
        csv << "overall_r_full," << format_full(overall_full.r) << "\n";
        csv << "overall_p_full," << format_full(overall_full.p_value) << "\n";
        csv << "overall_r_ppo," << format_full(overall_ppo.r) << "\n";
        csv << "overall_p_ppo," << format_full(overall_ppo.p_value) << "\n";
        csv << "mean_r_full," << format_full(fit.avg_r_full) << "\n";
        csv << "mean_r_ppo_same," << format_full(fit.avg_r_ppo_same) << "\n";
        csv << "mean_r_ppo_individual," << format_full(fit.avg_r_ppo_individual) << "\n";
        csv << "paired_t_ppo_minus_full," << (paired_ok ? format_full(paired.t) : std::string()) << "\n";
        csv << "paired_t_p," << (paired_ok ? format_full(paired.p_value) : std::string()) << "\n";
        csv << "complexity_r_full," << complexity_full_r << "\n";
        csv << "complexity_p_full," << complexity_full_p << "\n";
        csv << "complexity_r_ppo," << complexity_ppo_r << "\n";
        csv << "complexity_p_ppo," << complexity_ppo_p << "\n";
        csv << "modal_beta3," << format_full(modal_beta3) << "\n";
        write_text_atomic(out_dir / "summary.csv", csv.str());
    }

    // One bar chart per task: both model posteriors plus the normalized
    // human mean, per candidate.
    for (const TaskEntry& entry : tasks) {
        const GoalPosterior full = infer(entry.task, full_config);
        const GoalPosterior ppo = infer(entry.task, ppo_config);
        std::vector<std::string> labels;
        ChartSeries s_full{"full", kFullColor, {}};
        ChartSeries s_ppo{"ppo", kPpoColor, {}};
        ChartSeries s_human{"human (scaled)", kHumanColor, {}};
        for (std::size_t i = 0; i < entry.task.candidates.size(); ++i) {
            const GoalProduct& goal = entry.task.candidates[i];
            labels.push_back(goal.id);
            s_full.values.push_back(full.probs.at(goal.id));
            s_ppo.values.push_back(ppo.probs.at(goal.id));
            double mean = 0.0;
            for (const std::string& participant_id : exclusion.valid) {
                mean += data.at(participant_id).at(entry.id).scores.at(goal.id);
            }
            mean /= static_cast<double>(exclusion.valid.size());
            s_human.values.push_back((mean - 1.0) / 6.0);
        }
        const std::string svg =
            grouped_bar_chart_svg("task " + entry.id, labels, {s_full, s_ppo, s_human});
        write_text_atomic(out_dir / ("chart_" + entry.id + ".svg"), svg);
    }

    out << "overall r: full " << format_sig6(overall_full.r) << ", ppo " << format_sig6(overall_ppo.r)
        << "\n";
    out << "mean per-participant r: full " << format_sig6(fit.avg_r_full) << ", ppo "
        << format_sig6(fit.avg_r_ppo_same) << ", ppo (individual beta3) "
        << format_sig6(fit.avg_r_ppo_individual) << "\n";
    if (paired_ok) {
        out << "paired t (ppo - full): t " << format_sig6(paired.t) << ", p "
            << format_sig6(paired.p_value) << "\n";
    }
    if (!complexity_full_r.empty()) {
        out << "complexity correlation (k-n): full " << format_sig6(std::stod(complexity_full_r))
            << ", ppo " << format_sig6(std::stod(complexity_ppo_r)) << "\n";
    }
    out << "modal beta3: " << format_sig6(modal_beta3) << "\n";
    out << "reports written to '" << out_dir.string() << "'\n";
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Goal inference over grid-world assembly tasks"};
    app.require_subcommand(1);

    auto* validate_cmd = app.add_subcommand("validate", "Check task files for structural violations");
    std::vector<std::string> validate_files;
    validate_cmd->add_option("files", validate_files, "Task files to check")->required();

    auto* infer_cmd = app.add_subcommand("infer", "Print a goal posterior for one task");
    InferOptions infer_opts;
    infer_cmd->add_option("file", infer_opts.file, "Task file")->required();
    infer_cmd->add_option("--model", infer_opts.model, "Posterior model")
        ->check(CLI::IsMember({"full", "ppo"}));
    infer_cmd->add_option("--normalization", infer_opts.normalization, "Normalization mode")
        ->check(CLI::IsMember({"conventional", "paper_literal"}));
    infer_cmd->add_option("--format", infer_opts.format, "Output format")
        ->check(CLI::IsMember({"table", "csv"}));
    infer_cmd->add_option("--beta1", infer_opts.beta1, "Plan choice rationality");
    infer_cmd->add_option("--beta2", infer_opts.beta2, "Action likelihood sharpness");
    infer_cmd->add_option("--beta3", infer_opts.beta3, "Plan predictability bias");

    auto* gen_cmd = app.add_subcommand("gen", "Generate stimulus task files");
    GenOptions gen_opts;
    gen_cmd->add_option("--k", gen_opts.k, "Part types per product")->required()->check(CLI::Range(2, 4));
    gen_cmd->add_option("--n", gen_opts.n, "Types already collected")->required()->check(CLI::Range(0, 3));
    gen_cmd->add_option("--c", gen_opts.c, "Colors among uncollected types")
        ->required()
        ->check(CLI::Range(1, 8));
    gen_cmd->add_option("--count", gen_opts.count, "Tasks to generate")->check(CLI::Range(1, 10000));
    gen_cmd->add_option("--width", gen_opts.width, "Grid width")->check(CLI::Range(4, 100));
    gen_cmd->add_option("--height", gen_opts.height, "Grid height")->check(CLI::Range(4, 100));
    gen_cmd->add_option("--max-attempts", gen_opts.max_attempts, "Search budget per task")
        ->check(CLI::Range(1, 1000000));
    gen_cmd->add_flag("--require-disagreement", gen_opts.require_disagreement,
                      "Only accept tasks where the two models' top candidates differ");
    auto* gen_seed = gen_cmd->add_option("--seed", gen_opts.seed, "Random seed");
    gen_cmd->add_option("--out", gen_opts.out_dir, "Output directory")->required();

    auto* sim_cmd = app.add_subcommand("simulate", "Write synthetic participant data");
    SimulateOptions sim_opts;
    auto* sim_tasks = sim_cmd->add_option("--tasks", sim_opts.tasks_dir, "Directory of task files");
    auto* sim_gen =
        sim_cmd->add_option("--gen", sim_opts.gen_spec, "Generate tasks inline: 'k,n,c[,count]'");
    sim_tasks->excludes(sim_gen);
    sim_gen->excludes(sim_tasks);
    sim_cmd->add_option("--tasks-out", sim_opts.tasks_out, "Also write generated tasks here");
    sim_cmd->add_option("--participants", sim_opts.participants, "Synthetic participant count")
        ->required()
        ->check(CLI::Range(1, 1000000));
    sim_cmd->add_option("--model", sim_opts.model, "Model the participants are drawn from")
        ->check(CLI::IsMember({"full", "ppo"}));
    sim_cmd->add_option("--beta1", sim_opts.beta1, "Plan choice rationality");
    sim_cmd->add_option("--beta2", sim_opts.beta2, "Action likelihood sharpness");
    sim_cmd->add_option("--beta3", sim_opts.beta3, "Plan predictability bias");
    sim_cmd->add_option("--noise", sim_opts.noise, "Score noise standard deviation")
        ->check(CLI::NonNegativeNumber);
    auto* sim_seed = sim_cmd->add_option("--seed", sim_opts.seed, "Random seed");
    sim_cmd->add_option("--out", sim_opts.out_csv, "Output CSV path")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "Run the full report pipeline");
    AnalyzeOptions analyze_opts;
    analyze_cmd->add_option("--tasks", analyze_opts.tasks_dir, "Directory of task files")->required();
    analyze_cmd->add_option("--participants", analyze_opts.participants_csv, "Participant CSV")
        ->required();
    analyze_cmd->add_option("--out", analyze_opts.out_dir, "Report output directory");
    analyze_cmd->add_option("--normalization", analyze_opts.normalization, "Normalization mode")
        ->check(CLI::IsMember({"conventional", "paper_literal"}));
    analyze_cmd->add_option("--beta1", analyze_opts.beta1, "Plan choice rationality");
    analyze_cmd->add_option("--beta2", analyze_opts.beta2, "Action likelihood sharpness");
    analyze_cmd->add_option("--beta3", analyze_opts.beta3, "Plan predictability bias");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (gen_seed->count() == 0) gen_opts.seed = env_default_seed();
        if (sim_seed->count() == 0) sim_opts.seed = env_default_seed();

        if (validate_cmd->parsed()) return cmd_validate(validate_files, out);
        if (infer_cmd->parsed()) return cmd_infer(infer_opts, out);
        if (gen_cmd->parsed()) return cmd_gen(gen_opts, out, err);
        if (sim_cmd->parsed()) return cmd_simulate(sim_opts, out);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze_opts, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace planpred
