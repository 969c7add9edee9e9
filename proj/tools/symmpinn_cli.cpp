#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "symmpinn/network/checkpoint.hpp"
#include "symmpinn/report/baselines.hpp"
#include "symmpinn/report/benchmark.hpp"
#include "symmpinn/report/experiment.hpp"
#include "symmpinn/report/surfaces.hpp"

namespace {

using namespace symmpinn;

constexpr int exit_ok = 0;
constexpr int exit_diverged = 1;
constexpr int exit_config = 2;
constexpr int exit_other = 3;

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> problem;
    std::string case_name;
    std::string activation;
    std::optional<std::size_t> iterations;
    std::optional<std::size_t> restarts;
};

training::TrainConfig resolve_config(const Overrides& o) {
    training::TrainConfig cfg = o.config.empty() ? training::TrainConfig{} : report::load_config(o.config);
    if (o.problem) {
        if (*o.problem != 1 && *o.problem != 2) throw config_error("--problem", "expected 1 or 2");
        cfg.problem = *o.problem == 1 ? ProblemTag::p1 : ProblemTag::p2;
    }
    if (!o.case_name.empty()) {
        cfg.case_kind = training::parse_case(o.case_name, "--case");
        if (cfg.case_kind == training::Case::A) cfg.generators.clear();
        else if (cfg.generators.empty()) cfg.generators = {symmetry::GeneratorId::L5};
    }
    if (!o.activation.empty()) {
        const auto a = parse_activation(o.activation);
        if (!a) throw config_error("--activation", "unknown activation '" + o.activation + "'");
        cfg.activation = *a;
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.iterations) cfg.iterations = *o.iterations;
    if (o.restarts) cfg.restarts = *o.restarts;
    cfg.validate();
    return cfg;
}

ProblemTag problem_tag(int p) {
    if (p != 1 && p != 2) throw config_error("--problem", "expected 1 or 2");
    return p == 1 ? ProblemTag::p1 : ProblemTag::p2;
}

void print_table(const report::ErrorTable& t) {
    std::printf("%-6s %-6s %-12s %-12s %s\n", "x", "t", "exact", "predicted", "abs_error");
    for (const auto& r : t.rows) std::printf("%-6.3g %-6.3g %-12.6f %-12.6f %.3e\n", r.x, r.t, r.exact, r.predicted, r.abs_error);
    std::printf("mean abs error %.4e, max %.4e\n", t.mean_abs_error(), t.max_abs_error());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Physics-informed networks for the viscous Burgers equation"};
    app.require_subcommand(1);

    Overrides ov;
    std::string out_dir = "run";
    bool quiet = false;
    auto* train = app.add_subcommand("train", "Train a model and write checkpoint, loss history and error table");
    train->add_option("--config", ov.config, "JSON configuration file")->check(CLI::ExistingFile);
    train->add_option("--out", out_dir, "Output directory");
    train->add_option("--seed", ov.seed, "Override the configured seed");
    train->add_option("--problem", ov.problem, "Problem 1 (4x(1-x)) or 2 (sin(pi x))");
    train->add_option("--case", ov.case_name, "A (plain), B (symmetry) or C (symmetry + adaptive)");
    train->add_option("--activation", ov.activation, "tanh, gelu, mish, swish, softplus, tanhexp");
    train->add_option("--iterations", ov.iterations, "Override the number of Adam steps");
    train->add_option("--restarts", ov.restarts, "Override the number of restarts");
    train->add_flag("--quiet", quiet, "No progress output");

    std::string model_path;
    int problem = 1;
    auto* evaluate = app.add_subcommand("evaluate", "Error table of a checkpoint at the comparison points");
    evaluate->add_option("--model", model_path, "Checkpoint file")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--problem", problem, "1 or 2");
    evaluate->add_option("--out", out_dir, "Output directory");

    double dx = 0.01, dt = 0.01;
    auto* surfaces = app.add_subcommand("surfaces", "Surface, error, gradient and cross-section grids as CSV");
    surfaces->add_option("--model", model_path, "Checkpoint file")->required()->check(CLI::ExistingFile);
    surfaces->add_option("--problem", problem, "1 or 2");
    surfaces->add_option("--dx", dx, "Grid spacing in x");
    surfaces->add_option("--dt", dt, "Grid spacing in t");
    surfaces->add_option("--out", out_dir, "Output directory");

    int repeats = 5;
    std::uint64_t bench_seed = 0;
    auto* bench = app.add_subcommand("benchmark", "Prediction + residual time for 1000..10000 points");
    bench->add_option("--model", model_path, "Checkpoint file")->required()->check(CLI::ExistingFile);
    bench->add_option("--problem", problem, "1 or 2");
    bench->add_option("--repeats", repeats, "Runs per count (median is reported)");
    bench->add_option("--seed", bench_seed, "Seed for the evaluation points");
    bench->add_option("--out", out_dir, "Output directory");

    std::string table_path;
    std::string baselines_path = report::default_baselines_path();
    auto* compare = app.add_subcommand("compare", "Compare an error table with the published baseline errors");
    auto* cmp_model = compare->add_option("--model", model_path, "Checkpoint file")->check(CLI::ExistingFile);
    auto* cmp_table = compare->add_option("--table", table_path, "error_table.csv from train/evaluate")->check(CLI::ExistingFile);
    cmp_model->excludes(cmp_table);
    compare->add_option("--problem", problem, "1 or 2 (with --model)");
    compare->add_option("--baselines", baselines_path, "Baseline asset")->check(CLI::ExistingFile);
    compare->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*train) {
            const auto cfg = resolve_config(ov);
            training::ProgressFn progress;
            if (!quiet)
                progress = [&](std::size_t r, const training::LogEntry& e) {
                    if (e.iteration % (cfg.log_every * 10) == 0 || e.iteration == cfg.iterations)
                        std::fprintf(stderr, "restart %zu  it %6zu  total %.4e  init %.3e  bound %.3e  res %.3e  symm %.3e\n", r,
                                     e.iteration, e.loss.total, e.loss.l_init, e.loss.l_bound, e.loss.l_res, e.loss.l_symm);
                };
            const auto res = report::run_experiment(cfg, out_dir, progress);
            print_table(res.table);
            std::printf("artifacts in %s (%.1f s)\n", out_dir.c_str(), res.wall_seconds);
            return exit_ok;
        }
        if (*evaluate) {
            const auto model = load_checkpoint(model_path);
            const auto tag = problem_tag(problem);
            const auto c = oracle::series_coefficients(tag, 0.1);
            const auto table = report::make_error_table(model, c, report::canonical_points(tag));
            print_table(table);
            std::filesystem::create_directories(out_dir);
            report::write_text(out_dir + "/error_table.csv", report::to_csv(report::to_csv_table(table)));
            report::write_text(out_dir + "/error_table.json", report::to_json(table).dump(2) + "\n");
            return exit_ok;
        }
        if (*surfaces) {
            const auto model = load_checkpoint(model_path);
            const auto tag = problem_tag(problem);
            const auto p = make_problem(tag);
            const auto c = oracle::series_coefficients(tag, p.nu);
            const auto s = report::emit_surfaces(model, p, c, dx, dt, out_dir);
            std::printf("wrote %zu grid points to %s\n", s.model.rows.size(), out_dir.c_str());
            return exit_ok;
        }
        if (*bench) {
            const auto model = load_checkpoint(model_path);
            const auto p = make_problem(problem_tag(problem));
            const auto t = report::benchmark_inference(model, p, report::default_counts(), bench_seed, repeats);
            for (const auto& r : t.rows) std::printf("%6zu  %.6f s\n", r.count, r.seconds);
            std::printf("fit: %.3e s/point + %.3e s, R^2 = %.5f\n", t.fit.slope, t.fit.intercept, t.fit.r2);
            std::filesystem::create_directories(out_dir);
            report::write_text(out_dir + "/benchmark.csv", report::to_csv(report::to_csv_table(t)));
            return exit_ok;
        }
        if (*compare) {
            report::ErrorTable table;
            if (!table_path.empty()) {
                table = report::error_table_from_csv(report::parse_csv(report::read_text(table_path)));
            } else if (!model_path.empty()) {
                const auto tag = problem_tag(problem);
                table = report::make_error_table(load_checkpoint(model_path), oracle::series_coefficients(tag, 0.1),
                                                 report::canonical_points(tag));
            } else {
                throw config_error("compare", "need --model or --table");
            }
            const auto b = report::load_baselines(baselines_path);
            const auto rep = report::compare_with_baselines(table, b);
            std::fputs(rep.to_text().c_str(), stdout);
            std::filesystem::create_directories(out_dir);
            report::write_text(out_dir + "/comparison.csv", report::to_csv(rep.to_csv()));
            return exit_ok;
        }
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const training::training_failed& e) {
        std::fprintf(stderr, "%s (history in %s/train_record.jsonl)\n", e.what(), out_dir.c_str());
        return exit_diverged;
    } catch (const training_diverged& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return exit_diverged;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_other;
    }
    return exit_ok;
}
