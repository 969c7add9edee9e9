#pragma once

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "symmpinn/network/checkpoint.hpp"
#include "symmpinn/report/error_table.hpp"
#include "symmpinn/training/trainer.hpp"

namespace symmpinn::report {

/// `git describe --always --dirty` of the source tree, or "unknown".
inline std::string git_describe() {
#ifdef SYMMPINN_SOURCE_DIR
    const std::string cmd = "git -C \"" + std::string(SYMMPINN_SOURCE_DIR) + "\" describe --always --dirty 2>/dev/null";
#else
    const std::string cmd = "git describe --always --dirty 2>/dev/null";
#endif
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return "unknown";
    std::array<char, 128> buf{};
    std::string out;
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe.get())) out += buf.data();
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    return out.empty() ? "unknown" : out;
}

inline training::TrainConfig load_config(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("<file>", std::string("not valid JSON: ") + e.what());
    } catch (const error& e) {
        throw config_error("<file>", e.what());
    }
    return training::config_from_json(j);
}

struct ExperimentResult {
    training::TrainResult train;
    ErrorTable table;
    double wall_seconds = 0.0;
};

/// Trains per `cfg` and writes into `out_dir`:
///   config.json        effective configuration
///   checkpoint.json    best model
///   train_record.jsonl loss history of every restart
///   error_table.csv / error_table.json
///   manifest.json      git describe, seed, wall-clock
/// On divergence of every restart, train_record.jsonl is still written and
/// training_failed is rethrown.
inline ExperimentResult run_experiment(const training::TrainConfig& cfg, const std::string& out_dir,
                                       const training::ProgressFn& progress = {}) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    write_text(out_dir + "/config.json", training::to_json(cfg).dump(2) + "\n");
    const auto problem = make_problem(cfg.problem);
    const auto start = std::chrono::steady_clock::now();
    const auto started_at = std::time(nullptr);

    ExperimentResult res;
    try {
        res.train = training::train(problem, cfg, progress);
    } catch (const training::training_failed& e) {
        write_text(out_dir + "/train_record.jsonl", training::to_json_lines(e.record()));
        throw;
    }
    const auto coeffs = oracle::series_coefficients(cfg.problem, problem.nu);
    res.table = make_error_table(res.train.model, coeffs, canonical_points(cfg.problem), training::to_string(cfg.case_kind),
                                 std::string(to_string(cfg.activation)));
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    save_checkpoint(res.train.model, out_dir + "/checkpoint.json");
    write_text(out_dir + "/train_record.jsonl", training::to_json_lines(res.train.record));
    write_text(out_dir + "/error_table.csv", to_csv(to_csv_table(res.table)));
    write_text(out_dir + "/error_table.json", to_json(res.table).dump(2) + "\n");

    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&started_at));
    const nlohmann::json manifest{{"git_describe", git_describe()},
                                  {"seed", cfg.seed},
                                  {"best_restart", res.train.record.best},
                                  {"best_seed", cfg.seed + res.train.record.best},
                                  {"started_at", stamp},
                                  {"wall_clock_seconds", res.wall_seconds},
                                  {"mean_abs_error", res.table.mean_abs_error()},
                                  {"config", training::to_json(cfg)}};
    write_text(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return res;
}

} // namespace symmpinn::report
