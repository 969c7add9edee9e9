#pragma once

#include <chrono>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symmpinn/error.hpp"
#include "symmpinn/network/mlp.hpp"
#include "symmpinn/training/adam.hpp"
#include "symmpinn/training/loss.hpp"

namespace symmpinn::training {

struct LogEntry {
    std::size_t iteration = 0;
    LossBreakdown loss;
    double lr = 0.0;
    double wall_ms = 0.0;
};

struct RestartRecord {
    std::uint64_t seed = 0;
    std::vector<LogEntry> log;
    bool diverged = false;
    std::string message;
    /// Loss of the final parameters (after the last step).
    double final_total = std::numeric_limits<double>::infinity();
};

struct TrainRecord {
    std::vector<RestartRecord> restarts;
    std::size_t best = 0;
};

struct TrainResult {
    MlpModel model;
    TrainRecord record;
};

/// Every restart diverged; the histories are kept for inspection.
class training_failed : public training_diverged {
public:
    training_failed(std::size_t iteration, TrainRecord record)
        : training_diverged(iteration, "all restarts diverged"), record_(std::move(record)) {}

    const TrainRecord& record() const noexcept { return record_; }

private:
    TrainRecord record_;
};

using ProgressFn = std::function<void(std::size_t restart, const LogEntry&)>;

inline MlpModel initial_model(const TrainConfig& cfg, std::uint64_t seed) {
    InitOptions opts;
    opts.activation = cfg.activation;
    opts.adaptive = cfg.adaptive();
    opts.slope_gain = cfg.slope_gain;
    opts.initial_slope = cfg.initial_slope;
    return init_glorot(make_layer_sizes(cfg.hidden_layers, cfg.neurons), seed, opts);
}

/// One training run from `seed`: samples and initial weights both derive
/// from it. Throws training_diverged on overflow.
inline MlpModel train_once(const ProblemSpec& p, const TrainConfig& cfg, std::uint64_t seed, RestartRecord& rec,
                           const ProgressFn& progress = {}, std::size_t restart = 0) {
    rec.seed = seed;
    const auto samples = sample(p, cfg, seed);
    MlpModel model = initial_model(cfg, seed);
    BatchKernel kernel;
    std::vector<double> grad(model.params.size());
    AdamState adam(model.params.size());
    const std::size_t trainable = model.adaptive ? model.params.size() : model.weight_param_count();
    const auto start = std::chrono::steady_clock::now();
    const auto log = [&](std::size_t it, const LossBreakdown& l, double lr) {
        LogEntry e{it, l, lr, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()};
        rec.log.push_back(e);
        if (progress) progress(restart, e);
    };

    for (std::size_t it = 0; it < cfg.iterations; ++it) {
        const double lr = cfg.learning_rate(it);
        const auto l = loss(model, p, samples, cfg.weights, kernel, grad, it);
        if (it % cfg.log_every == 0) log(it, l, lr);
        adam_step(adam, model.params, grad, lr, cfg.adam, trainable);
        if (model.adaptive)
            for (std::size_t h = 0; h < model.hidden_count(); ++h) {
                auto& a = model.params[model.slope_offset(h)];
                a = std::max(a, min_slope);
            }
    }
    const auto final_loss = loss(model, p, samples, cfg.weights, kernel, {}, cfg.iterations);
    log(cfg.iterations, final_loss, cfg.learning_rate(cfg.iterations));
    rec.final_total = final_loss.total;
    return model;
}

/// cfg.restarts independent runs with seeds seed, seed+1, ...; returns the
/// run with the lowest final total loss.
inline TrainResult train(const ProblemSpec& p, const TrainConfig& cfg, const ProgressFn& progress = {}) {
    cfg.validate();
    TrainResult result;
    bool any = false;
    std::size_t last_failure = 0;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        RestartRecord rec;
        try {
            MlpModel m = train_once(p, cfg, cfg.seed + r, rec, progress, r);
            if (!any || rec.final_total < result.record.restarts[result.record.best].final_total) {
                result.model = std::move(m);
                result.record.best = r;
            }
            any = true;
        } catch (const training_diverged& e) {
            rec.diverged = true;
            rec.message = e.what();
            last_failure = e.iteration();
        }
        result.record.restarts.push_back(std::move(rec));
    }
    if (!any) throw training_failed(last_failure, std::move(result.record));
    return result;
}

// ---- JSON lines ----------------------------------------------------------

inline nlohmann::json to_json(const LogEntry& e, std::size_t restart) {
    return {{"restart", restart},
            {"iteration", e.iteration},
            {"l_init", e.loss.l_init},
            {"l_bound", e.loss.l_bound},
            {"l_res", e.loss.l_res},
            {"l_symm", e.loss.l_symm},
            {"total", e.loss.total},
            {"lr", e.lr},
            {"wall_ms", e.wall_ms}};
}

/// One JSON object per logged step, restarts in order.
inline std::string to_json_lines(const TrainRecord& rec) {
    std::string out;
    for (std::size_t r = 0; r < rec.restarts.size(); ++r)
        for (const auto& e : rec.restarts[r].log) out += to_json(e, r).dump() + "\n";
    return out;
}

} // namespace symmpinn::training
