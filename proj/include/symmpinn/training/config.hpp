#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symmpinn/error.hpp"
#include "symmpinn/network/activation.hpp"
#include "symmpinn/pde/problem.hpp"
#include "symmpinn/symmetry/transform.hpp"

namespace symmpinn::training {

/// A: plain PINN. B: PINN plus symmetry-transformed residual term.
/// C: B with trainable activation slopes.
enum class Case { A, B, C };

inline std::string to_string(Case c) { return c == Case::A ? "A" : c == Case::B ? "B" : "C"; }

inline Case parse_case(const std::string& s, const std::string& field = "case") {
    if (s == "A" || s == "a") return Case::A;
    if (s == "B" || s == "b") return Case::B;
    if (s == "C" || s == "c") return Case::C;
    throw config_error(field, "expected one of A, B, C");
}

struct LossWeights {
    double init = 1.0;
    double bound = 1.0;
    double res = 1.0;
    double symm = 1.0;
};

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Learning rate `lr` applies to iterations below `until`; the last stage
/// also covers everything past its threshold.
struct LrStage {
    std::size_t until = 0;
    double lr = 1e-3;
};

struct TrainConfig {
    ProblemTag problem = ProblemTag::p1;
    Case case_kind = Case::C;
    ActivationKind activation = ActivationKind::gelu;
    std::size_t hidden_layers = 8;
    std::size_t neurons = 40;
    std::size_t n_init = 500;
    std::size_t n_bound = 500;
    std::size_t n_colloc = 20000;
    std::size_t iterations = 50000;
    std::uint64_t seed = 0;
    std::size_t restarts = 10;
    std::vector<LrStage> lr_schedule; // empty: three-stage default scaled to `iterations`
    AdamConfig adam;
    std::vector<symmetry::GeneratorId> generators{symmetry::GeneratorId::L5};
    double epsilon = 0.5;
    symmetry::DomainPolicy out_of_domain = symmetry::DomainPolicy::keep;
    LossWeights weights;
    int slope_gain = 10;
    double initial_slope = 0.1;
    std::size_t log_every = 100;

    bool adaptive() const noexcept { return case_kind == Case::C; }

    /// Effective schedule: 1e-3 for the first 40% of iterations, 5e-4 up to
    /// 80%, 1e-4 afterwards, unless an explicit schedule is given.
    std::vector<LrStage> schedule() const {
        if (!lr_schedule.empty()) return lr_schedule;
        return {{iterations * 2 / 5, 1e-3}, {iterations * 4 / 5, 5e-4}, {iterations, 1e-4}};
    }

    double learning_rate(std::size_t iteration) const {
        const auto s = schedule();
        for (const auto& stage : s)
            if (iteration < stage.until) return stage.lr;
        return s.back().lr;
    }

    void validate() const {
        if (hidden_layers == 0) throw config_error("hidden_layers", "must be positive");
        if (neurons == 0) throw config_error("neurons", "must be positive");
        if (n_init == 0) throw config_error("n_init", "must be positive");
        if (n_bound < 2) throw config_error("n_bound", "need at least one point per wall");
        if (n_colloc == 0) throw config_error("n_colloc", "must be positive");
        if (iterations == 0) throw config_error("iterations", "must be positive");
        if (restarts == 0) throw config_error("restarts", "must be positive");
        if (log_every == 0) throw config_error("log_every", "must be positive");
        if (slope_gain < 1) throw config_error("slope_gain", "must be >= 1");
        if (!(initial_slope > 0.0)) throw config_error("initial_slope", "must be positive");
        if (!std::isfinite(epsilon)) throw config_error("epsilon", "must be finite");
        if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0)) throw config_error("adam.beta1", "must lie in [0, 1)");
        if (!(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) throw config_error("adam.beta2", "must lie in [0, 1)");
        if (!(adam.eps > 0.0)) throw config_error("adam.eps", "must be positive");
        for (std::size_t i = 0; i < lr_schedule.size(); ++i) {
            if (!(lr_schedule[i].lr > 0.0))
                throw config_error("lr_schedule[" + std::to_string(i) + "]", "learning rate must be positive");
            if (i > 0 && lr_schedule[i].until <= lr_schedule[i - 1].until)
                throw config_error("lr_schedule[" + std::to_string(i) + "]", "thresholds must increase");
        }
        for (const auto* w : {&weights.init, &weights.bound, &weights.res, &weights.symm})
            if (!(*w >= 0.0)) throw config_error("weights", "loss weights must be non-negative");
        if (case_kind == Case::A && !generators.empty())
            throw config_error("generators", "case A trains without symmetry terms");
        if (case_kind != Case::A && generators.empty())
            throw config_error("generators", "cases B and C need at least one generator");
    }
};

/// Table-scale configuration for one case (8 x 40, 500/500/20000 points,
/// 50000 iterations, 10 restarts).
inline TrainConfig full_config(ProblemTag problem, Case c, ActivationKind act) {
    TrainConfig cfg;
    cfg.problem = problem;
    cfg.case_kind = c;
    cfg.activation = act;
    if (c == Case::A) cfg.generators.clear();
    return cfg;
}

// ---- JSON --------------------------------------------------------------

namespace detail {

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& path) {
    if (!j.is_object()) throw config_error(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw config_error(path.empty() ? key : path + "." + key, "unknown key");
}

template <class T>
T get_field(const nlohmann::json& j, const std::string& key, const std::string& path) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error(path, std::string("invalid value: ") + e.what());
    }
}

inline std::size_t get_count(const nlohmann::json& j, const std::string& key, const std::string& path) {
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw config_error(path, "expected a non-negative integer");
    return v.get<std::size_t>();
}

} // namespace detail

inline nlohmann::json to_json(const TrainConfig& c) {
    nlohmann::json gens = nlohmann::json::array();
    for (auto g : c.generators) gens.push_back(std::string(symmetry::to_string(g)));
    nlohmann::json sched = nlohmann::json::array();
    for (const auto& s : c.lr_schedule) sched.push_back({s.until, s.lr});
    const char* policy = c.out_of_domain == symmetry::DomainPolicy::keep    ? "keep"
                         : c.out_of_domain == symmetry::DomainPolicy::clamp ? "clamp"
                                                                             : "discard";
    return {{"problem", c.problem == ProblemTag::p1 ? 1 : 2},
            {"case", to_string(c.case_kind)},
            {"activation", std::string(to_string(c.activation))},
            {"hidden_layers", c.hidden_layers},
            {"neurons", c.neurons},
            {"n_init", c.n_init},
            {"n_bound", c.n_bound},
            {"n_colloc", c.n_colloc},
            {"iterations", c.iterations},
            {"seed", c.seed},
            {"restarts", c.restarts},
            {"lr_schedule", sched},
            {"adam", {{"beta1", c.adam.beta1}, {"beta2", c.adam.beta2}, {"eps", c.adam.eps}}},
            {"generators", gens},
            {"epsilon", c.epsilon},
            {"out_of_domain", policy},
            {"weights", {{"init", c.weights.init}, {"bound", c.weights.bound}, {"res", c.weights.res}, {"symm", c.weights.symm}}},
            {"slope_gain", c.slope_gain},
            {"initial_slope", c.initial_slope},
            {"log_every", c.log_every}};
}

/// Parses a configuration. Keys not listed in the schema are errors; absent
/// keys keep their defaults. For case A an absent "generators" key means no
/// generators.
inline TrainConfig config_from_json(const nlohmann::json& j) {
    using detail::get_count;
    using detail::get_field;
    detail::reject_unknown(j,
                           {"problem", "case", "activation", "hidden_layers", "neurons", "n_init", "n_bound",
                            "n_colloc", "iterations", "seed", "restarts", "lr_schedule", "adam", "generators",
                            "epsilon", "out_of_domain", "weights", "slope_gain", "initial_slope", "log_every"},
                           "");
    TrainConfig c;
    if (j.contains("problem")) {
        const auto p = get_field<int>(j, "problem", "problem");
        if (p != 1 && p != 2) throw config_error("problem", "expected 1 or 2");
        c.problem = p == 1 ? ProblemTag::p1 : ProblemTag::p2;
    }
    if (j.contains("case")) c.case_kind = parse_case(get_field<std::string>(j, "case", "case"));
    if (c.case_kind == Case::A) c.generators.clear();
    if (j.contains("activation")) {
        const auto name = get_field<std::string>(j, "activation", "activation");
        const auto act = parse_activation(name);
        if (!act) throw config_error("activation", "unknown activation '" + name + "'");
        c.activation = *act;
    }
    for (auto [key, dst] : {std::pair{"hidden_layers", &c.hidden_layers}, std::pair{"neurons", &c.neurons},
                            std::pair{"n_init", &c.n_init}, std::pair{"n_bound", &c.n_bound},
                            std::pair{"n_colloc", &c.n_colloc}, std::pair{"iterations", &c.iterations},
                            std::pair{"restarts", &c.restarts}, std::pair{"log_every", &c.log_every}})
        if (j.contains(key)) *dst = get_count(j, key, key);
    if (j.contains("seed")) c.seed = get_count(j, "seed", "seed");
    if (j.contains("lr_schedule")) {
        const auto& s = j.at("lr_schedule");
        if (!s.is_array()) throw config_error("lr_schedule", "expected an array of [until, lr] pairs");
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string path = "lr_schedule[" + std::to_string(i) + "]";
            if (!s[i].is_array() || s[i].size() != 2 || !s[i][0].is_number_integer() || !s[i][1].is_number())
                throw config_error(path, "expected [until, lr]");
            c.lr_schedule.push_back({s[i][0].get<std::size_t>(), s[i][1].get<double>()});
        }
    }
    if (j.contains("adam")) {
        const auto& a = j.at("adam");
        detail::reject_unknown(a, {"beta1", "beta2", "eps"}, "adam");
        if (a.contains("beta1")) c.adam.beta1 = get_field<double>(a, "beta1", "adam.beta1");
        if (a.contains("beta2")) c.adam.beta2 = get_field<double>(a, "beta2", "adam.beta2");
        if (a.contains("eps")) c.adam.eps = get_field<double>(a, "eps", "adam.eps");
    }
    if (j.contains("generators")) {
        const auto& g = j.at("generators");
        if (!g.is_array()) throw config_error("generators", "expected an array of names L1..L5");
        c.generators.clear();
        for (std::size_t i = 0; i < g.size(); ++i) {
            const std::string path = "generators[" + std::to_string(i) + "]";
            if (!g[i].is_string()) throw config_error(path, "expected a generator name");
            const auto id = symmetry::parse_generator(g[i].get<std::string>());
            if (!id) throw config_error(path, "unknown generator '" + g[i].get<std::string>() + "'");
            c.generators.push_back(*id);
        }
    }
    if (j.contains("epsilon")) c.epsilon = get_field<double>(j, "epsilon", "epsilon");
    if (j.contains("out_of_domain")) {
        const auto p = get_field<std::string>(j, "out_of_domain", "out_of_domain");
        if (p == "keep") c.out_of_domain = symmetry::DomainPolicy::keep;
        else if (p == "clamp") c.out_of_domain = symmetry::DomainPolicy::clamp;
        else if (p == "discard") c.out_of_domain = symmetry::DomainPolicy::discard;
        else throw config_error("out_of_domain", "expected keep, clamp or discard");
    }
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        detail::reject_unknown(w, {"init", "bound", "res", "symm"}, "weights");
        if (w.contains("init")) c.weights.init = get_field<double>(w, "init", "weights.init");
        if (w.contains("bound")) c.weights.bound = get_field<double>(w, "bound", "weights.bound");
        if (w.contains("res")) c.weights.res = get_field<double>(w, "res", "weights.res");
        if (w.contains("symm")) c.weights.symm = get_field<double>(w, "symm", "weights.symm");
    }
    if (j.contains("slope_gain")) c.slope_gain = get_field<int>(j, "slope_gain", "slope_gain");
    if (j.contains("initial_slope")) c.initial_slope = get_field<double>(j, "initial_slope", "initial_slope");
    c.validate();
    return c;
}

} // namespace symmpinn::training
