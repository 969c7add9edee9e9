#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "symmpinn/error.hpp"
#include "symmpinn/network/mlp.hpp"

namespace symmpinn {

// Checkpoint format, version 1 (JSON):
//   {"format": "symmpinn.mlp", "version": 1, "layer_sizes": [...],
//    "activation": "gelu", "adaptive": true, "slope_gain": 10,
//    "params": [...]}
// `params` is the flat vector of MlpModel (per layer W row-major then b,
// then one slope per hidden layer). Doubles are written with 17 significant
// digits so a save/load cycle is exact.

inline constexpr int checkpoint_version = 1;

inline nlohmann::json checkpoint_json(const MlpModel& m) {
    return {{"format", "symmpinn.mlp"},
            {"version", checkpoint_version},
            {"layer_sizes", m.layer_sizes},
            {"activation", std::string(to_string(m.activation))},
            {"adaptive", m.adaptive},
            {"slope_gain", m.slope_gain},
            {"params", m.params}};
}

inline MlpModel model_from_checkpoint(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "symmpinn.mlp") throw config_error("format", "not a model checkpoint");
        if (j.at("version").get<int>() != checkpoint_version)
            throw config_error("version", "unsupported checkpoint version");
        MlpModel m;
        m.layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
        validate_layer_sizes(m.layer_sizes);
        const auto name = j.at("activation").get<std::string>();
        const auto act = parse_activation(name);
        if (!act) throw config_error("activation", "unknown activation '" + name + "'");
        m.activation = *act;
        m.adaptive = j.at("adaptive").get<bool>();
        m.slope_gain = j.at("slope_gain").get<int>();
        m.params = j.at("params").get<std::vector<double>>();
        if (m.params.size() != m.weight_param_count() + m.hidden_count())
            throw config_error("params", "length does not match layer_sizes");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("checkpoint", e.what());
    }
}

inline std::string checkpoint_string(const MlpModel& m) { return checkpoint_json(m).dump(1); }

inline void save_checkpoint(const MlpModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << checkpoint_string(m) << '\n';
}

inline MlpModel load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return model_from_checkpoint(nlohmann::json::parse(ss.str()));
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("checkpoint", e.what());
    }
}

} // namespace symmpinn
