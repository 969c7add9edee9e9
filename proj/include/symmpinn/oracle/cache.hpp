#pragma once

#include <filesystem>
#include <fstream>
#include <optional>

#include <nlohmann/json.hpp>

#include "symmpinn/oracle/series.hpp"

namespace symmpinn::oracle {

// {"problem": "P1", "nu": .., "n_max": .., "tol": .., "t_min": ..,
//  "k0": .., "kn": [..], "converged": true}
inline nlohmann::json coefficients_to_json(const SeriesCoefficients& c, const SeriesOptions& opts) {
    return {{"problem", c.problem_tag == ProblemTag::p1 ? "P1" : "P2"},
            {"nu", c.nu},
            {"n_max", opts.n_max},
            {"tol", opts.tol},
            {"t_min", opts.t_min},
            {"k0", c.k0},
            {"kn", c.kn},
            {"converged", c.converged}};
}

/// Cached coefficients when `path` exists and its key matches, otherwise
/// computes them and rewrites the cache.
inline SeriesCoefficients load_or_compute_coefficients(const std::filesystem::path& path, ProblemTag tag, double nu,
                                                       const SeriesOptions& opts = {}) {
    const std::string tag_name = tag == ProblemTag::p1 ? "P1" : "P2";
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        const auto j = nlohmann::json::parse(in, nullptr, false);
        if (!j.is_discarded() && j.value("problem", "") == tag_name && j.value("nu", -1.0) == nu &&
            j.value("n_max", std::size_t{0}) == opts.n_max && j.value("tol", -1.0) == opts.tol &&
            j.value("t_min", -1.0) == opts.t_min) {
            SeriesCoefficients c;
            c.problem_tag = tag;
            c.nu = nu;
            c.k0 = j.at("k0").get<double>();
            c.kn = j.at("kn").get<std::vector<double>>();
            c.converged = j.at("converged").get<bool>();
            return c;
        }
    }
    auto c = series_coefficients(tag, nu, opts);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream(path) << coefficients_to_json(c, opts).dump(1) << '\n';
    return c;
}

} // namespace symmpinn::oracle
