#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symmpinn/network/mlp.hpp"
#include "symmpinn/oracle/series.hpp"
#include "symmpinn/report/csv.hpp"

namespace symmpinn::report {

struct GridPoint {
    double x;
    double t;
};

/// Comparison points: {0.25, 0.5, 0.75} x {0.4, 0.8, 1, 3} for problem 1;
/// {0.25, 0.5, 0.75} x {2.4, 2.6, 3} followed by x = 0.1..0.9 at t = 2.5 for
/// problem 2.
inline std::vector<GridPoint> canonical_points(ProblemTag tag) {
    std::vector<GridPoint> pts;
    if (tag == ProblemTag::p1) {
        for (double x : {0.25, 0.5, 0.75})
            for (double t : {0.4, 0.8, 1.0, 3.0}) pts.push_back({x, t});
    } else {
        for (double x : {0.25, 0.5, 0.75})
            for (double t : {2.4, 2.6, 3.0}) pts.push_back({x, t});
        for (int i = 1; i <= 9; ++i) pts.push_back({i / 10.0, 2.5});
    }
    return pts;
}

struct ErrorRow {
    double x, t, exact, predicted, abs_error;
    bool operator==(const ErrorRow&) const = default;
};

struct ErrorTable {
    ProblemTag problem = ProblemTag::p1;
    std::string case_label;
    std::string activation_label;
    std::vector<ErrorRow> rows;

    bool operator==(const ErrorTable&) const = default;

    double mean_abs_error() const {
        if (rows.empty()) return 0.0;
        double s = 0.0;
        for (const auto& r : rows) s += r.abs_error;
        return s / static_cast<double>(rows.size());
    }
    double max_abs_error() const {
        double m = 0.0;
        for (const auto& r : rows) m = std::max(m, r.abs_error);
        return m;
    }
};

inline ErrorTable make_error_table(const MlpModel& model, const oracle::SeriesCoefficients& c,
                                   const std::vector<GridPoint>& points, std::string case_label = {},
                                   std::string activation_label = {}) {
    ErrorTable table;
    table.problem = c.problem_tag;
    table.case_label = std::move(case_label);
    table.activation_label = activation_label.empty() ? std::string(to_string(model.activation)) : activation_label;
    for (const auto& p : points) {
        const double exact = oracle::exact_u(c, p.x, p.t);
        const double pred = forward(model, p.x, p.t);
        table.rows.push_back({p.x, p.t, exact, pred, std::abs(pred - exact)});
    }
    return table;
}

inline CsvTable to_csv_table(const ErrorTable& e) {
    CsvTable t;
    t.meta = {{"problem", to_string(e.problem)}, {"case", e.case_label}, {"activation", e.activation_label}};
    t.columns = {"x", "t", "exact", "predicted", "abs_error"};
    for (const auto& r : e.rows) t.rows.push_back({r.x, r.t, r.exact, r.predicted, r.abs_error});
    return t;
}

inline ErrorTable error_table_from_csv(const CsvTable& t) {
    ErrorTable e;
    for (const auto& [k, v] : t.meta) {
        if (k == "problem") e.problem = v == "2" ? ProblemTag::p2 : ProblemTag::p1;
        else if (k == "case") e.case_label = v;
        else if (k == "activation") e.activation_label = v;
    }
    if (t.columns != std::vector<std::string>{"x", "t", "exact", "predicted", "abs_error"})
        throw error("error table: unexpected columns");
    for (const auto& r : t.rows) e.rows.push_back({r[0], r[1], r[2], r[3], r[4]});
    return e;
}

inline nlohmann::json to_json(const ErrorTable& e) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : e.rows)
        rows.push_back({{"x", r.x}, {"t", r.t}, {"exact", r.exact}, {"predicted", r.predicted}, {"abs_error", r.abs_error}});
    return {{"problem", e.problem == ProblemTag::p1 ? 1 : 2},
            {"case", e.case_label},
            {"activation", e.activation_label},
            {"mean_abs_error", e.mean_abs_error()},
            {"max_abs_error", e.max_abs_error()},
            {"rows", rows}};
}

inline ErrorTable error_table_from_json(const nlohmann::json& j) {
    ErrorTable e;
    e.problem = j.at("problem").get<int>() == 2 ? ProblemTag::p2 : ProblemTag::p1;
    e.case_label = j.at("case").get<std::string>();
    e.activation_label = j.at("activation").get<std::string>();
    for (const auto& r : j.at("rows"))
        e.rows.push_back({r.at("x").get<double>(), r.at("t").get<double>(), r.at("exact").get<double>(),
                          r.at("predicted").get<double>(), r.at("abs_error").get<double>()});
    return e;
}

} // namespace symmpinn::report
