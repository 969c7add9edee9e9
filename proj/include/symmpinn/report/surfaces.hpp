#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "symmpinn/oracle/series.hpp"
#include "symmpinn/report/csv.hpp"
#include "symmpinn/training/batch_kernel.hpp"

namespace symmpinn::report {

struct SurfaceGrid {
    std::vector<double> x, t;
};

/// Uniform grid over the problem box including both ends. The point count
/// per axis is round(extent / step) + 1.
inline SurfaceGrid make_grid(const ProblemSpec& p, double dx, double dt) {
    if (!(dx > 0.0)) throw config_error("dx", "grid spacing must be positive");
    if (!(dt > 0.0)) throw config_error("dt", "grid spacing must be positive");
    const auto nx = static_cast<std::size_t>(std::llround((p.x_hi - p.x_lo) / dx)) + 1;
    const auto nt = static_cast<std::size_t>(std::llround(p.t_end / dt)) + 1;
    SurfaceGrid g;
    for (std::size_t i = 0; i < nx; ++i) g.x.push_back(i + 1 == nx ? p.x_hi : p.x_lo + static_cast<double>(i) * dx);
    for (std::size_t j = 0; j < nt; ++j) g.t.push_back(j + 1 == nt ? p.t_end : static_cast<double>(j) * dt);
    return g;
}

inline std::vector<double> cross_section_times(ProblemTag tag) {
    if (tag == ProblemTag::p1) return {0.0, 0.4, 0.8, 1.0};
    return {1.7, 2.4, 2.5, 2.6, 3.0};
}

struct Surfaces {
    CsvTable model;     // x, t, u
    CsvTable exact;     // x, t, u
    CsvTable error;     // x, t, abs_error
    CsvTable gradient;  // x, t, u_x, u_t
    CsvTable sections;  // t, x, model, exact
};

/// Plot data on a (dx, dt) grid. Rows run over x fastest, then t.
inline Surfaces compute_surfaces(const MlpModel& model, const ProblemSpec& p, const oracle::SeriesCoefficients& c,
                                 double dx, double dt) {
    const auto g = make_grid(p, dx, dt);
    std::vector<double> xs, ts;
    xs.reserve(g.x.size() * g.t.size());
    ts.reserve(xs.capacity());
    for (double t : g.t)
        for (double x : g.x) {
            xs.push_back(x);
            ts.push_back(t);
        }
    training::BatchKernel kernel;
    const auto jets = kernel.jets(model, xs, ts);

    Surfaces s;
    const std::vector<std::pair<std::string, std::string>> meta{
        {"problem", to_string(p.oracle_id)},
        {"nx", std::to_string(g.x.size())},
        {"nt", std::to_string(g.t.size())},
        {"dx", format_double(dx)},
        {"dt", format_double(dt)}};
    s.model.meta = s.exact.meta = s.error.meta = s.gradient.meta = meta;
    s.model.columns = s.exact.columns = {"x", "t", "u"};
    s.error.columns = {"x", "t", "abs_error"};
    s.gradient.columns = {"x", "t", "u_x", "u_t"};
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double ue = oracle::exact_u(c, xs[k], ts[k]);
        s.model.rows.push_back({xs[k], ts[k], jets[k].u});
        s.exact.rows.push_back({xs[k], ts[k], ue});
        s.error.rows.push_back({xs[k], ts[k], std::abs(jets[k].u - ue)});
        s.gradient.rows.push_back({xs[k], ts[k], jets[k].u_x, jets[k].u_t});
    }

    s.sections.meta = {{"problem", to_string(p.oracle_id)}, {"nx", std::to_string(g.x.size())}};
    s.sections.columns = {"t", "x", "model", "exact"};
    for (double t : cross_section_times(p.oracle_id))
        for (double x : g.x) s.sections.rows.push_back({t, x, forward(model, x, t), oracle::exact_u(c, x, t)});
    return s;
}

/// Writes surface_model.csv, surface_exact.csv, error_surface.csv,
/// gradient_field.csv and cross_sections.csv into `dir`.
inline Surfaces emit_surfaces(const MlpModel& model, const ProblemSpec& p, const oracle::SeriesCoefficients& c,
                              double dx, double dt, const std::string& dir) {
    auto s = compute_surfaces(model, p, c, dx, dt);
    std::filesystem::create_directories(dir);
    write_text(dir + "/surface_model.csv", to_csv(s.model));
    write_text(dir + "/surface_exact.csv", to_csv(s.exact));
    write_text(dir + "/error_surface.csv", to_csv(s.error));
    write_text(dir + "/gradient_field.csv", to_csv(s.gradient));
    write_text(dir + "/cross_sections.csv", to_csv(s.sections));
    return s;
}

} // namespace symmpinn::report
