#pragma once

#include <algorithm>
#include <chrono>
#include <random>
#include <vector>

#include "symmpinn/report/csv.hpp"
#include "symmpinn/training/batch_kernel.hpp"

namespace symmpinn::report {

struct TimingRow {
    std::size_t count = 0;
    double seconds = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

struct TimingTable {
    std::vector<TimingRow> rows;
    LinearFit fit;

    /// Each time is at least (1 - jitter) times the previous one.
    bool monotone(double jitter = 0.1) const {
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].seconds < (1.0 - jitter) * rows[i - 1].seconds) return false;
        return true;
    }
};

inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    if (x.size() < 2) return {};
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
    }
    f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

inline std::vector<std::size_t> default_counts() {
    std::vector<std::size_t> c;
    for (std::size_t n = 1000; n <= 10000; n += 1000) c.push_back(n);
    return c;
}

/// Wall-clock time to predict u and the residual at `count` fresh uniform
/// points, for each count. Each entry is the median of `repeats` runs; the
/// repeats sweep all counts in turn so load drift hits every count alike.
inline TimingTable benchmark_inference(const MlpModel& model, const ProblemSpec& p,
                                       const std::vector<std::size_t>& counts = default_counts(),
                                       std::uint64_t seed = 0, int repeats = 5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(p.x_lo, p.x_hi), ut(0.0, p.t_end);
    training::BatchKernel kernel;
    std::vector<std::vector<double>> xs(counts.size()), ts(counts.size()), runs(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
        xs[c].resize(counts[c]);
        ts[c].resize(counts[c]);
        for (std::size_t i = 0; i < counts[c]; ++i) {
            xs[c][i] = ux(rng);
            ts[c][i] = ut(rng);
        }
    }
    volatile double sink = 0.0;
    for (int k = 0; k < std::max(1, repeats); ++k)
        for (std::size_t c = 0; c < counts.size(); ++c) {
            const std::size_t n = counts[c];
            std::vector<double> r(n);
            const auto start = std::chrono::steady_clock::now();
            const auto jets = kernel.jets(model, xs[c], ts[c]);
            for (std::size_t i = 0; i < n; ++i) r[i] = burgers_residual(p, jets[i].u, jets[i].u_x, jets[i].u_t, jets[i].u_xx);
            runs[c].push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
            sink = sink + r[n / 2];
        }
    TimingTable table;
    std::vector<double> fx, fy;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        auto& v = runs[c];
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        table.rows.push_back({counts[c], v[v.size() / 2]});
        fx.push_back(static_cast<double>(counts[c]));
        fy.push_back(v[v.size() / 2]);
    }
    table.fit = least_squares(fx, fy);
    return table;
}

inline CsvTable to_csv_table(const TimingTable& t) {
    CsvTable c;
    c.meta = {{"fit_slope", format_double(t.fit.slope)},
              {"fit_intercept", format_double(t.fit.intercept)},
              {"fit_r2", format_double(t.fit.r2)}};
    c.columns = {"count", "seconds"};
    for (const auto& r : t.rows) c.rows.push_back({static_cast<double>(r.count), r.seconds});
    return c;
}

} // namespace symmpinn::report
