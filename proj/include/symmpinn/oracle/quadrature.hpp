#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "symmpinn/error.hpp"

namespace symmpinn::oracle {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; roots of P_n by Newton iteration from the
/// Chebyshev-like initial guess.
inline GaussLegendreRule gauss_legendre(std::size_t n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                const auto jd = static_cast<double>(j);
                p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

struct QuadOptions {
    std::size_t order = 32;      // nodes per panel
    std::size_t min_panels = 1;  // panels at the coarsest level
    int max_levels = 20;         // bisection levels before giving up
};

/// Composite Gauss-Legendre sum over `panels` equal panels.
template <class F>
double gauss_legendre_composite(const F& f, double lo, double hi, std::size_t panels, const GaussLegendreRule& rule) {
    const double width = (hi - lo) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = lo + width * static_cast<double>(p);
        const double mid = a + 0.5 * width;
        double s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * f(mid + 0.5 * width * rule.nodes[k]);
        total += 0.5 * width * s;
    }
    return total;
}

/// Integral of f over [lo, hi]. Panels are bisected until two successive
/// levels agree within `tol`.
template <class F>
double quad(const F& f, double lo, double hi, double tol, const QuadOptions& opts = {}) {
    if (!(lo < hi)) throw error("quad: lo must be below hi");
    const auto rule = gauss_legendre(opts.order);
    std::size_t panels = opts.min_panels == 0 ? 1 : opts.min_panels;
    double prev = gauss_legendre_composite(f, lo, hi, panels, rule);
    double diff = 0.0;
    for (int level = 1; level <= opts.max_levels; ++level) {
        panels *= 2;
        const double cur = gauss_legendre_composite(f, lo, hi, panels, rule);
        diff = std::abs(cur - prev);
        if (diff <= tol) return cur;
        prev = cur;
    }
    throw quadrature_error(prev, diff);
}

} // namespace symmpinn::oracle
