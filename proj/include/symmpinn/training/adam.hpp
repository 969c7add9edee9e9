#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "symmpinn/error.hpp"
#include "symmpinn/training/config.hpp"

namespace symmpinn::training {

struct AdamState {
    std::vector<double> m, v;
    std::size_t step = 0;

    AdamState() = default;
    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

/// One bias-corrected Adam update of `params[begin, end)`; entries outside
/// the range are left alone (frozen slopes of a non-adaptive model).
inline void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads, double lr,
                      const AdamConfig& cfg = {}, std::size_t end = static_cast<std::size_t>(-1)) {
    if (state.m.size() != params.size() || state.v.size() != params.size() || grads.size() != params.size())
        throw error("adam_step: state, parameter and gradient sizes differ");
    end = std::min(end, params.size());
    for (std::size_t i = 0; i < end; ++i)
        if (!std::isfinite(grads[i])) throw training_diverged(state.step, "non-finite gradient");

    ++state.step;
    const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < end; ++i) {
        state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grads[i];
        state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
        const double mh = state.m[i] / c1;
        const double vh = state.v[i] / c2;
        params[i] -= lr * mh / (std::sqrt(vh) + cfg.eps);
    }
}

/// Slopes must stay strictly positive.
inline constexpr double min_slope = 1e-6;

} // namespace symmpinn::training
