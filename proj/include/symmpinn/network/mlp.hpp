#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "symmpinn/autodiff/dual2.hpp"
#include "symmpinn/error.hpp"
#include "symmpinn/network/activation.hpp"

namespace symmpinn {

/// Fully connected network (x, t) -> u. Hidden layers compute
/// sigma(s_l * (W_l z + b_l)) with s_l = n * alpha_l when adaptive and
/// s_l = 1 otherwise; the output layer is affine.
///
/// All parameters live in one flat vector: for every layer, W_l row-major
/// (N_l rows, N_{l-1} columns) followed by b_l; after the last layer, one
/// slope alpha_l per hidden layer.
struct MlpModel {
    std::vector<std::size_t> layer_sizes;
    ActivationKind activation = ActivationKind::tanh;
    bool adaptive = false;
    int slope_gain = 10;
    std::vector<double> params;

    std::size_t layer_count() const noexcept { return layer_sizes.empty() ? 0 : layer_sizes.size() - 1; }
    std::size_t hidden_count() const noexcept { return layer_count() == 0 ? 0 : layer_count() - 1; }
    std::size_t fan_in(std::size_t layer) const { return layer_sizes[layer]; }
    std::size_t fan_out(std::size_t layer) const { return layer_sizes[layer + 1]; }

    std::size_t weight_offset(std::size_t layer) const {
        std::size_t off = 0;
        for (std::size_t l = 0; l < layer; ++l) off += (layer_sizes[l] + 1) * layer_sizes[l + 1];
        return off;
    }
    std::size_t bias_offset(std::size_t layer) const {
        return weight_offset(layer) + layer_sizes[layer] * layer_sizes[layer + 1];
    }
    /// Weights and biases only.
    std::size_t weight_param_count() const { return weight_offset(layer_count()); }
    std::size_t slope_offset(std::size_t hidden_layer) const { return weight_param_count() + hidden_layer; }

    /// Multiplier applied to the pre-activation of a hidden layer.
    double slope_scale(std::size_t hidden_layer) const {
        return adaptive ? slope_gain * params[slope_offset(hidden_layer)] : 1.0;
    }
};

inline void validate_layer_sizes(std::span<const std::size_t> sizes) {
    if (sizes.size() < 2) throw config_error("layer_sizes", "need at least an input and an output layer");
    if (sizes.front() != 2) throw config_error("layer_sizes", "input width must be 2 (x, t)");
    if (sizes.back() != 1) throw config_error("layer_sizes", "output width must be 1");
    for (auto n : sizes)
        if (n == 0) throw config_error("layer_sizes", "layer widths must be positive");
}

/// [2, width x hidden, 1]
inline std::vector<std::size_t> make_layer_sizes(std::size_t hidden, std::size_t width) {
    std::vector<std::size_t> sizes{2};
    sizes.insert(sizes.end(), hidden, width);
    sizes.push_back(1);
    return sizes;
}

struct InitOptions {
    ActivationKind activation = ActivationKind::tanh;
    bool adaptive = false;
    int slope_gain = 10;
    double initial_slope = 0.1;
};

/// Glorot-normal weights (variance 2 / (fan_in + fan_out)), zero biases.
inline MlpModel init_glorot(std::span<const std::size_t> layer_sizes, std::uint64_t seed,
                            const InitOptions& opts = {}) {
    validate_layer_sizes(layer_sizes);
    if (opts.slope_gain < 1) throw config_error("slope_gain", "must be >= 1");
    MlpModel m;
    m.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
    m.activation = opts.activation;
    m.adaptive = opts.adaptive;
    m.slope_gain = opts.slope_gain;
    m.params.assign(m.weight_param_count() + m.hidden_count(), 0.0);

    std::mt19937_64 gen(seed);
    for (std::size_t l = 0; l < m.layer_count(); ++l) {
        const double stddev = std::sqrt(2.0 / static_cast<double>(m.fan_in(l) + m.fan_out(l)));
        std::normal_distribution<double> normal(0.0, stddev);
        const auto w0 = m.weight_offset(l);
        for (std::size_t k = 0; k < m.fan_in(l) * m.fan_out(l); ++k) m.params[w0 + k] = normal(gen);
    }
    const double slope = opts.adaptive ? opts.initial_slope : 1.0 / opts.slope_gain;
    for (std::size_t h = 0; h < m.hidden_count(); ++h) m.params[m.slope_offset(h)] = slope;
    return m;
}

namespace detail {

template <class T>
double primal_of(const T& v) {
    if constexpr (std::is_same_v<T, double>) return v;
    else if constexpr (std::is_same_v<T, ad::Var>) return v.value();
    else return primal_of(v.value);
}

} // namespace detail

/// Network output for any scalar type: double, Dual2<double>, Var or
/// Dual2<Var>. `params` must follow the model's flat layout; its element type
/// P is double or Var.
template <class T, class P>
T evaluate(const MlpModel& m, std::span<const P> params, const T& x, const T& t) {
    std::vector<T> h{x, t};
    std::vector<T> next;
    for (std::size_t l = 0; l < m.layer_count(); ++l) {
        const auto rows = m.fan_out(l);
        const auto cols = m.fan_in(l);
        const auto w0 = m.weight_offset(l);
        const auto b0 = m.bias_offset(l);
        const bool hidden = l + 1 < m.layer_count();
        P scale = P(1.0);
        if (hidden && m.adaptive) scale = P(static_cast<double>(m.slope_gain)) * params[m.slope_offset(l)];
        next.assign(rows, T{});
        for (std::size_t r = 0; r < rows; ++r) {
            T z = T(params[b0 + r]);
            for (std::size_t c = 0; c < cols; ++c) z = z + h[c] * params[w0 + r * cols + c];
            if (hidden) {
                if (m.adaptive) z = z * scale;
                z = activate(m.activation, z);
            }
            if (!std::isfinite(detail::primal_of(z))) throw numeric_error(l, "non-finite activation");
            next[r] = std::move(z);
        }
        h.swap(next);
    }
    return h.front();
}

inline double forward(const MlpModel& m, double x, double t) {
    return evaluate<double, double>(m, m.params, x, t);
}

inline ad::Dual2<double> forward_dual2(const MlpModel& m, double x, double t, ad::Axis direction) {
    return ad::forward_dual2(
        [&](const ad::Dual2<double>& xs, const ad::Dual2<double>& ts) {
            return evaluate<ad::Dual2<double>, double>(m, m.params, xs, ts);
        },
        x, t, direction);
}

/// u and the derivatives entering the Burgers residual at one point.
struct PointJet {
    double u, u_x, u_t, u_xx;
};

inline PointJet point_jet(const MlpModel& m, double x, double t) {
    const auto dx = forward_dual2(m, x, t, ad::Axis::x);
    const auto dt = forward_dual2(m, x, t, ad::Axis::t);
    return {dx.value, dx.d1, dt.d1, dx.d2};
}

} // namespace symmpinn
