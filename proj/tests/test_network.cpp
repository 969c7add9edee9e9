#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "symmpinn/network/activation_batch.hpp"
#include "symmpinn/network/checkpoint.hpp"
#include "symmpinn/network/mlp.hpp"

using namespace symmpinn;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Reference values straight from the definitions.
double reference_activation(ActivationKind k, double z) {
    const double sp = z > 30 ? z : std::log(1 + std::exp(z));
    switch (k) {
    case ActivationKind::tanh: return std::tanh(z);
    case ActivationKind::gelu: return z * 0.5 * std::erfc(-z / std::sqrt(2.0));
    case ActivationKind::mish: return z * std::tanh(sp);
    case ActivationKind::swish: return z / (1 + std::exp(-z));
    case ActivationKind::softplus: return sp;
    case ActivationKind::tanh_exp: return z * std::tanh(std::exp(z));
    }
    return 0;
}

MlpModel single_neuron(bool adaptive, double slope) {
    MlpModel m;
    m.layer_sizes = {2, 1, 1};
    m.activation = ActivationKind::tanh;
    m.adaptive = adaptive;
    m.slope_gain = 10;
    // W1 = [1, 0], b1 = 0, W2 = 1, b2 = 0, alpha
    m.params = {1.0, 0.0, 0.0, 1.0, 0.0, slope};
    return m;
}

} // namespace

TEST(Activation, NamedValues) {
    EXPECT_EQ(activation_eval(ActivationKind::gelu, 0.0), 0.0);
    EXPECT_EQ(activation_eval(ActivationKind::swish, 0.0), 0.0);
    EXPECT_EQ(activation_eval(ActivationKind::mish, 0.0), 0.0);
    // 1 * Phi(1) from the normal table
    EXPECT_NEAR(activation_eval(ActivationKind::gelu, 1.0), 0.841345, 5e-7);
    EXPECT_NEAR(activation_eval(ActivationKind::softplus, 0.0), std::log(2.0), 1e-16);
}

TEST(Activation, MatchesDefinitions) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-8, 8);
    for (auto k : all_activations)
        for (int i = 0; i < 200; ++i) {
            const double z = d(rng);
            EXPECT_NEAR(activation_eval(k, z), reference_activation(k, z), 1e-14 * std::max(1.0, std::abs(z)))
                << to_string(k) << " z=" << z;
        }
}

TEST(Activation, SoftplusDoesNotOverflow) {
    EXPECT_DOUBLE_EQ(activation_eval(ActivationKind::softplus, 800.0), 800.0);
    EXPECT_GT(activation_eval(ActivationKind::softplus, -800.0), -1e-300);
    EXPECT_TRUE(std::isfinite(activation_eval(ActivationKind::mish, 800.0)));
    EXPECT_TRUE(std::isfinite(activation_eval(ActivationKind::tanh_exp, 800.0)));
}

TEST(Activation, ParseNames) {
    for (auto k : all_activations) EXPECT_EQ(parse_activation(to_string(k)), k);
    EXPECT_EQ(parse_activation("GELU"), ActivationKind::gelu);
    EXPECT_EQ(parse_activation("tanh_exp"), ActivationKind::tanh_exp);
    EXPECT_FALSE(parse_activation("relu").has_value());
}

// Dual2 derivatives against central differences at 100 points in [-5, 5].
TEST(Activation, DerivativesMatchFiniteDifferences) {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> d(-5, 5);
    for (auto k : all_activations)
        for (int i = 0; i < 100; ++i) {
            const double z = d(rng);
            const auto r = activate(k, ad::Dual2<double>::variable(z));
            const auto f = [&](double v) { return activation_eval(k, v); };
            const double h1 = 1e-5, h2 = 1e-4;
            const double fd1 = (f(z + h1) - f(z - h1)) / (2 * h1);
            const double fd2 = (f(z + h2) - 2 * f(z) + f(z - h2)) / (h2 * h2);
            EXPECT_LT(rel_err(r.d1, fd1), 1e-5) << to_string(k) << " z=" << z;
            EXPECT_LT(rel_err(r.d2, fd2), 1e-4) << to_string(k) << " z=" << z;
        }
}

// The closed-form jet used by the batched kernel agrees with Dual2 on f, f',
// f'', and f''' agrees with a difference of Dual2 second derivatives.
TEST(ActivationJet, AgreesWithDual2) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-6, 6);
    for (auto k : all_activations)
        for (int i = 0; i < 200; ++i) {
            const double z = d(rng);
            const auto jet = activation_jet(k, z);
            const auto r = activate(k, ad::Dual2<double>::variable(z));
            EXPECT_NEAR(jet.f0, r.value, 1e-14 * std::max(1.0, std::abs(r.value))) << to_string(k);
            EXPECT_NEAR(jet.f1, r.d1, 1e-13) << to_string(k);
            EXPECT_NEAR(jet.f2, r.d2, 1e-12) << to_string(k);
            const double h = 1e-5;
            const double fd3 = (activate(k, ad::Dual2<double>::variable(z + h)).d2 -
                                activate(k, ad::Dual2<double>::variable(z - h)).d2) /
                               (2 * h);
            EXPECT_LT(rel_err(jet.f3, fd3), 1e-6) << to_string(k) << " z=" << z;
        }
}

TEST(ActivationBatch, AgreesWithScalarJet) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> d(-40, 40);
    std::vector<double> z(203);
    for (auto& v : z) v = d(rng);
    z[0] = 0.0;
    z[1] = 30.5;
    ActivationBatch batch;
    std::vector<double> f0(z.size()), f1(z.size()), f2(z.size()), f3(z.size());
    for (auto k : all_activations) {
        batch(k, z.data(), z.size(), f0.data(), f1.data(), f2.data(), f3.data());
        for (std::size_t i = 0; i < z.size(); ++i) {
            const auto j = activation_jet(k, z[i]);
            // f_k = k g_(k-1) + z g_k for the z * g(z) family, so rounding scales with |z|.
            const double sz = std::max(1.0, std::abs(z[i]));
            EXPECT_NEAR(f0[i], j.f0, 1e-14 * std::max(1.0, std::abs(j.f0))) << to_string(k) << " z=" << z[i];
            EXPECT_NEAR(f1[i], j.f1, 1e-14 * sz) << to_string(k) << " z=" << z[i];
            EXPECT_NEAR(f2[i], j.f2, 1e-14 * sz) << to_string(k) << " z=" << z[i];
            EXPECT_NEAR(f3[i], j.f3, 1e-13 * sz) << to_string(k) << " z=" << z[i];
        }
    }
}

TEST(Init, ParameterCountFollowsShapes) {
    for (std::size_t hidden : {1u, 2u, 7u, 8u}) {
        const auto sizes = make_layer_sizes(hidden, 40);
        std::size_t expected = 0;
        for (std::size_t l = 0; l + 1 < sizes.size(); ++l) expected += sizes[l] * sizes[l + 1] + sizes[l + 1];
        const auto m = init_glorot(sizes, 0);
        EXPECT_EQ(m.weight_param_count(), expected);
        EXPECT_EQ(m.params.size(), expected + hidden);
    }
    // [2, 40 x 8, 1]: 2*40+40 + 7*(40*40+40) + 40+1
    EXPECT_EQ(init_glorot(make_layer_sizes(8, 40), 0).weight_param_count(), 11641u);
    // [2, 40 x 7, 1]: 2*40+40 + 6*(40*40+40) + 40+1
    EXPECT_EQ(init_glorot(make_layer_sizes(7, 40), 0).weight_param_count(), 10001u);
}

TEST(Init, SameSeedSameParameters) {
    const auto sizes = make_layer_sizes(8, 40);
    EXPECT_EQ(init_glorot(sizes, 0).params, init_glorot(sizes, 0).params);
    EXPECT_NE(init_glorot(sizes, 0).params, init_glorot(sizes, 1).params);
}

TEST(Init, FirstLayerVariance) {
    const auto m = init_glorot(make_layer_sizes(8, 40), 0);
    const std::size_t n = m.fan_in(0) * m.fan_out(0);
    const auto* w = m.params.data() + m.weight_offset(0);
    const double mean = std::accumulate(w, w + n, 0.0) / n;
    double var = 0;
    for (std::size_t i = 0; i < n; ++i) var += (w[i] - mean) * (w[i] - mean);
    var /= n - 1;
    EXPECT_NEAR(var, 2.0 / 42.0, 0.2 * 2.0 / 42.0);
}

TEST(Init, BiasesZeroAndSlopes) {
    InitOptions opts;
    opts.adaptive = true;
    const auto a = init_glorot(make_layer_sizes(3, 5), 0, opts);
    for (std::size_t l = 0; l < a.layer_count(); ++l)
        for (std::size_t r = 0; r < a.fan_out(l); ++r) EXPECT_EQ(a.params[a.bias_offset(l) + r], 0.0);
    for (std::size_t h = 0; h < a.hidden_count(); ++h) {
        EXPECT_EQ(a.params[a.slope_offset(h)], 0.1);
        EXPECT_DOUBLE_EQ(a.slope_scale(h), 1.0);
    }
    opts.adaptive = false;
    const auto p = init_glorot(make_layer_sizes(3, 5), 0, opts);
    for (std::size_t h = 0; h < p.hidden_count(); ++h) EXPECT_EQ(p.params[p.slope_offset(h)] * p.slope_gain, 1.0);
}

TEST(Init, RejectsBadShapes) {
    EXPECT_THROW(init_glorot(std::vector<std::size_t>{}, 0), config_error);
    EXPECT_THROW(init_glorot(std::vector<std::size_t>{3, 4, 1}, 0), config_error);
    EXPECT_THROW(init_glorot(std::vector<std::size_t>{2, 4, 2}, 0), config_error);
    EXPECT_THROW(init_glorot(std::vector<std::size_t>{2, 0, 1}, 0), config_error);
}

TEST(Forward, ZeroNetworkIsZero) {
    auto m = init_glorot(make_layer_sizes(3, 6), 0);
    std::fill(m.params.begin(), m.params.end(), 0.0);
    EXPECT_EQ(forward(m, 0.3, 1.2), 0.0);
    EXPECT_EQ(forward(m, -5.0, 9.0), 0.0);
}

TEST(Forward, SingleNeuron) {
    EXPECT_NEAR(forward(single_neuron(false, 0.1), 0.5, 2.0), 0.462117, 5e-7);
    EXPECT_NEAR(forward(single_neuron(true, 0.1), 0.5, 2.0), 0.462117, 5e-7);
    // n alpha = 2
    EXPECT_NEAR(forward(single_neuron(true, 0.2), 0.5, -1.0), 0.761594, 5e-7);
}

// With adaptive off the network is the plain sigma(W z + b) stack, bit for bit.
TEST(Forward, PlainEquivalenceIsBitwise) {
    for (auto k : all_activations) {
        InitOptions opts;
        opts.activation = k;
        const auto m = init_glorot(make_layer_sizes(4, 7), 11, opts);
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> d(-1, 3);
        for (int i = 0; i < 20; ++i) {
            const double x = d(rng), t = d(rng);
            std::vector<double> h{x, t};
            for (std::size_t l = 0; l < m.layer_count(); ++l) {
                std::vector<double> next(m.fan_out(l));
                for (std::size_t r = 0; r < next.size(); ++r) {
                    double z = m.params[m.bias_offset(l) + r];
                    for (std::size_t c = 0; c < h.size(); ++c) z = z + h[c] * m.params[m.weight_offset(l) + r * h.size() + c];
                    next[r] = l + 1 < m.layer_count() ? activation_eval(k, z) : z;
                }
                h = next;
            }
            EXPECT_EQ(forward(m, x, t), h[0]) << to_string(k);
        }
    }
}

TEST(Forward, OverflowReportsLayer) {
    InitOptions opts;
    opts.activation = ActivationKind::softplus;
    auto m = init_glorot(make_layer_sizes(3, 4), 0, opts);
    for (std::size_t k = 0; k < m.fan_in(1) * m.fan_out(1); ++k) m.params[m.weight_offset(1) + k] = 1e308;
    std::fill(m.params.begin() + m.weight_offset(0), m.params.begin() + m.bias_offset(0), 1.0);
    try {
        (void)forward(m, 1.0, 1.0);
        FAIL();
    } catch (const numeric_error& e) {
        EXPECT_EQ(e.layer(), 1u);
    }
}

// Network derivatives from Dual2 against finite differences at 50 points.
TEST(Forward, InputDerivativesMatchFiniteDifferences) {
    InitOptions opts;
    opts.activation = ActivationKind::gelu;
    const auto m = init_glorot(make_layer_sizes(8, 40), 0, opts);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(0, 1), ut(0, 3);
    for (int i = 0; i < 50; ++i) {
        const double x = ux(rng), t = ut(rng);
        const auto j = point_jet(m, x, t);
        const double h = 1e-4;
        const double fx = (forward(m, x + h, t) - forward(m, x - h, t)) / (2 * h);
        const double ft = (forward(m, x, t + h) - forward(m, x, t - h)) / (2 * h);
        const double fxx = (forward(m, x + h, t) - 2 * forward(m, x, t) + forward(m, x - h, t)) / (h * h);
        EXPECT_LT(rel_err(j.u_x, fx), 1e-5);
        EXPECT_LT(rel_err(j.u_t, ft), 1e-5);
        EXPECT_LT(rel_err(j.u_xx, fxx), 1e-4);
    }
}

TEST(Checkpoint, RoundTripIsExact) {
    InitOptions opts;
    opts.activation = ActivationKind::mish;
    opts.adaptive = true;
    auto m = init_glorot(make_layer_sizes(3, 9), 42, opts);
    m.params[m.slope_offset(1)] = 0.123456789012345678;
    const auto back = model_from_checkpoint(nlohmann::json::parse(checkpoint_string(m)));
    EXPECT_EQ(back.layer_sizes, m.layer_sizes);
    EXPECT_EQ(back.activation, m.activation);
    EXPECT_EQ(back.adaptive, m.adaptive);
    EXPECT_EQ(back.slope_gain, m.slope_gain);
    EXPECT_EQ(back.params, m.params);
    EXPECT_EQ(checkpoint_string(back), checkpoint_string(m));
}

TEST(Checkpoint, RejectsWrongVersionAndLength) {
    const auto m = init_glorot(make_layer_sizes(2, 3), 0);
    auto j = checkpoint_json(m);
    j["version"] = 2;
    EXPECT_THROW(model_from_checkpoint(j), config_error);
    j = checkpoint_json(m);
    j["params"].erase(0);
    EXPECT_THROW(model_from_checkpoint(j), config_error);
}
