#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "symmpinn/autodiff/dual2.hpp"

namespace symmpinn {

enum class ActivationKind { tanh, gelu, mish, swish, softplus, tanh_exp };

inline constexpr std::array<ActivationKind, 6> all_activations{
    ActivationKind::tanh, ActivationKind::gelu,     ActivationKind::mish,
    ActivationKind::swish, ActivationKind::softplus, ActivationKind::tanh_exp};

inline std::string_view to_string(ActivationKind kind) {
    switch (kind) {
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::gelu: return "gelu";
    case ActivationKind::mish: return "mish";
    case ActivationKind::swish: return "swish";
    case ActivationKind::softplus: return "softplus";
    case ActivationKind::tanh_exp: return "tanhexp";
    }
    return "?";
}

inline std::optional<ActivationKind> parse_activation(std::string_view name) {
    std::string lower(name);
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "tanh_exp" || lower == "tanh(exp)") lower = "tanhexp";
    for (auto kind : all_activations)
        if (to_string(kind) == lower) return kind;
    return std::nullopt;
}

/// sigma(z) written over the primitive set; works for double, Dual2 and
/// tape variables alike.
template <class T>
T activate(ActivationKind kind, const T& z) {
    using ad::sigmoid;
    using ad::softplus;
    using std::erf;
    using std::exp;
    using std::tanh;
    switch (kind) {
    case ActivationKind::tanh: return tanh(z);
    case ActivationKind::gelu: return z * (0.5 * (erf(z * std::numbers::sqrt2 * 0.5) + 1.0));
    case ActivationKind::mish: return z * tanh(softplus(z));
    case ActivationKind::swish: return z * sigmoid(z);
    case ActivationKind::softplus: return softplus(z);
    case ActivationKind::tanh_exp: return z * tanh(exp(z));
    }
    return z;
}

inline double activation_eval(ActivationKind kind, double z) { return activate(kind, z); }

/// sigma and its first three derivatives at one point.
struct ActivationJet {
    double f0, f1, f2, f3;
};

namespace detail {

// tanh(h) and sech^2(h) from m = expm1(-2|h|): t = -m / (2 + m),
// s = 4 (1 + m) / (2 + m)^2. Unlike 1 - tanh^2 this keeps full relative
// precision of s for large |h|.
inline void tanh_sech2(double h, double m, double& t, double& s) {
    const double d = 2.0 + m;
    t = std::copysign(-m / d, h);
    s = 4.0 * (1.0 + m) / (d * d);
}

// Derivatives of tanh(h(z)) given h and its first three derivatives.
inline ActivationJet tanh_of(double h, double h1, double h2, double h3) {
    double t, s;
    tanh_sech2(h, std::expm1(-2.0 * std::abs(h)), t, s);
    const double g1 = s;
    const double g2 = -2.0 * t * s;
    const double g3 = s * (6.0 * t * t - 2.0);
    return {t, g1 * h1, g2 * h1 * h1 + g1 * h2, g3 * h1 * h1 * h1 + 3.0 * g2 * h1 * h2 + g1 * h3};
}

// Derivatives of z * g(z).
inline ActivationJet times_z(double z, const ActivationJet& g) {
    return {z * g.f0, g.f0 + z * g.f1, 2.0 * g.f1 + z * g.f2, 3.0 * g.f2 + z * g.f3};
}

inline ActivationJet sigmoid_jet(double z) {
    const double g = ad::prim::sigmoid(z);
    const double g1 = g * (1.0 - g);
    const double g2 = g1 * (1.0 - 2.0 * g);
    const double g3 = g2 * (1.0 - 2.0 * g) - 2.0 * g1 * g1;
    return {g, g1, g2, g3};
}

} // namespace detail

/// Closed-form sigma, sigma', sigma'', sigma''' used by the batched training
/// kernel.
inline ActivationJet activation_jet(ActivationKind kind, double z) {
    switch (kind) {
    case ActivationKind::tanh: return detail::tanh_of(z, 1.0, 0.0, 0.0);
    case ActivationKind::gelu: {
        const double phi = std::exp(-0.5 * z * z) * (0.5 * std::numbers::sqrt2 * std::numbers::inv_sqrtpi);
        const double cdf = 0.5 * (std::erf(z * std::numbers::sqrt2 * 0.5) + 1.0);
        return {z * cdf, cdf + z * phi, (2.0 - z * z) * phi, (z * z - 4.0) * z * phi};
    }
    case ActivationKind::mish: {
        const auto sg = detail::sigmoid_jet(z);
        return detail::times_z(z, detail::tanh_of(ad::prim::softplus(z), sg.f0, sg.f1, sg.f2));
    }
    case ActivationKind::swish: return detail::times_z(z, detail::sigmoid_jet(z));
    case ActivationKind::softplus: {
        const auto sg = detail::sigmoid_jet(z);
        return {ad::prim::softplus(z), sg.f0, sg.f1, sg.f2};
    }
    case ActivationKind::tanh_exp: {
        // tanh(e^z) is exactly 1 in double well before e^z overflows
        if (z > 30.0) return {z, 1.0, 0.0, 0.0};
        const double e = std::exp(z);
        return detail::times_z(z, detail::tanh_of(e, e, e, e));
    }
    }
    return {z, 1.0, 0.0, 0.0};
}

} // namespace symmpinn
