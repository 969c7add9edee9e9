#pragma once

// The closed primitive set shared by the double, Dual2 and tape paths.

#include <cmath>

namespace symmpinn::ad::prim {

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// log(1 + e^z) without overflow for large z.
inline double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

/// True when x^p and its first `order` derivatives are finite reals.
inline bool pow_in_domain(double x, double p, int order) {
    if (x < 0.0 && p != std::trunc(p)) return false;
    if (x == 0.0) {
        // derivative k of x^p involves x^(p-k)
        const bool integral = p == std::trunc(p);
        for (int k = 0; k <= order; ++k) {
            const double e = p - k;
            if (integral && p >= 0.0 && p < k) break; // derivative is identically zero
            if (e < 0.0) return false;
        }
    }
    return true;
}

} // namespace symmpinn::ad::prim

namespace symmpinn::ad {

// Plain-double overloads so templated code can call the full primitive set
// through unqualified lookup.
inline double sigmoid(double z) { return prim::sigmoid(z); }
inline double softplus(double z) { return prim::softplus(z); }

} // namespace symmpinn::ad
