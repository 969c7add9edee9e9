#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "symmpinn/network/activation.hpp"
#include "symmpinn/network/vecmath.hpp"

namespace symmpinn {

/// activation_jet over an array: f0..f3 receive sigma and its first three
/// derivatives at each z[k]. The transcendental parts go through the vec::
/// kernels, the rest are plain loops the compiler can vectorize.
class ActivationBatch {
public:
    void operator()(ActivationKind kind, const double* z, std::size_t n, double* f0, double* f1, double* f2,
                    double* f3) {
        a_.resize(n);
        b_.resize(n);
        double* a = a_.data();
        double* b = b_.data();
        switch (kind) {
        case ActivationKind::tanh:
            tanh_into(z, n, a);
            for (std::size_t k = 0; k < n; ++k) tanh_chain(z[k], a[k], 1.0, 0.0, 0.0, f0[k], f1[k], f2[k], f3[k]);
            return;
        case ActivationKind::gelu: {
            constexpr double r2 = std::numbers::sqrt2 * 0.5;
            constexpr double c = 0.5 * std::numbers::sqrt2 * std::numbers::inv_sqrtpi;
            for (std::size_t k = 0; k < n; ++k) {
                a[k] = z[k] * r2;
                b[k] = -0.5 * z[k] * z[k];
            }
            vec::erf(a, a, n);
            vec::exp(b, b, n);
            for (std::size_t k = 0; k < n; ++k) {
                const double x = z[k];
                const double phi = b[k] * c;
                const double cdf = 0.5 * (a[k] + 1.0);
                f0[k] = x * cdf;
                f1[k] = cdf + x * phi;
                f2[k] = (2.0 - x * x) * phi;
                f3[k] = (x * x - 4.0) * x * phi;
            }
            return;
        }
        case ActivationKind::swish:
            sigmoid_into(z, n, a, b);
            for (std::size_t k = 0; k < n; ++k) {
                double g1, g2, g3;
                sigmoid_derivs(a[k], g1, g2, g3);
                times_z(z[k], a[k], g1, g2, g3, f0[k], f1[k], f2[k], f3[k]);
            }
            return;
        case ActivationKind::softplus:
            softplus_into(z, n, a, b);
            for (std::size_t k = 0; k < n; ++k) {
                double g1, g2, g3;
                sigmoid_derivs(a[k], g1, g2, g3);
                f0[k] = b[k];
                f1[k] = a[k];
                f2[k] = g1;
                f3[k] = g2;
            }
            return;
        case ActivationKind::mish:
            softplus_into(z, n, a, b);
            c_.resize(n);
            tanh_into(b, n, c_.data());
            for (std::size_t k = 0; k < n; ++k) {
                double g1, g2, g3, t0, t1, t2, t3;
                sigmoid_derivs(a[k], g1, g2, g3);
                tanh_chain(b[k], c_[k], a[k], g1, g2, t0, t1, t2, t3);
                times_z(z[k], t0, t1, t2, t3, f0[k], f1[k], f2[k], f3[k]);
            }
            return;
        case ActivationKind::tanh_exp:
            for (std::size_t k = 0; k < n; ++k) a[k] = std::min(z[k], 30.0);
            vec::exp(a, a, n);
            tanh_into(a, n, b);
            for (std::size_t k = 0; k < n; ++k) {
                if (z[k] > 30.0) {
                    f0[k] = z[k];
                    f1[k] = 1.0;
                    f2[k] = 0.0;
                    f3[k] = 0.0;
                    continue;
                }
                double t0, t1, t2, t3;
                tanh_chain(a[k], b[k], a[k], a[k], a[k], t0, t1, t2, t3);
                times_z(z[k], t0, t1, t2, t3, f0[k], f1[k], f2[k], f3[k]);
            }
            return;
        }
    }

private:
    // m <- expm1(-2|h|)
    static void tanh_into(const double* h, std::size_t n, double* m) {
        for (std::size_t k = 0; k < n; ++k) m[k] = -2.0 * std::abs(h[k]);
        vec::expm1(m, m, n);
    }

    // tanh(h(z)) from h, m = expm1(-2|h|) and h', h'', h'''.
    static void tanh_chain(double h, double m, double h1, double h2, double h3, double& f0, double& f1, double& f2,
                           double& f3) {
        double t, s;
        detail::tanh_sech2(h, m, t, s);
        const double g2 = -2.0 * t * s;
        const double g3 = s * (6.0 * t * t - 2.0);
        f0 = t;
        f1 = s * h1;
        f2 = g2 * h1 * h1 + s * h2;
        f3 = g3 * h1 * h1 * h1 + 3.0 * g2 * h1 * h2 + s * h3;
    }

    static void times_z(double z, double g0, double g1, double g2, double g3, double& f0, double& f1, double& f2,
                        double& f3) {
        f0 = z * g0;
        f1 = g0 + z * g1;
        f2 = 2.0 * g1 + z * g2;
        f3 = 3.0 * g2 + z * g3;
    }

    static void sigmoid_derivs(double g, double& g1, double& g2, double& g3) {
        g1 = g * (1.0 - g);
        g2 = g1 * (1.0 - 2.0 * g);
        g3 = g2 * (1.0 - 2.0 * g) - 2.0 * g1 * g1;
    }

    // sig <- sigmoid(z); scratch holds exp(-|z|) afterwards.
    static void sigmoid_into(const double* z, std::size_t n, double* sig, double* scratch) {
        for (std::size_t k = 0; k < n; ++k) scratch[k] = -std::abs(z[k]);
        vec::exp(scratch, scratch, n);
        for (std::size_t k = 0; k < n; ++k) {
            const double e = scratch[k];
            sig[k] = z[k] >= 0.0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
        }
    }

    // sig <- sigmoid(z), sp <- softplus(z) = max(z, 0) + log1p(exp(-|z|)).
    static void softplus_into(const double* z, std::size_t n, double* sig, double* sp) {
        sigmoid_into(z, n, sig, sp);
        vec::log1p(sp, sp, n);
        for (std::size_t k = 0; k < n; ++k) sp[k] += std::max(z[k], 0.0);
    }

    std::vector<double> a_, b_, c_;
};

} // namespace symmpinn
