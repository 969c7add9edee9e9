#pragma once

// Batched evaluation of the network together with u_x, u_t, u_xx and the
// exact reverse pass of a squared-error or squared-residual loss through
// those derivatives. This is the training hot path; the scalar Dual2/tape
// route computes the same quantities one point at a time and is what the
// tests check this kernel against.
//
// Per hidden layer, with s = c (W h + b), c the slope multiplier:
//   h    = f(s)
//   h_x  = f'(s) s_x            h_t = f'(s) s_t
//   h_xx = f''(s) s_x^2 + f'(s) s_xx
// Four channels (value, x, t, xx) are stored side by side so each layer is
// one matrix product.
//
// Eigen chooses its vectorized summation order from pointer alignment, so
// weights are copied into and gradients accumulated through Eigen-owned
// (aligned) storage. Results then do not depend on where the caller's
// vectors happen to live.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "symmpinn/network/activation_batch.hpp"
#include "symmpinn/network/mlp.hpp"
#include "symmpinn/pde/problem.hpp"

namespace symmpinn::training {

class BatchKernel {
public:
    using Matrix = Eigen::MatrixXd;
    using Array = Eigen::ArrayXXd;
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    explicit BatchKernel(std::size_t chunk = 64) : chunk_(chunk) {}

    /// sum_i (u(x_i, t_i) - target_i)^2. When `grad` is non-empty,
    /// scale * d/dparams of that sum is added into it.
    double data_term(const MlpModel& m, std::span<const double> x, std::span<const double> t,
                     std::span<const double> target, double scale, std::span<double> grad) {
        double total = 0.0;
        for (std::size_t begin = 0; begin < x.size(); begin += chunk_) {
            const std::size_t n = std::min(chunk_, x.size() - begin);
            forward(m, x.subspan(begin, n), t.subspan(begin, n), 1);
            const auto& u = out_;
            Eigen::RowVectorXd g(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double e = u(0, static_cast<Eigen::Index>(i)) - target[begin + i];
                total += e * e;
                g(static_cast<Eigen::Index>(i)) = 2.0 * scale * e;
            }
            if (!grad.empty()) backward(m, g, 1, grad);
        }
        return total;
    }

    /// sum_i R(x_i, t_i)^2 with R = u_t + a u u_x - nu u_xx; gradient as for
    /// data_term.
    double residual_term(const MlpModel& m, const ProblemSpec& p, std::span<const double> x,
                         std::span<const double> t, double scale, std::span<double> grad) {
        double total = 0.0;
        for (std::size_t begin = 0; begin < x.size(); begin += chunk_) {
            const std::size_t n = std::min(chunk_, x.size() - begin);
            const auto b = static_cast<Eigen::Index>(n);
            forward(m, x.subspan(begin, n), t.subspan(begin, n), 4);
            Eigen::RowVectorXd g(4 * b);
            for (Eigen::Index i = 0; i < b; ++i) {
                const double u = out_(0, i), ux = out_(0, b + i), ut = out_(0, 2 * b + i), uxx = out_(0, 3 * b + i);
                const double r = burgers_residual(p, u, ux, ut, uxx);
                total += r * r;
                const double gr = 2.0 * scale * r;
                g(i) = gr * p.a * ux;
                g(b + i) = gr * p.a * u;
                g(2 * b + i) = gr;
                g(3 * b + i) = -gr * p.nu;
            }
            if (!grad.empty()) backward(m, g, 4, grad);
        }
        return total;
    }

    /// u, u_x, u_t, u_xx at each point (no gradient).
    std::vector<PointJet> jets(const MlpModel& m, std::span<const double> x, std::span<const double> t) {
        std::vector<PointJet> out;
        out.reserve(x.size());
        for (std::size_t begin = 0; begin < x.size(); begin += chunk_) {
            const std::size_t n = std::min(chunk_, x.size() - begin);
            const auto b = static_cast<Eigen::Index>(n);
            forward(m, x.subspan(begin, n), t.subspan(begin, n), 4);
            for (Eigen::Index i = 0; i < b; ++i)
                out.push_back({out_(0, i), out_(0, b + i), out_(0, 2 * b + i), out_(0, 3 * b + i)});
        }
        return out;
    }

private:
    struct LayerCache {
        RowMajor W;   // aligned copy of the layer weights
        Matrix pre;   // s = scale (W h + b), all channels; unscaled at the output layer
        Matrix post;  // activations, all channels
        Array d1, d2, d3; // f', f'', f''' at the value channel
    };

    void forward(const MlpModel& m, std::span<const double> x, std::span<const double> t, int channels) {
        const auto b = static_cast<Eigen::Index>(x.size());
        const std::size_t layers = m.layer_count();
        cache_.resize(layers);
        channels_ = channels;
        batch_ = b;

        input_.setZero(2, channels * b);
        for (Eigen::Index i = 0; i < b; ++i) {
            input_(0, i) = x[static_cast<std::size_t>(i)];
            input_(1, i) = t[static_cast<std::size_t>(i)];
        }
        if (channels == 4) {
            input_.block(0, b, 1, b).setOnes();     // dx/dx
            input_.block(1, 2 * b, 1, b).setOnes(); // dt/dt
        }

        const Matrix* h = &input_;
        for (std::size_t l = 0; l < layers; ++l) {
            const auto rows = static_cast<Eigen::Index>(m.fan_out(l));
            const auto cols = static_cast<Eigen::Index>(m.fan_in(l));
            auto& c = cache_[l];
            c.W = Eigen::Map<const RowMajor>(m.params.data() + m.weight_offset(l), rows, cols);
            Eigen::Map<const Eigen::VectorXd> bias(m.params.data() + m.bias_offset(l), rows);
            c.pre.noalias() = c.W * (*h);
            c.pre.leftCols(b).colwise() += bias;

            if (l + 1 == layers) {
                out_ = c.pre;
                break;
            }
            const double scale = m.slope_scale(l);
            if (scale != 1.0) c.pre *= scale; // pre now holds s = scale (W h + b)
            c.post.resize(rows, channels * b);
            c.d1.resize(rows, b);
            c.d2.resize(rows, b);
            c.d3.resize(rows, b);

            const Eigen::Index n = rows * b;
            const double* s = c.pre.data();
            double* post = c.post.data();
            double* d1 = c.d1.data();
            double* d2 = c.d2.data();
            double* d3 = c.d3.data();
            act_(m.activation, s, static_cast<std::size_t>(n), post, d1, d2, d3);
            if (channels == 4) {
                const double* sx = s + n;
                const double* st = s + 2 * n;
                const double* sxx = s + 3 * n;
                for (Eigen::Index k = 0; k < n; ++k) {
                    post[n + k] = d1[k] * sx[k];
                    post[2 * n + k] = d1[k] * st[k];
                    post[3 * n + k] = d2[k] * sx[k] * sx[k] + d1[k] * sxx[k];
                }
            }
            h = &c.post;
        }
    }

    // `g` holds the adjoint of the output row (all channels).
    void backward(const MlpModel& m, const Eigen::RowVectorXd& g, int channels, std::span<double> grad) {
        const auto b = batch_;
        const std::size_t layers = m.layer_count();
        adj_ = g; // adjoint of the current layer's output
        for (std::size_t l = layers; l-- > 0;) {
            const auto rows = static_cast<Eigen::Index>(m.fan_out(l));
            const auto cols = static_cast<Eigen::Index>(m.fan_in(l));
            const Matrix& h = l == 0 ? input_ : cache_[l - 1].post;
            auto& c = cache_[l];

            if (l + 1 < layers) {
                // adjoint of post-activation -> adjoint of s, then of W h + b
                const double scale = m.slope_scale(l);
                const Eigen::Index n = rows * b;
                sbar_.resize(rows, channels * b);
                const double* hb = adj_.data();
                const double* s = c.pre.data();
                const double* d1 = c.d1.data();
                const double* d2 = c.d2.data();
                const double* d3 = c.d3.data();
                double* out = sbar_.data();
                if (channels == 4) {
                    for (Eigen::Index k = 0; k < n; ++k) {
                        const double sx = s[n + k], st = s[2 * n + k], sxx = s[3 * n + k];
                        const double hx = hb[n + k], ht = hb[2 * n + k], hxx = hb[3 * n + k];
                        out[k] = hb[k] * d1[k] + d2[k] * (hx * sx + ht * st) + hxx * (d3[k] * sx * sx + d2[k] * sxx);
                        out[n + k] = hx * d1[k] + 2.0 * hxx * d2[k] * sx;
                        out[2 * n + k] = ht * d1[k];
                        out[3 * n + k] = hxx * d1[k];
                    }
                } else {
                    for (Eigen::Index k = 0; k < n; ++k) out[k] = hb[k] * d1[k];
                }
                if (m.adaptive) {
                    // ds/dalpha = n * (W h + b) = n * s / scale
                    double acc = 0.0;
                    const Eigen::Index total = n * channels;
                    for (Eigen::Index k = 0; k < total; ++k) acc += out[k] * s[k];
                    grad[m.slope_offset(l)] += m.slope_gain * acc / scale;
                }
                if (scale != 1.0) sbar_ *= scale;
                adj_.swap(sbar_);
            }

            Eigen::Map<RowMajor> gW(grad.data() + m.weight_offset(l), rows, cols);
            Eigen::Map<Eigen::VectorXd> gb(grad.data() + m.bias_offset(l), rows);
            gw_.noalias() = adj_ * h.transpose();
            gb_ = adj_.leftCols(b).rowwise().sum();
            gW += gw_;
            gb += gb_;
            if (l > 0) {
                sbar_.noalias() = c.W.transpose() * adj_;
                adj_.swap(sbar_);
            }
        }
    }

    std::size_t chunk_;
    int channels_ = 1;
    Eigen::Index batch_ = 0;
    Matrix input_;
    Matrix out_;
    Matrix adj_;
    Matrix sbar_;
    RowMajor gw_;
    Eigen::VectorXd gb_;
    std::vector<LayerCache> cache_;
    ActivationBatch act_;
};

} // namespace symmpinn::training
