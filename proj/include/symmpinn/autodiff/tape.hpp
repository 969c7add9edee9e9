#pragma once

// Scalar reverse-mode tape. Every primitive appends one node holding its
// local partials; the backward sweep walks nodes in reverse insertion order.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "symmpinn/autodiff/primitives.hpp"
#include "symmpinn/error.hpp"

namespace symmpinn::ad {

enum class Op : std::uint8_t {
    leaf,
    add,
    sub,
    mul,
    div,
    neg,
    exp,
    log,
    tanh,
    erf,
    sin,
    cos,
    sigmoid,
    softplus,
    pow,
};

const char* op_name(Op op) noexcept;

class GradTape;

/// Handle to a tape node. A Var without a tape is a plain constant and
/// never records anything.
class Var {
public:
    Var() = default;
    Var(double constant) : value_(constant) {} // NOLINT: implicit lift of constants

    double value() const noexcept { return value_; }
    bool is_constant() const noexcept { return tape_ == nullptr; }
    GradTape* tape() const noexcept { return tape_; }
    std::uint32_t index() const noexcept { return index_; }

private:
    friend class GradTape;
    Var(GradTape* tape, std::uint32_t index, double value) : tape_(tape), index_(index), value_(value) {}

    GradTape* tape_ = nullptr;
    std::uint32_t index_ = 0;
    double value_ = 0.0;
};

class GradTape {
public:
    static constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

    struct Node {
        Op op;
        std::uint32_t lhs;
        std::uint32_t rhs;
        double d_lhs;
        double d_rhs;
    };

    GradTape() = default;
    GradTape(const GradTape&) = delete;
    GradTape& operator=(const GradTape&) = delete;

    Var variable(double value) { return push(Op::leaf, none, 0.0, none, 0.0, value); }

    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const Node> nodes() const noexcept { return nodes_; }
    double value(std::uint32_t index) const { return values_.at(index); }

    void clear() noexcept {
        nodes_.clear();
        values_.clear();
    }

    /// Adjoints of `output` with respect to each of `leaves`. Leaves that do
    /// not influence the output get 0. Constants passed as leaves get 0.
    std::vector<double> gradient(const Var& output, std::span<const Var> leaves) const {
        check_owned(output);
        for (const auto& leaf : leaves) check_owned(leaf);

        std::vector<double> out(leaves.size(), 0.0);
        if (output.is_constant()) return out;

        std::vector<double> adjoint(output.index() + 1, 0.0);
        adjoint[output.index()] = 1.0;
        for (std::size_t i = output.index() + 1; i-- > 0;) {
            const double a = adjoint[i];
            if (a == 0.0) continue;
            const Node& n = nodes_[i];
            if (n.lhs != none) adjoint[n.lhs] += a * n.d_lhs;
            if (n.rhs != none) adjoint[n.rhs] += a * n.d_rhs;
        }
        for (std::size_t k = 0; k < leaves.size(); ++k) {
            if (leaves[k].is_constant() || leaves[k].index() > output.index()) continue;
            out[k] = adjoint[leaves[k].index()];
        }
        return out;
    }

    // Recording helpers used by the Var operators.
    Var unary(Op op, const Var& a, double value, double d_a) {
        if (a.is_constant()) return Var(value);
        return push(op, a.index(), d_a, none, 0.0, value);
    }

    Var binary(Op op, const Var& a, const Var& b, double value, double d_a, double d_b) {
        const auto lhs = a.is_constant() ? none : a.index();
        const auto rhs = b.is_constant() ? none : b.index();
        return push(op, lhs, d_a, rhs, d_b, value);
    }

    std::ptrdiff_t next_index() const noexcept { return static_cast<std::ptrdiff_t>(nodes_.size()); }

private:
    void check_owned(const Var& v) const {
        if (!v.is_constant() && v.tape() != this) throw tape_mismatch();
    }

    Var push(Op op, std::uint32_t lhs, double d_lhs, std::uint32_t rhs, double d_rhs, double value) {
        const auto index = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(Node{op, lhs, rhs, d_lhs, d_rhs});
        values_.push_back(value);
        return Var(this, index, value);
    }

    std::vector<Node> nodes_;
    std::vector<double> values_;
};

inline const char* op_name(Op op) noexcept {
    switch (op) {
    case Op::leaf: return "leaf";
    case Op::add: return "add";
    case Op::sub: return "sub";
    case Op::mul: return "mul";
    case Op::div: return "div";
    case Op::neg: return "neg";
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::tanh: return "tanh";
    case Op::erf: return "erf";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::sigmoid: return "sigmoid";
    case Op::softplus: return "softplus";
    case Op::pow: return "pow";
    }
    return "?";
}

namespace detail {

inline GradTape* common_tape(const Var& a, const Var& b) {
    if (a.is_constant()) return b.tape();
    if (b.is_constant()) return a.tape();
    if (a.tape() != b.tape()) throw tape_mismatch();
    return a.tape();
}

inline std::ptrdiff_t pending_index(const Var& a) {
    return a.is_constant() ? -1 : a.tape()->next_index();
}

} // namespace detail

inline Var operator+(const Var& a, const Var& b) {
    GradTape* t = detail::common_tape(a, b);
    const double v = a.value() + b.value();
    return t ? t->binary(Op::add, a, b, v, 1.0, 1.0) : Var(v);
}

inline Var operator-(const Var& a, const Var& b) {
    GradTape* t = detail::common_tape(a, b);
    const double v = a.value() - b.value();
    return t ? t->binary(Op::sub, a, b, v, 1.0, -1.0) : Var(v);
}

inline Var operator*(const Var& a, const Var& b) {
    GradTape* t = detail::common_tape(a, b);
    const double v = a.value() * b.value();
    return t ? t->binary(Op::mul, a, b, v, b.value(), a.value()) : Var(v);
}

inline Var operator/(const Var& a, const Var& b) {
    GradTape* t = detail::common_tape(a, b);
    if (b.value() == 0.0) throw domain_error("div", t ? t->next_index() : -1);
    const double v = a.value() / b.value();
    return t ? t->binary(Op::div, a, b, v, 1.0 / b.value(), -v / b.value()) : Var(v);
}

inline Var operator-(const Var& a) {
    return a.is_constant() ? Var(-a.value()) : a.tape()->unary(Op::neg, a, -a.value(), -1.0);
}

inline Var& operator+=(Var& a, const Var& b) { return a = a + b; }
inline Var& operator-=(Var& a, const Var& b) { return a = a - b; }
inline Var& operator*=(Var& a, const Var& b) { return a = a * b; }
inline Var& operator/=(Var& a, const Var& b) { return a = a / b; }

namespace detail {
inline Var record(Op op, const Var& a, double value, double partial) {
    return a.is_constant() ? Var(value) : a.tape()->unary(op, a, value, partial);
}
} // namespace detail

inline Var exp(const Var& a) {
    const double e = std::exp(a.value());
    return detail::record(Op::exp, a, e, e);
}

inline Var log(const Var& a) {
    if (!(a.value() > 0.0)) throw domain_error("log", detail::pending_index(a));
    return detail::record(Op::log, a, std::log(a.value()), 1.0 / a.value());
}

inline Var tanh(const Var& a) {
    const double t = std::tanh(a.value());
    return detail::record(Op::tanh, a, t, 1.0 - t * t);
}

inline Var erf(const Var& a) {
    const double x = a.value();
    return detail::record(Op::erf, a, std::erf(x), 2.0 * std::numbers::inv_sqrtpi * std::exp(-x * x));
}

inline Var sin(const Var& a) { return detail::record(Op::sin, a, std::sin(a.value()), std::cos(a.value())); }
inline Var cos(const Var& a) { return detail::record(Op::cos, a, std::cos(a.value()), -std::sin(a.value())); }

inline Var sigmoid(const Var& a) {
    const double g = prim::sigmoid(a.value());
    return detail::record(Op::sigmoid, a, g, g * (1.0 - g));
}

inline Var softplus(const Var& a) {
    return detail::record(Op::softplus, a, prim::softplus(a.value()), prim::sigmoid(a.value()));
}

/// a^p for a constant exponent p.
inline Var pow(const Var& a, double p) {
    const double x = a.value();
    if (!prim::pow_in_domain(x, p, 1)) throw domain_error("pow", detail::pending_index(a));
    return detail::record(Op::pow, a, std::pow(x, p), p == 0.0 ? 0.0 : p * std::pow(x, p - 1.0));
}

} // namespace symmpinn::ad
