#pragma once

// Second-order forward mode. A Dual2 carries a value together with its first
// and second derivatives along one seeded input direction, propagated with
// truncated Taylor arithmetic. The component type T may itself be a tape
// Var, which gives reverse-mode gradients of directional derivatives.

#include <cmath>
#include <numbers>
#include <type_traits>

#include "symmpinn/autodiff/primitives.hpp"
#include "symmpinn/autodiff/tape.hpp"
#include "symmpinn/error.hpp"

namespace symmpinn::ad {

template <class T = double>
struct Dual2 {
    T value{};
    T d1{};
    T d2{};

    Dual2() = default;
    Dual2(double c) : value(c), d1(0.0), d2(0.0) {} // NOLINT: constants lift implicitly
    Dual2(T v, T first, T second) : value(std::move(v)), d1(std::move(first)), d2(std::move(second)) {}

    template <class U = T, std::enable_if_t<!std::is_same_v<U, double>, int> = 0>
    Dual2(const T& v) : value(v), d1(0.0), d2(0.0) {} // NOLINT

    static Dual2 variable(T v) { return Dual2(std::move(v), T(1.0), T(0.0)); }
    static Dual2 constant(T v) { return Dual2(std::move(v), T(0.0), T(0.0)); }
};

namespace detail {

template <class T>
double primal(const T& v) {
    if constexpr (std::is_same_v<T, double>) return v;
    else return v.value();
}

template <class T>
std::ptrdiff_t node_hint(const T& v) {
    if constexpr (std::is_same_v<T, Var>) return v.is_constant() ? -1 : v.tape()->next_index();
    else return -1;
}

// Chain rule for a scalar function with derivatives f1 = f', f2 = f''.
template <class T>
Dual2<T> chain(const Dual2<T>& a, T f0, const T& f1, const T& f2) {
    return Dual2<T>(std::move(f0), f1 * a.d1, f2 * a.d1 * a.d1 + f1 * a.d2);
}

} // namespace detail

template <class T>
Dual2<T> operator+(const Dual2<T>& a, const Dual2<T>& b) {
    return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}

template <class T>
Dual2<T> operator-(const Dual2<T>& a, const Dual2<T>& b) {
    return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}

template <class T>
Dual2<T> operator-(const Dual2<T>& a) {
    return {-a.value, -a.d1, -a.d2};
}

template <class T>
Dual2<T> operator*(const Dual2<T>& a, const Dual2<T>& b) {
    return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
            a.d2 * b.value + T(2.0) * a.d1 * b.d1 + a.value * b.d2};
}

template <class T>
Dual2<T> operator/(const Dual2<T>& a, const Dual2<T>& b) {
    if (detail::primal(b.value) == 0.0) throw domain_error("div", detail::node_hint(b.value));
    const T q = a.value / b.value;
    const T q1 = (a.d1 - q * b.d1) / b.value;
    const T q2 = (a.d2 - T(2.0) * q1 * b.d1 - q * b.d2) / b.value;
    return {q, q1, q2};
}

// Mixed forms with a scalar of the component type (or a plain double).
template <class T>
Dual2<T> operator*(const Dual2<T>& a, const T& s) {
    return {a.value * s, a.d1 * s, a.d2 * s};
}
template <class T>
Dual2<T> operator*(const T& s, const Dual2<T>& a) {
    return a * s;
}
template <class T>
Dual2<T> operator+(const Dual2<T>& a, const T& s) {
    return {a.value + s, a.d1, a.d2};
}
template <class T>
Dual2<T> operator+(const T& s, const Dual2<T>& a) {
    return a + s;
}
template <class T>
Dual2<T> operator-(const Dual2<T>& a, const T& s) {
    return {a.value - s, a.d1, a.d2};
}
template <class T>
Dual2<T> operator-(const T& s, const Dual2<T>& a) {
    return {s - a.value, -a.d1, -a.d2};
}
template <class T>
Dual2<T> operator/(const Dual2<T>& a, const T& s) {
    if (detail::primal(s) == 0.0) throw domain_error("div", detail::node_hint(s));
    return {a.value / s, a.d1 / s, a.d2 / s};
}
template <class T>
Dual2<T> operator/(const T& s, const Dual2<T>& a) {
    return Dual2<T>(s, T(0.0), T(0.0)) / a;
}
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Dual2<T> operator/(const Dual2<T>& a, double s) {
    return a / T(s);
}
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Dual2<T> operator/(double s, const Dual2<T>& a) {
    return T(s) / a;
}

template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Dual2<T> operator*(const Dual2<T>& a, double s) {
    return a * T(s);
}
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Dual2<T> operator*(double s, const Dual2<T>& a) {
    return a * T(s);
}
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Dual2<T> operator+(const Dual2<T>& a, double s) {
    return a + T(s);
}
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Dual2<T> operator+(double s, const Dual2<T>& a) {
    return a + T(s);
}
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Dual2<T> operator-(const Dual2<T>& a, double s) {
    return a - T(s);
}
template <class T, std::enable_if_t<!std::is_same_v<T, double>, int> = 0>
Dual2<T> operator-(double s, const Dual2<T>& a) {
    return T(s) - a;
}

template <class T>
Dual2<T>& operator+=(Dual2<T>& a, const Dual2<T>& b) {
    return a = a + b;
}
template <class T>
Dual2<T>& operator*=(Dual2<T>& a, const Dual2<T>& b) {
    return a = a * b;
}

template <class T>
Dual2<T> exp(const Dual2<T>& a) {
    using std::exp;
    const T e = exp(a.value);
    return detail::chain(a, e, e, e);
}

template <class T>
Dual2<T> log(const Dual2<T>& a) {
    using std::log;
    if (!(detail::primal(a.value) > 0.0)) throw domain_error("log", detail::node_hint(a.value));
    const T inv = T(1.0) / a.value;
    return detail::chain(a, log(a.value), inv, -(inv * inv));
}

template <class T>
Dual2<T> tanh(const Dual2<T>& a) {
    using std::tanh;
    const T t = tanh(a.value);
    const T f1 = T(1.0) - t * t;
    return detail::chain(a, t, f1, T(-2.0) * t * f1);
}

template <class T>
Dual2<T> erf(const Dual2<T>& a) {
    using std::erf;
    using std::exp;
    const T f1 = T(2.0 * std::numbers::inv_sqrtpi) * exp(-(a.value * a.value));
    return detail::chain(a, erf(a.value), f1, T(-2.0) * a.value * f1);
}

template <class T>
Dual2<T> sin(const Dual2<T>& a) {
    using std::cos;
    using std::sin;
    const T s = sin(a.value);
    return detail::chain(a, s, cos(a.value), -s);
}

template <class T>
Dual2<T> cos(const Dual2<T>& a) {
    using std::cos;
    using std::sin;
    const T c = cos(a.value);
    return detail::chain(a, c, -sin(a.value), -c);
}

template <class T>
Dual2<T> sigmoid(const Dual2<T>& a) {
    const T g = sigmoid(a.value);
    const T f1 = g * (T(1.0) - g);
    return detail::chain(a, g, f1, f1 * (T(1.0) - T(2.0) * g));
}

template <class T>
Dual2<T> softplus(const Dual2<T>& a) {
    const T g = sigmoid(a.value);
    return detail::chain(a, softplus(a.value), g, g * (T(1.0) - g));
}

template <class T>
Dual2<T> pow(const Dual2<T>& a, double p) {
    using std::pow;
    if (!prim::pow_in_domain(detail::primal(a.value), p, 2)) throw domain_error("pow", detail::node_hint(a.value));
    const T f1 = p == 0.0 ? T(0.0) : T(p) * pow(a.value, p - 1.0);
    const T f2 = p * (p - 1.0) == 0.0 ? T(0.0) : T(p * (p - 1.0)) * pow(a.value, p - 2.0);
    return detail::chain(a, pow(a.value, p), f1, f2);
}

enum class Axis { x, t };

/// Value, first and second derivative of f(x, t) along one input axis.
template <class F>
Dual2<double> forward_dual2(F&& f, double x, double t, Axis direction) {
    const auto xs = direction == Axis::x ? Dual2<double>::variable(x) : Dual2<double>::constant(x);
    const auto ts = direction == Axis::t ? Dual2<double>::variable(t) : Dual2<double>::constant(t);
    return f(xs, ts);
}

/// Gradient of a recorded scalar with respect to the given leaves.
inline std::vector<double> grad_wrt_params(const Var& loss, std::span<const Var> params) {
    for (const auto& p : params)
        if (!p.is_constant() && !loss.is_constant() && p.tape() != loss.tape()) throw tape_mismatch();
    if (loss.is_constant()) {
        for (const auto& p : params)
            if (!p.is_constant()) return p.tape()->gradient(loss, params);
        return std::vector<double>(params.size(), 0.0);
    }
    return loss.tape()->gradient(loss, params);
}

} // namespace symmpinn::ad
