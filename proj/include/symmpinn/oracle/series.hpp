#pragma once

// Exact Fourier-quotient (Cole-Hopf) solutions of the two benchmark problems:
//
//   u(x,t) = 2 pi nu sum_n c_n e^{-n^2 pi^2 nu t} n sin(n pi x)
//            / (c_0 + sum_n c_n e^{-n^2 pi^2 nu t} cos(n pi x))
//
// with c_0 = int_0^1 w(x) dx, c_n = 2 int_0^1 w(x) cos(n pi x) dx and
// w = exp(-(1/2nu) int_0^x u_0).

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "symmpinn/error.hpp"
#include "symmpinn/oracle/quadrature.hpp"
#include "symmpinn/pde/problem.hpp"

namespace symmpinn::oracle {

struct SeriesCoefficients {
    double k0 = 0.0;
    std::vector<double> kn; // kn[i] is the coefficient of mode n = i + 1
    double nu = 0.1;
    ProblemTag problem_tag = ProblemTag::p1;
    bool converged = true;
};

struct SeriesOptions {
    std::size_t n_max = 200;
    double tol = 1e-12;
    double t_min = 0.01;       // smallest time the coefficients must serve
    double term_cutoff = 1e-14;
};

/// Cole-Hopf weight exp(-(1/2nu) int_0^x u_0(s) ds) for each problem.
inline double heat_weight(ProblemTag tag, double nu, double x) {
    if (tag == ProblemTag::p1) return std::exp(-(x * x * (3.0 - 2.0 * x)) / (3.0 * nu));
    return std::exp(-(1.0 - std::cos(std::numbers::pi * x)) / (2.0 * std::numbers::pi * nu));
}

inline SeriesCoefficients series_coefficients(ProblemTag tag, double nu, const SeriesOptions& opts = {}) {
    if (opts.n_max < 1) throw config_error("n_max", "must be >= 1");
    if (!(nu > 0.0)) throw config_error("nu", "must be positive");
    SeriesCoefficients c;
    c.nu = nu;
    c.problem_tag = tag;
    const auto weight = [&](double x) { return heat_weight(tag, nu, x); };
    c.k0 = quad(weight, 0.0, 1.0, opts.tol);

    // Stop once three consecutive modes are negligible at t_min.
    int quiet = 0;
    c.converged = false;
    for (std::size_t n = 1; n <= opts.n_max; ++n) {
        const double w = static_cast<double>(n) * std::numbers::pi;
        QuadOptions q;
        q.min_panels = n / 4 + 1;
        const double kn = 2.0 * quad([&](double x) { return weight(x) * std::cos(w * x); }, 0.0, 1.0, opts.tol, q);
        c.kn.push_back(kn);
        const double decay = std::exp(-w * w * nu * opts.t_min);
        quiet = std::abs(kn) * decay < opts.tol ? quiet + 1 : 0;
        if (quiet == 3) {
            c.converged = true;
            break;
        }
    }
    return c;
}

inline SeriesCoefficients series_coefficients(ProblemTag tag, double nu, std::size_t n_max, double tol) {
    SeriesOptions o;
    o.n_max = n_max;
    o.tol = tol;
    return series_coefficients(tag, nu, o);
}

inline double initial_value(ProblemTag tag, double x) {
    if (tag == ProblemTag::p1) return 4.0 * x * (1.0 - x);
    return std::sin(std::numbers::pi * x);
}

/// Exact solution at (x, t). t = 0 returns the initial condition directly.
inline double exact_u(const SeriesCoefficients& c, double x, double t, double term_cutoff = 1e-14) {
    if (!(x >= 0.0 && x <= 1.0)) throw oracle_domain_error("exact_u: x outside [0, 1]");
    if (t < 0.0) throw oracle_domain_error("exact_u: negative time");
    if (t == 0.0) return initial_value(c.problem_tag, x);

    double num = 0.0;
    double den = c.k0;
    int quiet = 0;
    for (std::size_t i = 0; i < c.kn.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        const double w = n * std::numbers::pi;
        const double env = c.kn[i] * std::exp(-w * w * c.nu * t);
        // n * |env| bounds both the numerator and denominator terms
        quiet = std::abs(env) * n < term_cutoff ? quiet + 1 : 0;
        if (quiet == 2) break;
        num += env * n * std::sin(w * x);
        den += env * std::cos(w * x);
    }
    if (std::abs(den) < 1e-12) throw oracle_domain_error("exact_u: denominator underflow");
    return 2.0 * std::numbers::pi * c.nu * num / den;
}

/// Oracle for one problem instance with its coefficients computed once.
class SeriesSolution {
public:
    explicit SeriesSolution(ProblemTag tag, double nu = 0.1, const SeriesOptions& opts = {})
        : coeffs_(series_coefficients(tag, nu, opts)) {}
    explicit SeriesSolution(SeriesCoefficients coeffs) : coeffs_(std::move(coeffs)) {}

    double operator()(double x, double t) const { return exact_u(coeffs_, x, t); }
    const SeriesCoefficients& coefficients() const noexcept { return coeffs_; }

private:
    SeriesCoefficients coeffs_;
};

} // namespace symmpinn::oracle
