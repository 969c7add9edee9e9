#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "symmpinn/error.hpp"
#include "symmpinn/network/mlp.hpp"

namespace symmpinn {

enum class ProblemTag { p1, p2 };

inline std::string to_string(ProblemTag tag) { return tag == ProblemTag::p1 ? "1" : "2"; }

/// Viscous Burgers problem u_t + a u u_x = nu u_xx on [x_lo, x_hi] x [0, T]
/// with homogeneous Dirichlet walls.
struct ProblemSpec {
    double nu = 0.1;
    double a = 1.0;
    double x_lo = 0.0;
    double x_hi = 1.0;
    double t_end = 3.0;
    std::function<double(double)> initial_fn;
    ProblemTag oracle_id = ProblemTag::p1;

    double boundary_value(double /*x*/, double /*t*/) const { return 0.0; }

    void validate() const {
        if (!(x_lo < x_hi)) throw config_error("problem.x_range", "x_lo must be below x_hi");
        if (!(t_end > 0.0)) throw config_error("problem.t_range", "T must be positive");
        if (!(nu > 0.0)) throw config_error("problem.nu", "viscosity must be positive");
        if (!initial_fn) throw config_error("problem.initial_fn", "missing");
    }
};

/// u(x,0) = 4x(1-x)
inline ProblemSpec make_problem1() {
    ProblemSpec p;
    p.initial_fn = [](double x) { return 4.0 * x * (1.0 - x); };
    p.oracle_id = ProblemTag::p1;
    return p;
}

/// u(x,0) = sin(pi x)
inline ProblemSpec make_problem2() {
    ProblemSpec p;
    p.initial_fn = [](double x) { return std::sin(std::numbers::pi * x); };
    p.oracle_id = ProblemTag::p2;
    return p;
}

inline ProblemSpec make_problem(ProblemTag tag) { return tag == ProblemTag::p1 ? make_problem1() : make_problem2(); }

/// u_t + a u u_x - nu u_xx from already computed derivatives.
inline double burgers_residual(const ProblemSpec& p, double u, double u_x, double u_t, double u_xx) {
    return u_t + p.a * u * u_x - p.nu * u_xx;
}

/// Residual of the network field at (x, t), via two second-order forward passes.
inline double residual(const MlpModel& model, const ProblemSpec& p, double x, double t) {
    const auto j = point_jet(model, x, t);
    return burgers_residual(p, j.u, j.u_x, j.u_t, j.u_xx);
}

} // namespace symmpinn
