#pragma once

#include <cmath>
#include <functional>

#include "symmpinn/error.hpp"
#include "symmpinn/pde/problem.hpp"
#include "symmpinn/symmetry/transform.hpp"

namespace symmpinn::symmetry {

using ScalarField = std::function<double(double, double)>;

/// Full second-order jet of a scalar field by central differences.
inline JetState fd_jet(const ScalarField& u, double x, double t, double h = 1e-4) {
    JetState s;
    s.x = x;
    s.t = t;
    s.u = u(x, t);
    const double xp = u(x + h, t), xm = u(x - h, t);
    const double tp = u(x, t + h), tm = u(x, t - h);
    s.u_x = (xp - xm) / (2.0 * h);
    s.u_t = (tp - tm) / (2.0 * h);
    s.u_xx = (xp - 2.0 * s.u + xm) / (h * h);
    s.u_tt = (tp - 2.0 * s.u + tm) / (h * h);
    s.u_xt = (u(x + h, t + h) - u(x + h, t - h) - u(x - h, t + h) + u(x - h, t - h)) / (4.0 * h * h);
    return s;
}

/// Prolonged action of the generator on the Burgers residual:
/// pi^t + a (eta u_x + u pi^x) - nu pi^xx. Vanishes on solutions when the
/// generator is a symmetry.
inline double invariance_defect(const Generator& gen, const ProblemSpec& p, const JetState& s) {
    const auto pi = extended_infinitesimals(gen, s);
    const double eta = gen.at(s.x, s.t, s.u).eta.v;
    return pi.pi_t + p.a * (eta * s.u_x + s.u * pi.pi_x) - p.nu * pi.pi_xx;
}

/// |defect| at an interior point, with the jet taken from `solution`
/// (typically the series oracle) by central differences.
inline double verify_invariance(const Generator& gen, const ProblemSpec& p, const ScalarField& solution, double x,
                                double t, double h = 1e-4) {
    if (!(x - h > p.x_lo && x + h < p.x_hi && t - h > 0.0))
        throw oracle_domain_error("verify_invariance: point must be interior");
    return std::abs(invariance_defect(gen, p, fd_jet(solution, x, t, h)));
}

/// The field obtained by pushing `solution` through the first-order map
/// (x, t, u) -> (x + eps xi1, t + eps xi2, u + eps eta), evaluated at a point
/// of the transformed plane. The preimage is found by Newton iteration.
inline double mapped_field(const Generator& gen, double eps, const ScalarField& solution, double X, double T) {
    double x = X;
    double t = T;
    const auto image = [&](double xx, double tt) {
        const double u = solution(xx, tt);
        const auto inf = gen.at(xx, tt, u);
        return std::pair{xx + eps * inf.xi1.v, tt + eps * inf.xi2.v};
    };
    for (int iter = 0; iter < 60; ++iter) {
        const auto [fx, ft] = image(x, t);
        const double rx = fx - X;
        const double rt = ft - T;
        if (std::abs(rx) < 1e-15 && std::abs(rt) < 1e-15) break;
        const double h = 1e-7;
        const auto [fx_x, ft_x] = image(x + h, t);
        const auto [fx_t, ft_t] = image(x, t + h);
        const double j11 = (fx_x - fx) / h, j21 = (ft_x - ft) / h;
        const double j12 = (fx_t - fx) / h, j22 = (ft_t - ft) / h;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) throw error("mapped_field: singular point map");
        const double dx = (j22 * rx - j12 * rt) / det;
        const double dt = (-j21 * rx + j11 * rt) / det;
        x -= dx;
        t -= dt;
        if (std::abs(dx) < 1e-17 && std::abs(dt) < 1e-17) break;
    }
    const double u = solution(x, t);
    return u + eps * gen.at(x, t, u).eta.v;
}

/// Burgers residual of the mapped field at (X, T), by central differences.
inline double mapped_residual(const Generator& gen, double eps, const ProblemSpec& p, const ScalarField& solution,
                              double X, double T, double h = 1e-4) {
    const ScalarField w = [&](double x, double t) { return mapped_field(gen, eps, solution, x, t); };
    const auto s = fd_jet(w, X, T, h);
    return burgers_residual(p, s.u, s.u_x, s.u_t, s.u_xx);
}

} // namespace symmpinn::symmetry
