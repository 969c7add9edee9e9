#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "symmpinn/error.hpp"
#include "symmpinn/symmetry/generator.hpp"

namespace symmpinn::symmetry {

/// What to do with a transformed point that leaves the training box.
enum class DomainPolicy { keep, clamp, discard };

struct TransformConfig {
    GeneratorId generator = GeneratorId::L5;
    double epsilon = 0.5;
    bool use_u_in_xi = false;
    DomainPolicy policy = DomainPolicy::keep;

    void validate() const {
        if (!std::isfinite(epsilon)) throw config_error("epsilon", "must be finite");
    }
};

struct TransformedPoint {
    double x;
    double t;
};

/// First-order point map x + eps xi1, t + eps xi2. The O(eps^2) terms are
/// dropped. None of L1..L5 has xi depending on u, so `u` only matters when
/// use_u_in_xi is set.
inline TransformedPoint transform_point(const TransformConfig& cfg, double x, double t, double u) {
    const Generator g{cfg.generator};
    const auto inf = g.at(x, t, cfg.use_u_in_xi ? u : 0.0);
    return {x + cfg.epsilon * inf.xi1.v, t + cfg.epsilon * inf.xi2.v};
}

/// Applies the domain policy; nullopt means the point is discarded.
inline std::optional<TransformedPoint> apply_policy(DomainPolicy policy, TransformedPoint p, double x_lo, double x_hi,
                                                    double t_lo, double t_hi) {
    const bool inside = p.x >= x_lo && p.x <= x_hi && p.t >= t_lo && p.t <= t_hi;
    switch (policy) {
    case DomainPolicy::keep: return p;
    case DomainPolicy::clamp: return TransformedPoint{std::clamp(p.x, x_lo, x_hi), std::clamp(p.t, t_lo, t_hi)};
    case DomainPolicy::discard: return inside ? std::optional{p} : std::nullopt;
    }
    return p;
}

/// Local solution jet (x, t, u and derivatives of u up to second order).
struct JetState {
    double x = 0.0, t = 0.0, u = 0.0;
    double u_x = 0.0, u_t = 0.0;
    double u_xx = 0.0, u_xt = 0.0, u_tt = 0.0;
};

struct ExtendedInfinitesimals {
    double pi_x;
    double pi_t;
    double pi_xx;
};

/// Second prolongation coefficients pi^x, pi^t, pi^xx.
///
/// pi^xx follows the standard second-prolongation formula. Compared with the
/// typeset version commonly quoted for Burgers, the cubic term reads
/// -xi2_uu u_x^2 u_t (not -xi2_uu u_t^2), the u_xt coefficient is
/// -2 (xi2_x + xi2_u u_x), and the u_xx coefficient is
/// (eta_u - 2 xi1_x - 3 xi1_u u_x - xi2_u u_t). For L1..L5 every term that
/// differs vanishes identically.
inline ExtendedInfinitesimals extended_infinitesimals(const Generator& gen, const JetState& s) {
    const auto inf = gen.at(s.x, s.t, s.u);
    const auto& a = inf.xi1;
    const auto& b = inf.xi2;
    const auto& e = inf.eta;
    const double ux = s.u_x;
    const double ut = s.u_t;

    const double pi_x = e.x + (e.u - a.x) * ux - b.x * ut - a.u * ux * ux - b.u * ux * ut;
    const double pi_t = e.t + (e.u - b.t) * ut - a.t * ux - a.u * ux * ut - b.u * ut * ut;
    const double pi_xx = e.xx + (2.0 * e.xu - a.xx) * ux - b.xx * ut + (e.uu - 2.0 * a.xu) * ux * ux -
                         2.0 * b.xu * ux * ut - a.uu * ux * ux * ux - b.uu * ux * ux * ut +
                         (e.u - 2.0 * a.x - 3.0 * a.u * ux - b.u * ut) * s.u_xx - 2.0 * (b.x + b.u * ux) * s.u_xt;
    return {pi_x, pi_t, pi_xx};
}

} // namespace symmpinn::symmetry
