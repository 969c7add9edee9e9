#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace symmpinn::symmetry {

/// The five point-symmetry generators of the viscous Burgers equation
/// (a = 1):
///   L1 = d/dx
///   L2 = d/dt
///   L3 = t d/dx + d/du                         (Galilean boost)
///   L4 = -x d/dx - 2t d/dt + u d/du            (scaling)
///   L5 = -tx d/dx - t^2 d/dt + (tu - x) d/du   (projective)
enum class GeneratorId { L1, L2, L3, L4, L5 };

inline constexpr std::array<GeneratorId, 5> all_generators{GeneratorId::L1, GeneratorId::L2, GeneratorId::L3,
                                                           GeneratorId::L4, GeneratorId::L5};

inline std::string_view to_string(GeneratorId id) {
    constexpr std::array<std::string_view, 5> names{"L1", "L2", "L3", "L4", "L5"};
    return names[static_cast<std::size_t>(id)];
}

inline std::optional<GeneratorId> parse_generator(std::string_view name) {
    for (auto id : all_generators)
        if (to_string(id) == name) return id;
    return std::nullopt;
}

/// A coefficient function of (x, t, u) with its partials up to second order.
struct Partials {
    double v = 0.0;
    double x = 0.0, t = 0.0, u = 0.0;
    double xx = 0.0, xt = 0.0, xu = 0.0, tt = 0.0, tu = 0.0, uu = 0.0;
};

struct Infinitesimals {
    Partials xi1; // x component
    Partials xi2; // t component
    Partials eta; // u component
};

struct Generator {
    GeneratorId id = GeneratorId::L5;

    Infinitesimals at(double x, double t, double u) const {
        Infinitesimals r;
        switch (id) {
        case GeneratorId::L1:
            r.xi1.v = 1.0;
            break;
        case GeneratorId::L2:
            r.xi2.v = 1.0;
            break;
        case GeneratorId::L3:
            r.xi1.v = t;
            r.xi1.t = 1.0;
            r.eta.v = 1.0;
            break;
        case GeneratorId::L4:
            r.xi1.v = -x;
            r.xi1.x = -1.0;
            r.xi2.v = -2.0 * t;
            r.xi2.t = -2.0;
            r.eta.v = u;
            r.eta.u = 1.0;
            break;
        case GeneratorId::L5:
            r.xi1.v = -t * x;
            r.xi1.x = -t;
            r.xi1.t = -x;
            r.xi1.xt = -1.0;
            r.xi2.v = -t * t;
            r.xi2.t = -2.0 * t;
            r.xi2.tt = -2.0;
            r.eta.v = t * u - x;
            r.eta.x = -1.0;
            r.eta.t = u;
            r.eta.u = t;
            r.eta.tu = 1.0;
            break;
        }
        return r;
    }

    double xi1(double x, double t, double u) const { return at(x, t, u).xi1.v; }
    double xi2(double x, double t, double u) const { return at(x, t, u).xi2.v; }
    double eta(double x, double t, double u) const { return at(x, t, u).eta.v; }
};

} // namespace symmpinn::symmetry
