#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "symmpinn/pde/problem.hpp"
#include "symmpinn/symmetry/transform.hpp"
#include "symmpinn/training/config.hpp"

namespace symmpinn::training {

/// Point sets in structure-of-arrays form.
struct PointSet {
    std::vector<double> x, t, target;
    std::size_t size() const noexcept { return x.size(); }
};

/// Collocation points pushed through one generator's point map.
struct MappedSet {
    symmetry::GeneratorId generator;
    std::vector<double> x, t;
    std::size_t size() const noexcept { return x.size(); }
};

struct SampleSet {
    PointSet init;   // t = 0, target u0(x)
    PointSet bound;  // x on a wall, target 0
    PointSet colloc; // target unused
    std::vector<MappedSet> mapped;
    std::uint64_t seed = 0;
};

/// Uniform samples: x in the box for the initial line, t in [0, T] for each
/// wall (first half at x_lo, second half at x_hi), (x, t) in the box for
/// collocation. Mapped sets are built from the collocation points once;
/// they stay fixed for the whole run.
inline SampleSet sample(const ProblemSpec& p, const TrainConfig& cfg, std::uint64_t seed) {
    std::seed_seq seq{seed, std::uint64_t{1}};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> ux(p.x_lo, p.x_hi);
    std::uniform_real_distribution<double> ut(0.0, p.t_end);

    SampleSet s;
    s.seed = seed;
    s.init.x.resize(cfg.n_init);
    s.init.t.assign(cfg.n_init, 0.0);
    s.init.target.resize(cfg.n_init);
    for (std::size_t i = 0; i < cfg.n_init; ++i) {
        s.init.x[i] = ux(rng);
        s.init.target[i] = p.initial_fn(s.init.x[i]);
    }

    const std::size_t lo_count = cfg.n_bound / 2;
    s.bound.x.resize(cfg.n_bound);
    s.bound.t.resize(cfg.n_bound);
    s.bound.target.resize(cfg.n_bound);
    for (std::size_t i = 0; i < cfg.n_bound; ++i) {
        s.bound.x[i] = i < lo_count ? p.x_lo : p.x_hi;
        s.bound.t[i] = ut(rng);
        s.bound.target[i] = p.boundary_value(s.bound.x[i], s.bound.t[i]);
    }

    s.colloc.x.resize(cfg.n_colloc);
    s.colloc.t.resize(cfg.n_colloc);
    for (std::size_t i = 0; i < cfg.n_colloc; ++i) {
        s.colloc.x[i] = ux(rng);
        s.colloc.t[i] = ut(rng);
    }

    for (auto id : cfg.generators) {
        MappedSet m{id, {}, {}};
        const symmetry::TransformConfig tc{id, cfg.epsilon, false, cfg.out_of_domain};
        for (std::size_t i = 0; i < cfg.n_colloc; ++i) {
            const auto q = symmetry::apply_policy(tc.policy, symmetry::transform_point(tc, s.colloc.x[i], s.colloc.t[i], 0.0),
                                                  p.x_lo, p.x_hi, 0.0, p.t_end);
            if (!q) continue;
            m.x.push_back(q->x);
            m.t.push_back(q->t);
        }
        s.mapped.push_back(std::move(m));
    }
    return s;
}

inline SampleSet sample(const ProblemSpec& p, const TrainConfig& cfg) { return sample(p, cfg, cfg.seed); }

} // namespace symmpinn::training
