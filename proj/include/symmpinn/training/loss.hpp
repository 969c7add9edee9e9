#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "symmpinn/error.hpp"
#include "symmpinn/training/batch_kernel.hpp"
#include "symmpinn/training/samples.hpp"

namespace symmpinn::training {

struct LossBreakdown {
    double l_init = 0.0;
    double l_bound = 0.0;
    double l_res = 0.0;
    double l_symm = 0.0;
    double total = 0.0;
    LossWeights weights;

    bool finite() const noexcept {
        return std::isfinite(l_init) && std::isfinite(l_bound) && std::isfinite(l_res) && std::isfinite(l_symm) &&
               std::isfinite(total);
    }
};

inline double combine(const LossWeights& w, double l_init, double l_bound, double l_res, double l_symm) {
    return w.init * l_init + w.bound * l_bound + w.res * l_res + w.symm * l_symm;
}

/// Loss with all terms as means of squares. l_symm is the sum over
/// generators of the mean squared residual on each mapped set; it stays
/// exactly zero when there are no mapped sets. When `grad` is non-empty it
/// is overwritten with d total / d params.
inline LossBreakdown loss(const MlpModel& m, const ProblemSpec& p, const SampleSet& s, const LossWeights& w,
                          BatchKernel& kernel, std::span<double> grad = {}, std::size_t iteration = 0) {
    if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
    const auto mean_scale = [](double weight, std::size_t n) { return n == 0 ? 0.0 : weight / static_cast<double>(n); };
    const auto mean = [](double sum, std::size_t n) { return n == 0 ? 0.0 : sum / static_cast<double>(n); };

    LossBreakdown r;
    r.weights = w;
    try {
        r.l_init = mean(kernel.data_term(m, s.init.x, s.init.t, s.init.target, mean_scale(w.init, s.init.size()), grad),
                        s.init.size());
        r.l_bound = mean(
            kernel.data_term(m, s.bound.x, s.bound.t, s.bound.target, mean_scale(w.bound, s.bound.size()), grad),
            s.bound.size());
        r.l_res = mean(kernel.residual_term(m, p, s.colloc.x, s.colloc.t, mean_scale(w.res, s.colloc.size()), grad),
                       s.colloc.size());
        for (const auto& ms : s.mapped)
            r.l_symm += mean(kernel.residual_term(m, p, ms.x, ms.t, mean_scale(w.symm, ms.size()), grad), ms.size());
    } catch (const numeric_error& e) {
        throw training_diverged(iteration, e.what());
    }
    r.total = combine(w, r.l_init, r.l_bound, r.l_res, r.l_symm);
    if (!r.finite()) throw training_diverged(iteration, "non-finite loss");
    return r;
}

} // namespace symmpinn::training
