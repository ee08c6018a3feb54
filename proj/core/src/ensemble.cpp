#include "credrep/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "credrep/errors.hpp"
#include "credrep/evaluation.hpp"

namespace credrep {

double combine(double pe, double ps, double we, double ws) {
    if (!(we > 0.0) || !(ws > 0.0)) {
        throw ValidationError("combine: weights must be strictly positive");
    }
    if (pe < 0.0 || pe > 1.0 || ps < 0.0 || ps > 1.0) {
        throw ValidationError("combine: Pe and Ps must be within [0,1]");
    }
    const double pf = (we * pe + ws * ps) / (we + ws);
    // The true value is a convex combination; clamping removes the last-ulp
    // rounding drift so min(Pe,Ps) <= Pf <= max(Pe,Ps) holds exactly.
    return std::clamp(pf, std::min(pe, ps), std::max(pe, ps));
}

EnsembleWeights learn_weights(std::span<const WeightSample> samples, double threshold) {
    bool has_pos = false;
    bool has_neg = false;
    for (const auto& s : samples) {
        (s.label == Label::credible ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw ValidationError("learn_weights: both classes must be present");
    }

    double best_r = 0.5;
    double best_score = -1.0;
    double best_dist = 0.0;
    for (int step = 0; step <= 100; ++step) {
        const double r = static_cast<double>(step) / 100.0;
        ConfusionMatrix cm;
        for (const auto& s : samples) {
            const double pf = r * s.pe + (1.0 - r) * s.ps;
            cm.add(s.label, pf > threshold ? Label::credible : Label::non_credible);
        }
        const double tpr = cm.tp + cm.fn > 0
                               ? static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn)
                               : 0.0;
        const double tnr = cm.tn + cm.fp > 0
                               ? static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp)
                               : 0.0;
        const double balanced = (tpr + tnr) / 2.0;
        const double dist = std::abs(r - 0.5);
        // Ties break toward r = 0.5; equidistant ties keep the first hit.
        if (balanced > best_score ||
            (balanced == best_score && dist < best_dist)) {
            best_score = balanced;
            best_r = r;
            best_dist = dist;
        }
    }
    return {best_r, 1.0 - best_r};
}

} // namespace credrep
