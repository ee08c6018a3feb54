#pragma once

#include <span>
#include <string>
#include <vector>

#include "credrep/annotation.hpp"

namespace credrep {

/// Pf = (We*Pe + Ws*Ps) / (We + Ws), clamped into [min(Pe,Ps), max(Pe,Ps)]
/// so the convex-combination bounds hold exactly in floating point. Throws
/// ValidationError on non-positive weights or out-of-range inputs.
double combine(double pe, double ps, double we, double ws);

struct EnsembleWeights {
    double we = 0.5;
    double ws = 0.5;
};

struct WeightSample {
    double pe = 0.0;
    double ps = 0.0;
    Label label = Label::credible;
};

/// Grid search over the weight ratio r = We/(We+Ws) in {0.00, 0.01, ..., 1.00},
/// maximizing balanced accuracy of `Pf > threshold` on the validation samples.
/// Ties break toward r = 0.5. Returns (We, Ws) = (r, 1-r). Throws
/// ValidationError when only one class is present.
EnsembleWeights learn_weights(std::span<const WeightSample> samples,
                              double threshold = 0.6);

struct Verdict {
    std::string post_id;
    double pe = 0.5;
    double ps = 0.5;
    double pf = 0.5;
    double s_c = 0.5;
    double d_c = 0.0;
    double d_i = 0.0;
    Label label = Label::non_credible;  // credible iff pf > threshold
    bool no_signal = false;
};

} // namespace credrep
