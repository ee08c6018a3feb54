#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "credrep/annotation.hpp"

namespace credrep {

/// Positive class = credible.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
    void add(Label truth, Label predicted);
    ConfusionMatrix& operator+=(const ConfusionMatrix& other);

    bool operator==(const ConfusionMatrix&) const = default;
};

struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double tnr = 0.0;
    double fpr = 0.0;
    double f1 = 0.0;
    bool degenerate = false;  // some denominator was zero; affected metrics are 0
};

/// Derived metrics from pooled confusion counts. Undefined denominators yield
/// 0 with the degenerate flag set. Throws ValidationError on an empty matrix.
MetricsReport compute_metrics(const ConfusionMatrix& cm);

struct FoldSplit {
    std::vector<std::vector<std::size_t>> folds;  // disjoint, exhaustive index sets
    std::vector<std::string> warnings;            // classes smaller than k
};

/// Stratified, seeded k-fold split. Fold sizes differ by at most one, as do
/// per-class counts per fold. Classes with fewer members than k fall back to
/// unstratified assignment and are named in warnings.
FoldSplit kfold_split(std::size_t n, std::size_t k, std::uint64_t seed,
                      std::span<const Label> strata);

} // namespace credrep
