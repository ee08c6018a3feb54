#include "credrep/evaluation.hpp"

#include <algorithm>
#include <map>

#include "credrep/errors.hpp"
#include "credrep/rng.hpp"

namespace credrep {

void ConfusionMatrix::add(Label truth, Label predicted) {
    if (truth == Label::credible) {
        predicted == Label::credible ? ++tp : ++fn;
    } else {
        predicted == Label::credible ? ++fp : ++tn;
    }
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    tn += other.tn;
    return *this;
}

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw ValidationError("compute_metrics: empty confusion matrix");

    MetricsReport report;
    const auto ratio = [&report](std::size_t num, std::size_t den) {
        if (den == 0) {
            report.degenerate = true;
            return 0.0;
        }
        return static_cast<double>(num) / static_cast<double>(den);
    };
    report.accuracy = ratio(cm.tp + cm.tn, cm.total());
    report.precision = ratio(cm.tp, cm.tp + cm.fp);
    report.recall = ratio(cm.tp, cm.tp + cm.fn);
    report.tnr = ratio(cm.tn, cm.tn + cm.fp);
    report.fpr = ratio(cm.fp, cm.tn + cm.fp);
    if (report.precision + report.recall > 0.0) {
        report.f1 = 2.0 * report.precision * report.recall /
                    (report.precision + report.recall);
    } else {
        report.degenerate = true;
        report.f1 = 0.0;
    }
    return report;
}

FoldSplit kfold_split(std::size_t n, std::size_t k, std::uint64_t seed,
                      std::span<const Label> strata) {
    if (k < 2) throw ValidationError("kfold_split: k must be >= 2");
    if (k > n) throw ValidationError("kfold_split: k exceeds n");
    if (strata.size() != n) {
        throw ValidationError("kfold_split: strata length does not match n");
    }

    std::map<Label, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < n; ++i) by_class[strata[i]].push_back(i);

    FoldSplit split;
    split.folds.assign(k, {});
    Rng rng(seed);

    // Classes smaller than k cannot be stratified; pool them and deal the
    // pooled block unstratified.
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> pooled;
    for (auto& [label, indices] : by_class) {
        if (indices.size() < k) {
            split.warnings.push_back("class '" + to_string(label) + "' has " +
                                     std::to_string(indices.size()) +
                                     " members, fewer than k; unstratified for this class");
            pooled.insert(pooled.end(), indices.begin(), indices.end());
        } else {
            blocks.push_back(std::move(indices));
        }
    }
    if (!pooled.empty()) blocks.push_back(std::move(pooled));

    // Rotating deal: each block starts where the previous one left off, which
    // keeps both per-class and total fold sizes within one of each other.
    std::size_t cursor = 0;
    for (auto& block : blocks) {
        rng.shuffle(block);
        for (std::size_t j = 0; j < block.size(); ++j) {
            split.folds[(cursor + j) % k].push_back(block[j]);
        }
        cursor = (cursor + block.size()) % k;
    }
    for (auto& fold : split.folds) std::sort(fold.begin(), fold.end());
    return split;
}

} // namespace credrep
