#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace credrep {

enum class Label { credible, non_credible };

std::string to_string(Label label);
std::optional<Label> parse_label(const std::string& text);

struct AnnotationRecord {
    std::string post_id;
    std::string annotator_id;
    Label label = Label::credible;
};

struct LabeledPost {
    std::string post_id;
    Label label = Label::credible;
    double agreement = 0.0;  // pairwise-agreement fraction
};

enum class DropReason { low_agreement, tie, too_few_annotations };

struct DroppedPost {
    std::string post_id;
    DropReason reason = DropReason::low_agreement;
    double agreement = 0.0;
    std::size_t n_annotations = 0;
};

struct AggregationResult {
    std::vector<LabeledPost> kept;     // sorted by post_id
    std::vector<DroppedPost> dropped;  // sorted by post_id
};

/// Cohen's kappa over two aligned label sequences.
/// Returns 1.0 when both sequences are constant and identical (p_e == 1);
/// throws ValidationError on empty or length-mismatched input.
double cohen_kappa(std::span<const Label> a, std::span<const Label> b);

struct PairKappa {
    std::string annotator_a;
    std::string annotator_b;
    std::size_t n_shared = 0;
    double kappa = 0.0;
};

struct KappaReport {
    double mean = 0.0;
    std::vector<PairKappa> pairs;
};

/// Mean pairwise Cohen's kappa across annotator pairs, computed on the posts
/// each pair shares. Pairs with no shared posts are skipped.
KappaReport mean_pairwise_kappa(std::span<const AnnotationRecord> records);

/// Per-post agreement = fraction of annotator pairs that agree. Posts with
/// agreement > min_agreement keep their majority label; ties and posts with
/// fewer than 3 annotations are reported as dropped. (post_id, annotator_id)
/// duplicates throw ValidationError.
AggregationResult aggregate_annotations(std::span<const AnnotationRecord> records,
                                        double min_agreement = 0.66);

struct DatasetStats {
    std::size_t credible = 0;
    std::size_t non_credible = 0;
    std::optional<double> ratio;  // credible / non_credible, absent when undefined
};

DatasetStats dataset_stats(std::span<const LabeledPost> labeled);

/// Reads `post_id,annotator_id,label` CSV (header row required).
std::vector<AnnotationRecord> load_annotations(const std::string& path);

} // namespace credrep
