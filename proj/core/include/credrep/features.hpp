#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "credrep/corpus.hpp"

namespace credrep {

/// Fixed, versioned order of the hand-crafted post and submitter features.
/// Weight vectors are meaningless without this schema.
const std::vector<std::string>& feature_schema();

inline constexpr std::size_t kFeatureCount = 16;

struct FeatureVector {
    std::string post_id;
    std::vector<double> values;  // feature_schema() order
};

/// Computes the 16 features for one post. Seconds features are relative to
/// snapshot_utc and floored at 0; booleans encode as 0/1. Throws
/// ValidationError when the author does not match post.author_id.
FeatureVector extract_features(const Post& post, const AuthorProfile& author,
                               std::int64_t snapshot_utc, const WotTable& wot,
                               std::ostream* warn = nullptr);

/// Per-feature mean/std fitted on training rows; constant features are masked
/// and transform to 0.
class Standardizer {
public:
    Standardizer() = default;
    Standardizer(std::vector<double> means, std::vector<double> stds,
                 std::vector<bool> mask);

    std::size_t size() const { return means_.size(); }
    const std::vector<double>& means() const { return means_; }
    const std::vector<double>& stds() const { return stds_; }
    const std::vector<bool>& mask() const { return mask_; }

    /// z = (x - mean) / std for unmasked features, 0 for masked. Throws
    /// ValidationError on length mismatch.
    std::vector<double> transform(std::span<const double> row) const;

private:
    std::vector<double> means_;
    std::vector<double> stds_;
    std::vector<bool> mask_;  // true = constant feature, excluded
};

/// Population mean/std per column over >= 2 rows of equal width.
Standardizer fit_standardizer(std::span<const std::vector<double>> rows);

/// Debug CSV dump: header = schema (or the given names), one row per post.
void write_feature_csv(std::span<const FeatureVector> rows,
                       std::span<const std::string> names, std::ostream& out);

} // namespace credrep
