#include "credrep/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "credrep/errors.hpp"

namespace credrep {

namespace {

/// Unicode code points, counted as non-continuation bytes.
std::size_t codepoint_count(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

double seconds_since(std::int64_t event_utc, std::int64_t snapshot_utc) {
    return static_cast<double>(std::max<std::int64_t>(0, snapshot_utc - event_utc));
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

} // namespace

const std::vector<std::string>& feature_schema() {
    static const std::vector<std::string> schema = {
        "post_length",
        "seconds_since_posted",
        "downs",
        "ups",
        "score",
        "num_comments",
        "num_crossposts",
        "wot_score",
        "has_url",
        "name_length",
        "seconds_since_registered",
        "link_karma",
        "comment_karma",
        "has_verified_email",
        "is_verified",
        "is_moderator",
    };
    return schema;
}

FeatureVector extract_features(const Post& post, const AuthorProfile& author,
                               std::int64_t snapshot_utc, const WotTable& wot,
                               std::ostream* warn) {
    if (post.author_id != author.author_id) {
        throw ValidationError("post '" + post.id + "' authored by '" + post.author_id +
                              "', got profile for '" + author.author_id + "'");
    }
    const WotLookup lookup = wot_lookup(post.url, wot, warn);

    FeatureVector fv;
    fv.post_id = post.id;
    fv.values = {
        static_cast<double>(codepoint_count(post.title) + codepoint_count(post.body)),
        seconds_since(post.created_utc, snapshot_utc),
        static_cast<double>(post.downs),
        static_cast<double>(post.ups),
        static_cast<double>(post.score),
        static_cast<double>(post.num_comments),
        static_cast<double>(post.num_crossposts),
        lookup.score,
        lookup.has_url ? 1.0 : 0.0,
        static_cast<double>(codepoint_count(author.name)),
        seconds_since(author.created_utc, snapshot_utc),
        static_cast<double>(author.link_karma),
        static_cast<double>(author.comment_karma),
        author.has_verified_email ? 1.0 : 0.0,
        author.is_verified ? 1.0 : 0.0,
        author.is_moderator ? 1.0 : 0.0,
    };
    return fv;
}

Standardizer::Standardizer(std::vector<double> means, std::vector<double> stds,
                           std::vector<bool> mask)
    : means_(std::move(means)), stds_(std::move(stds)), mask_(std::move(mask)) {
    if (means_.size() != stds_.size() || means_.size() != mask_.size()) {
        throw ValidationError("standardizer members differ in length");
    }
    for (std::size_t i = 0; i < stds_.size(); ++i) {
        if (!mask_[i] && !(stds_[i] > 0.0)) {
            throw ValidationError("standardizer has non-positive std for unmasked feature " +
                                  std::to_string(i));
        }
    }
}

std::vector<double> Standardizer::transform(std::span<const double> row) const {
    if (row.size() != means_.size()) {
        throw ValidationError("transform: row has " + std::to_string(row.size()) +
                              " features, expected " + std::to_string(means_.size()));
    }
    std::vector<double> z(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        z[i] = mask_[i] ? 0.0 : (row[i] - means_[i]) / stds_[i];
    }
    return z;
}

Standardizer fit_standardizer(std::span<const std::vector<double>> rows) {
    if (rows.size() < 2) {
        throw ValidationError("fit_standardizer: need at least 2 rows");
    }
    const std::size_t width = rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != width) {
            throw ValidationError("fit_standardizer: rows differ in width");
        }
    }
    const double n = static_cast<double>(rows.size());
    std::vector<double> means(width, 0.0);
    std::vector<double> stds(width, 0.0);
    std::vector<bool> mask(width, false);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < width; ++i) means[i] += row[i];
    }
    for (double& m : means) m /= n;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < width; ++i) {
            const double diff = row[i] - means[i];
            stds[i] += diff * diff;
        }
    }
    for (std::size_t i = 0; i < width; ++i) {
        stds[i] = std::sqrt(stds[i] / n);  // population std
        if (stds[i] == 0.0) {
            mask[i] = true;
            stds[i] = 1.0;  // placeholder; masked features transform to 0
        }
    }
    return Standardizer(std::move(means), std::move(stds), std::move(mask));
}

void write_feature_csv(std::span<const FeatureVector> rows,
                       std::span<const std::string> names, std::ostream& out) {
    out << "post_id";
    for (const auto& name : names) out << ',' << name;
    out << '\n';
    for (const auto& row : rows) {
        out << row.post_id;
        for (double v : row.values) out << ',' << format_double(v);
        out << '\n';
    }
}

} // namespace credrep
