#include "credrep/annotation.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>

#include "credrep/errors.hpp"

namespace credrep {

std::string to_string(Label label) {
    return label == Label::credible ? "credible" : "non-credible";
}

std::optional<Label> parse_label(const std::string& text) {
    if (text == "credible") return Label::credible;
    if (text == "non-credible") return Label::non_credible;
    return std::nullopt;
}

double cohen_kappa(std::span<const Label> a, std::span<const Label> b) {
    if (a.size() != b.size()) {
        throw ValidationError("cohen_kappa: sequences differ in length");
    }
    if (a.empty()) throw ValidationError("cohen_kappa: empty input");

    const double n = static_cast<double>(a.size());
    std::size_t agree = 0;
    std::array<std::size_t, 2> count_a{0, 0};
    std::array<std::size_t, 2> count_b{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) ++agree;
        ++count_a[a[i] == Label::credible ? 0 : 1];
        ++count_b[b[i] == Label::credible ? 0 : 1];
    }
    const double p_o = static_cast<double>(agree) / n;
    double p_e = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
        p_e += (static_cast<double>(count_a[k]) / n) * (static_cast<double>(count_b[k]) / n);
    }
    // p_e == 1 only when both sequences are constant and identical.
    if (p_e >= 1.0) return 1.0;
    return (p_o - p_e) / (1.0 - p_e);
}

KappaReport mean_pairwise_kappa(std::span<const AnnotationRecord> records) {
    // annotator -> post -> label
    std::map<std::string, std::map<std::string, Label>> by_annotator;
    for (const auto& r : records) {
        by_annotator[r.annotator_id][r.post_id] = r.label;
    }
    KappaReport report;
    double sum = 0.0;
    for (auto it_a = by_annotator.begin(); it_a != by_annotator.end(); ++it_a) {
        for (auto it_b = std::next(it_a); it_b != by_annotator.end(); ++it_b) {
            std::vector<Label> labels_a;
            std::vector<Label> labels_b;
            for (const auto& [post_id, label] : it_a->second) {
                auto shared = it_b->second.find(post_id);
                if (shared != it_b->second.end()) {
                    labels_a.push_back(label);
                    labels_b.push_back(shared->second);
                }
            }
            if (labels_a.empty()) continue;
            PairKappa pair;
            pair.annotator_a = it_a->first;
            pair.annotator_b = it_b->first;
            pair.n_shared = labels_a.size();
            pair.kappa = cohen_kappa(labels_a, labels_b);
            sum += pair.kappa;
            report.pairs.push_back(std::move(pair));
        }
    }
    if (!report.pairs.empty()) sum /= static_cast<double>(report.pairs.size());
    report.mean = sum;
    return report;
}

AggregationResult aggregate_annotations(std::span<const AnnotationRecord> records,
                                        double min_agreement) {
    std::map<std::string, std::vector<std::pair<std::string, Label>>> by_post;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : records) {
        if (!seen.insert({r.post_id, r.annotator_id}).second) {
            throw ValidationError("duplicate annotation for post '" + r.post_id +
                                  "' by annotator '" + r.annotator_id + "'");
        }
        by_post[r.post_id].emplace_back(r.annotator_id, r.label);
    }

    AggregationResult result;
    for (const auto& [post_id, annotations] : by_post) {
        const std::size_t n = annotations.size();
        if (n < 3) {
            result.dropped.push_back({post_id, DropReason::too_few_annotations, 0.0, n});
            continue;
        }
        std::size_t credible = 0;
        for (const auto& [annotator, label] : annotations) {
            if (label == Label::credible) ++credible;
        }
        const std::size_t non_credible = n - credible;
        // Agreeing pairs: both-credible plus both-non-credible.
        const auto pairs_of = [](std::size_t m) { return m * (m - 1) / 2; };
        const double agreement = static_cast<double>(pairs_of(credible) + pairs_of(non_credible)) /
                                 static_cast<double>(pairs_of(n));
        if (agreement <= min_agreement) {
            result.dropped.push_back({post_id, DropReason::low_agreement, agreement, n});
            continue;
        }
        if (credible == non_credible) {
            result.dropped.push_back({post_id, DropReason::tie, agreement, n});
            continue;
        }
        result.kept.push_back(
            {post_id, credible > non_credible ? Label::credible : Label::non_credible,
             agreement});
    }
    // std::map iteration already sorts by post_id.
    return result;
}

DatasetStats dataset_stats(std::span<const LabeledPost> labeled) {
    DatasetStats stats;
    for (const auto& post : labeled) {
        if (post.label == Label::credible) {
            ++stats.credible;
        } else {
            ++stats.non_credible;
        }
    }
    if (stats.non_credible > 0) {
        stats.ratio = static_cast<double>(stats.credible) /
                      static_cast<double>(stats.non_credible);
    }
    return stats;
}

std::vector<AnnotationRecord> load_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open annotation file '" + path + "'");

    std::vector<AnnotationRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 3) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected post_id,annotator_id,label");
        }
        if (line_no == 1) {
            if (fields[0] != "post_id" || fields[1] != "annotator_id" ||
                fields[2] != "label") {
                throw ParseError(path + ":1: header row 'post_id,annotator_id,label' required");
            }
            continue;
        }
        auto label = parse_label(fields[2]);
        if (!label) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": unknown label '" +
                             fields[2] + "'");
        }
        records.push_back({fields[0], fields[1], *label});
    }
    if (line_no == 0) throw ParseError(path + ": empty annotation file (header required)");
    return records;
}

} // namespace credrep
