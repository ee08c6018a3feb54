#include "credrep/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "credrep/errors.hpp"
#include "credrep/rng.hpp"

namespace credrep {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    return fnv1a64(tag) ^ (seed * 0x9e3779b97f4a7c15ULL + 1ULL);
}

/// Weighted fusion that also accepts the degenerate single-model ratios
/// learn_weights can return (r = 0 or 1); combine() itself requires strictly
/// positive weights.
double fuse(double pe, double ps, double we, double ws) {
    if (we > 0.0 && ws > 0.0) return combine(pe, ps, we, ws);
    const double pf = (we * pe + ws * ps) / (we + ws);
    return std::clamp(pf, std::min(pe, ps), std::max(pe, ps));
}

struct CoreFit {
    CentroidModel centroids;
    Standardizer standardizer;
    LinearSvmModel svm;
};

std::vector<double> svm_features(const TrainingRow& row, const CentroidModel& centroids,
                                 bool stacked) {
    std::vector<double> features = row.features;
    if (stacked) {
        features.push_back(reputation_score(row.embedding, centroids).pe);
    }
    return features;
}

CoreFit fit_core(std::span<const TrainingRow> rows, std::span<const std::size_t> indices,
                 const PipelineConfig& config) {
    std::vector<PostEmbedding> embeddings;
    std::vector<Label> labels;
    embeddings.reserve(indices.size());
    labels.reserve(indices.size());
    for (std::size_t i : indices) {
        embeddings.push_back(rows[i].embedding);
        labels.push_back(rows[i].label);
    }

    CoreFit fit;
    fit.centroids = fit_centroids(embeddings, labels);

    std::vector<std::vector<double>> feature_rows;
    std::vector<int> y;
    feature_rows.reserve(indices.size());
    y.reserve(indices.size());
    for (std::size_t i : indices) {
        feature_rows.push_back(svm_features(rows[i], fit.centroids, config.stacked_features));
        y.push_back(rows[i].label == Label::credible ? 1 : -1);
    }
    fit.standardizer = fit_standardizer(feature_rows);

    std::vector<std::vector<double>> X;
    X.reserve(feature_rows.size());
    for (const auto& row : feature_rows) X.push_back(fit.standardizer.transform(row));

    SvmConfig svm_config;
    svm_config.lambda = config.lambda;
    svm_config.epochs = config.epochs;
    svm_config.seed = config.seed;
    svm_config.class_weighted = config.class_weighted;
    fit.svm = train_svm(X, y, svm_config);
    return fit;
}

struct CorePrediction {
    double margin = 0.0;
    double pe = 0.5;
};

CorePrediction predict_core(const CoreFit& fit, const TrainingRow& row,
                            const PipelineConfig& config) {
    CorePrediction pred;
    pred.pe = reputation_score(row.embedding, fit.centroids).pe;
    const std::vector<double> features =
        svm_features(row, fit.centroids, config.stacked_features);
    pred.margin = decision_function(fit.svm, fit.standardizer.transform(features));
    return pred;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

} // namespace

std::vector<TrainingRow> build_rows(const Corpus& corpus,
                                    std::span<const LabeledPost> labels,
                                    const ConceptLexicon& lexicon,
                                    const EmbeddingStore& store, const WotTable& wot,
                                    bool normalize_vectors) {
    std::unordered_map<std::string, const Post*> by_id;
    by_id.reserve(corpus.posts.size());
    for (const Post& post : corpus.posts) by_id.emplace(post.id, &post);

    std::vector<TrainingRow> rows;
    rows.reserve(labels.size());
    for (const LabeledPost& labeled : labels) {
        auto it = by_id.find(labeled.post_id);
        if (it == by_id.end()) {
            throw ValidationError("labeled post '" + labeled.post_id +
                                  "' is missing from the corpus");
        }
        const Post& post = *it->second;
        TrainingRow row;
        row.post_id = post.id;
        row.features =
            extract_features(post, corpus.author_of(post), corpus.snapshot_utc, wot).values;
        row.embedding = post_vector(post, lexicon, store, normalize_vectors);
        row.label = labeled.label;
        rows.push_back(std::move(row));
    }
    return rows;
}

FittedPipeline fit_pipeline(std::span<const TrainingRow> rows,
                            const PipelineConfig& config) {
    if (rows.size() < 2) {
        throw ValidationError("fit_pipeline: need at least 2 labeled rows");
    }
    std::vector<Label> labels;
    labels.reserve(rows.size());
    std::size_t n_credible = 0;
    for (const auto& row : rows) {
        labels.push_back(row.label);
        if (row.label == Label::credible) ++n_credible;
    }
    const std::size_t min_class = std::min(n_credible, rows.size() - n_credible);
    if (min_class == 0) {
        throw ValidationError("fit_pipeline: both classes must be present");
    }

    // Out-of-fold margins and embedding predictions for calibration and
    // weight learning; in-sample fallback when a class is too small to fold.
    std::vector<double> margins;
    std::vector<int> margin_labels;
    std::vector<WeightSample> samples;
    bool in_sample = false;

    const std::size_t internal_k =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(config.calibration_folds, 2)),
                              min_class);
    if (internal_k >= 2) {
        try {
            const FoldSplit split = kfold_split(rows.size(), internal_k,
                                                derive_seed(config.seed, "calibration"),
                                                labels);
            for (const auto& fold : split.folds) {
                std::vector<std::size_t> train;
                train.reserve(rows.size() - fold.size());
                std::vector<bool> held(rows.size(), false);
                for (std::size_t i : fold) held[i] = true;
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (!held[i]) train.push_back(i);
                }
                const CoreFit fit = fit_core(rows, train, config);
                for (std::size_t i : fold) {
                    const CorePrediction pred = predict_core(fit, rows[i], config);
                    margins.push_back(pred.margin);
                    margin_labels.push_back(rows[i].label == Label::credible ? 1 : -1);
                    samples.push_back({pred.pe, 0.0, rows[i].label});
                }
            }
        } catch (const ValidationError&) {
            // A fold degenerated (e.g. all of one class's embeddings were
            // no_signal); calibrate in sample instead.
            margins.clear();
            margin_labels.clear();
            samples.clear();
            in_sample = true;
        }
    } else {
        in_sample = true;
    }

    const std::vector<std::size_t> everything = all_indices(rows.size());
    const CoreFit core = fit_core(rows, everything, config);

    if (in_sample) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const CorePrediction pred = predict_core(core, rows[i], config);
            margins.push_back(pred.margin);
            margin_labels.push_back(rows[i].label == Label::credible ? 1 : -1);
            samples.push_back({pred.pe, 0.0, rows[i].label});
        }
    }

    FittedPipeline pipeline;
    pipeline.platt = fit_platt(margins, margin_labels);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i].ps = pipeline.platt.apply(margins[i]);
    }
    pipeline.weights = learn_weights(samples, config.threshold);
    pipeline.centroids = core.centroids;
    pipeline.standardizer = core.standardizer;
    pipeline.svm = core.svm;
    pipeline.threshold = config.threshold;
    pipeline.config = config;
    pipeline.in_sample_calibration = in_sample;
    pipeline.feature_schema = feature_schema();
    if (config.stacked_features) pipeline.feature_schema.push_back("embedding_score");
    return pipeline;
}

RowScore score_row(const FittedPipeline& pipeline, std::span<const double> raw_features,
                   const PostEmbedding& embedding) {
    RowScore score;
    score.breakdown = reputation_score(embedding, pipeline.centroids);
    score.pe = score.breakdown.pe;

    std::vector<double> features(raw_features.begin(), raw_features.end());
    if (pipeline.config.stacked_features) features.push_back(score.pe);
    const double margin =
        decision_function(pipeline.svm, pipeline.standardizer.transform(features));
    score.ps = pipeline.platt.apply(margin);
    score.pf = fuse(score.pe, score.ps, pipeline.weights.we, pipeline.weights.ws);
    return score;
}

Verdict score_post(const Post& post, const AuthorProfile& author,
                   const FittedPipeline& pipeline, const ConceptLexicon& lexicon,
                   const EmbeddingStore& store, const WotTable& wot,
                   std::int64_t snapshot_utc) {
    const FeatureVector features = extract_features(post, author, snapshot_utc, wot);
    const PostEmbedding embedding =
        post_vector(post, lexicon, store, pipeline.config.normalize_vectors);
    const RowScore score = score_row(pipeline, features.values, embedding);

    Verdict verdict;
    verdict.post_id = post.id;
    verdict.pe = score.pe;
    verdict.ps = score.ps;
    verdict.pf = score.pf;
    verdict.s_c = score.breakdown.s_c;
    verdict.d_c = score.breakdown.d_c;
    verdict.d_i = score.breakdown.d_i;
    verdict.label = score.pf > pipeline.threshold ? Label::credible : Label::non_credible;
    verdict.no_signal = embedding.no_signal;
    return verdict;
}

CrossValidationReport cross_validate(std::span<const TrainingRow> rows, std::size_t k,
                                     const PipelineConfig& config) {
    std::vector<Label> labels;
    labels.reserve(rows.size());
    for (const auto& row : rows) labels.push_back(row.label);

    const FoldSplit split = kfold_split(rows.size(), k, config.seed, labels);

    CrossValidationReport report;
    report.warnings = split.warnings;
    for (std::size_t f = 0; f < split.folds.size(); ++f) {
        const auto& fold = split.folds[f];
        std::vector<TrainingRow> train;
        train.reserve(rows.size() - fold.size());
        std::vector<bool> held(rows.size(), false);
        for (std::size_t i : fold) held[i] = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!held[i]) train.push_back(rows[i]);
        }

        const FittedPipeline pipeline = fit_pipeline(train, config);

        FoldReport fold_report;
        fold_report.fold = f;
        for (std::size_t i : fold) {
            const RowScore score = score_row(pipeline, rows[i].features, rows[i].embedding);
            fold_report.ensembled.confusion.add(
                rows[i].label,
                score.pf > config.threshold ? Label::credible : Label::non_credible);
            fold_report.embedding.confusion.add(
                rows[i].label, score.pe > 0.5 ? Label::credible : Label::non_credible);
            fold_report.svm.confusion.add(
                rows[i].label, score.ps > 0.5 ? Label::credible : Label::non_credible);
        }
        fold_report.ensembled.metrics = compute_metrics(fold_report.ensembled.confusion);
        fold_report.embedding.metrics = compute_metrics(fold_report.embedding.confusion);
        fold_report.svm.metrics = compute_metrics(fold_report.svm.confusion);

        report.ensembled.confusion += fold_report.ensembled.confusion;
        report.embedding.confusion += fold_report.embedding.confusion;
        report.svm.confusion += fold_report.svm.confusion;
        report.folds.push_back(std::move(fold_report));
    }
    report.ensembled.metrics = compute_metrics(report.ensembled.confusion);
    report.embedding.metrics = compute_metrics(report.embedding.confusion);
    report.svm.metrics = compute_metrics(report.svm.confusion);
    return report;
}

std::vector<TrainingRow> balanced_subsample(std::span<const TrainingRow> rows,
                                            std::uint64_t seed) {
    std::vector<std::size_t> credible;
    std::vector<std::size_t> non_credible;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        (rows[i].label == Label::credible ? credible : non_credible).push_back(i);
    }
    auto& minority = credible.size() <= non_credible.size() ? credible : non_credible;
    auto& majority = credible.size() <= non_credible.size() ? non_credible : credible;

    Rng rng(derive_seed(seed, "balanced"));
    rng.shuffle(majority);
    majority.resize(minority.size());

    std::vector<std::size_t> selected = minority;
    selected.insert(selected.end(), majority.begin(), majority.end());
    std::sort(selected.begin(), selected.end());

    std::vector<TrainingRow> out;
    out.reserve(selected.size());
    for (std::size_t i : selected) out.push_back(rows[i]);
    return out;
}

} // namespace credrep
