#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "credrep/annotation.hpp"
#include "credrep/corpus.hpp"
#include "credrep/embeddings.hpp"
#include "credrep/ensemble.hpp"
#include "credrep/evaluation.hpp"
#include "credrep/features.hpp"
#include "credrep/svce.hpp"
#include "credrep/svm.hpp"

namespace credrep {

struct PipelineConfig {
    double lambda = 1e-4;
    int epochs = 200;
    std::uint64_t seed = 0;
    double threshold = 0.6;
    bool normalize_vectors = false;
    /// Append the embedding prediction to the SVM feature vector.
    bool stacked_features = false;
    /// Internal folds for out-of-fold calibration and weight learning.
    int calibration_folds = 5;
    bool class_weighted = true;
};

/// One labeled post with everything the models consume.
struct TrainingRow {
    std::string post_id;
    std::vector<double> features;  // raw, feature_schema() order
    PostEmbedding embedding;
    Label label = Label::credible;
};

/// Raw features and embeddings for every labeled post. Throws ValidationError
/// when a labeled post is missing from the corpus.
std::vector<TrainingRow> build_rows(const Corpus& corpus,
                                    std::span<const LabeledPost> labels,
                                    const ConceptLexicon& lexicon,
                                    const EmbeddingStore& store, const WotTable& wot,
                                    bool normalize_vectors);

/// Every fitted parameter needed to score a post.
struct FittedPipeline {
    std::vector<std::string> feature_schema;
    Standardizer standardizer;
    LinearSvmModel svm;
    PlattCalibration platt;
    CentroidModel centroids;
    EnsembleWeights weights;
    double threshold = 0.6;
    PipelineConfig config;
    bool in_sample_calibration = false;  // fallback for very small datasets
};

/// Fits centroids, standardizer, SVM, calibration, and ensemble weights on
/// the given rows only. Calibration and weights come from out-of-fold
/// predictions inside the rows; datasets too small for internal folds fall
/// back to in-sample calibration.
FittedPipeline fit_pipeline(std::span<const TrainingRow> rows,
                            const PipelineConfig& config);

struct RowScore {
    double pe = 0.5;
    double ps = 0.5;
    double pf = 0.5;
    ScoreBreakdown breakdown;
};

/// Scores one row's features/embedding against a fitted pipeline.
RowScore score_row(const FittedPipeline& pipeline, std::span<const double> raw_features,
                   const PostEmbedding& embedding);

/// Full verdict for a corpus post.
Verdict score_post(const Post& post, const AuthorProfile& author,
                   const FittedPipeline& pipeline, const ConceptLexicon& lexicon,
                   const EmbeddingStore& store, const WotTable& wot,
                   std::int64_t snapshot_utc);

struct ModelColumn {
    ConfusionMatrix confusion;
    MetricsReport metrics;
};

struct FoldReport {
    std::size_t fold = 0;
    ModelColumn ensembled;
    ModelColumn embedding;
    ModelColumn svm;
};

struct CrossValidationReport {
    std::vector<FoldReport> folds;
    ModelColumn ensembled;  // pooled confusion counts
    ModelColumn embedding;
    ModelColumn svm;
    std::vector<std::string> warnings;
};

/// Stratified k-fold cross-validation. Each fold fits every parameter on the
/// training portion only; held-out posts are scored and confusion counts
/// pooled. The ensembled column thresholds Pf at config.threshold; the
/// single-model columns threshold Pe and Ps at 0.5.
CrossValidationReport cross_validate(std::span<const TrainingRow> rows, std::size_t k,
                                     const PipelineConfig& config);

/// Seeded balanced subsample: every minority-class row plus an equal-size
/// random draw of the majority class.
std::vector<TrainingRow> balanced_subsample(std::span<const TrainingRow> rows,
                                            std::uint64_t seed);

} // namespace credrep
