#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "credrep/annotation.hpp"
#include "credrep/corpus.hpp"
#include "credrep/svce.hpp"

namespace credrep {

/// Token -> dense vector map with a fixed dimension.
class EmbeddingStore {
public:
    EmbeddingStore() = default;
    explicit EmbeddingStore(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }

    /// Throws ValidationError on dimension mismatch or duplicate token.
    void add(const std::string& token, std::vector<double> vector);

    const std::vector<double>* find(const std::string& token) const;
    const std::map<std::string, std::vector<double>>& vectors() const { return vectors_; }

    bool operator==(const EmbeddingStore&) const = default;

private:
    std::size_t dim_ = 0;
    std::map<std::string, std::vector<double>> vectors_;
};

/// Reads word2vec text format: header `<vocab> <dim>`, then one
/// `<token> <c1> ... <c_dim>` row per line.
EmbeddingStore load_embeddings(const std::string& path);

/// Writes word2vec text format with shortest round-trip float formatting, so
/// save -> load -> save is byte-identical.
void save_embeddings(const EmbeddingStore& store, std::ostream& out);
void save_embeddings(const EmbeddingStore& store, const std::string& path);

/// Deterministic unit-norm vectors derived from a seeded hash of each token.
/// Stands in for unavailable pretrained models in tests and experiments.
EmbeddingStore hash_embeddings(std::span<const std::string> vocab, std::size_t dim,
                               std::uint64_t seed);

/// Sum of concept-term vectors found in a post.
struct PostEmbedding {
    std::string post_id;
    std::vector<double> vector;
    std::size_t n_terms = 0;   // occurrences that contributed at least one vector
    bool no_signal = false;    // true iff n_terms == 0
};

/// Concatenates title and body, extracts concepts, and sums the embedding of
/// every mention found in the store (multiplicity counts). Multi-word terms
/// use the underscore-joined store entry when present, else the sum of
/// in-vocabulary constituent tokens. Terms outside the lexicon contribute
/// nothing. With normalize set, a non-zero result is scaled to unit norm.
PostEmbedding post_vector(const Post& post, const ConceptLexicon& lexicon,
                          const EmbeddingStore& store, bool normalize = false);

/// Per-class mean vectors of labeled post embeddings.
struct CentroidModel {
    std::vector<double> credible_centroid;
    std::vector<double> non_credible_centroid;
    std::size_t n_credible = 0;
    std::size_t n_non_credible = 0;
};

/// Component-wise mean per class; no_signal embeddings are excluded. Throws
/// ValidationError when a class has no usable vectors.
CentroidModel fit_centroids(std::span<const PostEmbedding> embeddings,
                            std::span<const Label> labels);

struct ScoreBreakdown {
    double d_c = 0.0;   // Euclidean distance to the credible centroid
    double d_i = 0.0;   // Euclidean distance to the non-credible centroid
    double s_c = 0.5;   // 1 - d_c / (d_c + d_i)
    double pe = 0.5;    // embedding-model prediction; equals s_c
    bool neutral = false;  // no_signal post or coincident distances
};

/// The distance-to-score kernel. d_c == d_i == 0 scores a neutral 0.5.
double score_from_distances(double d_c, double d_i);

/// Distances to both centroids plus the reputation score. no_signal inputs
/// score a neutral 0.5. Throws ValidationError on dimension mismatch.
ScoreBreakdown reputation_score(const PostEmbedding& embedding,
                                const CentroidModel& centroids);

/// CSV export of post vectors: post_id, optional label, then one column per
/// component, formatted so a parse recovers the vectors exactly.
void export_vectors(std::span<const PostEmbedding> embeddings,
                    const std::map<std::string, Label>* labels, std::ostream& out);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

} // namespace credrep
