#include "credrep/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "credrep/errors.hpp"
#include "credrep/rng.hpp"

namespace credrep {

namespace {

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

double parse_double(std::string_view text, const std::string& context) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(context + ": non-numeric component '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::string underscore_join(const std::string& term) {
    std::string out = term;
    std::replace(out.begin(), out.end(), ' ', '_');
    return out;
}

} // namespace

void EmbeddingStore::add(const std::string& token, std::vector<double> vector) {
    if (vector.size() != dim_) {
        throw ValidationError("embedding for '" + token + "' has dimension " +
                              std::to_string(vector.size()) + ", expected " +
                              std::to_string(dim_));
    }
    if (!vectors_.emplace(token, std::move(vector)).second) {
        throw ValidationError("duplicate embedding token '" + token + "'");
    }
}

const std::vector<double>* EmbeddingStore::find(const std::string& token) const {
    auto it = vectors_.find(token);
    return it == vectors_.end() ? nullptr : &it->second;
}

EmbeddingStore load_embeddings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open embeddings file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_spaces(line);
    if (header.size() != 2) throw ParseError(path + ":1: expected '<vocab> <dim>' header");
    std::size_t vocab = 0;
    std::size_t dim = 0;
    auto parse_size = [&](std::string_view text, std::size_t& out) {
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
        return ec == std::errc{} && ptr == text.data() + text.size();
    };
    if (!parse_size(header[0], vocab) || !parse_size(header[1], dim) || dim == 0) {
        throw ParseError(path + ":1: malformed header");
    }

    EmbeddingStore store(dim);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_spaces(line);
        const std::string context = path + ":" + std::to_string(line_no);
        if (fields.size() != dim + 1) {
            throw ParseError(context + ": row has " + std::to_string(fields.size() - 1) +
                             " components, expected " + std::to_string(dim));
        }
        std::vector<double> vec(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            vec[i] = parse_double(fields[i + 1], context);
        }
        try {
            store.add(std::string(fields[0]), std::move(vec));
        } catch (const ValidationError& e) {
            throw ParseError(context + ": " + e.what());
        }
    }
    if (store.size() != vocab) {
        throw ParseError(path + ": header declares " + std::to_string(vocab) +
                         " tokens but file has " + std::to_string(store.size()));
    }
    return store;
}

void save_embeddings(const EmbeddingStore& store, std::ostream& out) {
    out << store.size() << ' ' << store.dim() << '\n';
    for (const auto& [token, vec] : store.vectors()) {
        out << token;
        for (double v : vec) out << ' ' << format_double(v);
        out << '\n';
    }
}

void save_embeddings(const EmbeddingStore& store, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write embeddings file '" + path + "'");
    save_embeddings(store, out);
}

EmbeddingStore hash_embeddings(std::span<const std::string> vocab, std::size_t dim,
                               std::uint64_t seed) {
    if (dim == 0) throw ValidationError("hash_embeddings: dim must be >= 1");
    if (vocab.empty()) throw ValidationError("hash_embeddings: empty vocabulary");

    EmbeddingStore store(dim);
    for (const std::string& token : vocab) {
        std::uint64_t state = fnv1a64(token) ^ (0x9e3779b97f4a7c15ULL * (seed + 1));
        std::vector<double> vec(dim);
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < dim; i += 2) {
            double u1 = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
            if (u1 <= 0.0) u1 = 0x1.0p-53;
            const double u2 = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
            const double r = std::sqrt(-2.0 * std::log(u1));
            vec[i] = r * std::cos(2.0 * 3.141592653589793 * u2);
            if (i + 1 < dim) vec[i + 1] = r * std::sin(2.0 * 3.141592653589793 * u2);
        }
        for (double v : vec) norm_sq += v * v;
        const double norm = std::sqrt(norm_sq);
        if (norm > 0.0) {
            for (double& v : vec) v /= norm;
        } else {
            vec[0] = 1.0;
        }
        store.add(token, std::move(vec));
    }
    return store;
}

PostEmbedding post_vector(const Post& post, const ConceptLexicon& lexicon,
                          const EmbeddingStore& store, bool normalize) {
    PostEmbedding result;
    result.post_id = post.id;
    result.vector.assign(store.dim(), 0.0);

    const std::string text = post.title + "\n" + post.body;
    for (const ConceptMention& mention : extract_concepts(text, lexicon)) {
        bool contributed = false;
        if (const auto* vec = store.find(underscore_join(mention.term))) {
            for (std::size_t i = 0; i < vec->size(); ++i) result.vector[i] += (*vec)[i];
            contributed = true;
        } else if (mention.term.find(' ') != std::string::npos) {
            std::istringstream parts(mention.term);
            std::string constituent;
            while (parts >> constituent) {
                if (const auto* vec = store.find(constituent)) {
                    for (std::size_t i = 0; i < vec->size(); ++i) {
                        result.vector[i] += (*vec)[i];
                    }
                    contributed = true;
                }
            }
        }
        if (contributed) ++result.n_terms;
    }
    result.no_signal = result.n_terms == 0;

    if (normalize && !result.no_signal) {
        double norm_sq = 0.0;
        for (double v : result.vector) norm_sq += v * v;
        if (norm_sq > 0.0) {
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (double& v : result.vector) v *= inv;
        }
    }
    return result;
}

CentroidModel fit_centroids(std::span<const PostEmbedding> embeddings,
                            std::span<const Label> labels) {
    if (embeddings.size() != labels.size()) {
        throw ValidationError("fit_centroids: embeddings and labels differ in length");
    }
    std::size_t dim = 0;
    for (const auto& e : embeddings) {
        if (!e.vector.empty()) {
            dim = e.vector.size();
            break;
        }
    }
    CentroidModel model;
    model.credible_centroid.assign(dim, 0.0);
    model.non_credible_centroid.assign(dim, 0.0);
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        if (embeddings[i].no_signal) continue;
        if (embeddings[i].vector.size() != dim) {
            throw ValidationError("fit_centroids: inconsistent embedding dimension");
        }
        auto& centroid = labels[i] == Label::credible ? model.credible_centroid
                                                      : model.non_credible_centroid;
        auto& count = labels[i] == Label::credible ? model.n_credible
                                                   : model.n_non_credible;
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += embeddings[i].vector[d];
        ++count;
    }
    if (model.n_credible == 0 || model.n_non_credible == 0) {
        throw ValidationError("fit_centroids: a class has no usable (non-empty) vectors");
    }
    for (std::size_t d = 0; d < dim; ++d) {
        model.credible_centroid[d] /= static_cast<double>(model.n_credible);
        model.non_credible_centroid[d] /= static_cast<double>(model.n_non_credible);
    }
    return model;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("euclidean_distance: dimension mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double score_from_distances(double d_c, double d_i) {
    if (d_c < 0.0 || d_i < 0.0) {
        throw ValidationError("score_from_distances: distances must be non-negative");
    }
    if (d_c + d_i <= 0.0) return 0.5;
    return 1.0 - d_c / (d_c + d_i);
}

ScoreBreakdown reputation_score(const PostEmbedding& embedding,
                                const CentroidModel& centroids) {
    ScoreBreakdown breakdown;
    if (embedding.no_signal) {
        breakdown.neutral = true;
        return breakdown;
    }
    breakdown.d_c = euclidean_distance(embedding.vector, centroids.credible_centroid);
    breakdown.d_i = euclidean_distance(embedding.vector, centroids.non_credible_centroid);
    breakdown.s_c = score_from_distances(breakdown.d_c, breakdown.d_i);
    breakdown.pe = breakdown.s_c;
    breakdown.neutral = breakdown.d_c + breakdown.d_i <= 0.0;
    return breakdown;
}

void export_vectors(std::span<const PostEmbedding> embeddings,
                    const std::map<std::string, Label>* labels, std::ostream& out) {
    const std::size_t dim = embeddings.empty() ? 0 : embeddings.front().vector.size();
    out << "post_id";
    if (labels) out << ",label";
    for (std::size_t d = 0; d < dim; ++d) out << ",c" << d;
    out << '\n';
    for (const auto& e : embeddings) {
        out << e.post_id;
        if (labels) {
            auto it = labels->find(e.post_id);
            out << ',' << (it != labels->end() ? to_string(it->second) : "");
        }
        for (double v : e.vector) out << ',' << format_double(v);
        out << '\n';
    }
}

} // namespace credrep
