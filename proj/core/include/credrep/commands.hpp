#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "credrep/reddit_client.hpp"

namespace credrep {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIngest = 2;
inline constexpr int kExitTrain = 3;
inline constexpr int kExitScore = 4;

struct IngestOptions {
    std::vector<std::string> subreddits;
    std::vector<std::string> tabs;
    std::size_t limit = 100;
    std::optional<std::string> out;      // stdout when absent
    std::optional<std::string> fixture;  // replay transcript instead of live HTTP
};

struct TrainOptions {
    std::string corpus;
    std::string annotations;
    std::string embeddings;
    std::optional<std::string> lexicon;  // built-in default when absent
    std::optional<std::string> wot;
    std::string out_bundle;
    std::uint64_t seed = 0;
    double lambda = 1e-4;
    int epochs = 200;
    double threshold = 0.6;
    double min_agreement = 0.66;
    bool normalize_vectors = false;
    bool stacked_features = false;
};

struct ScoreOptions {
    std::string bundle;
    std::string corpus;
    std::string embeddings;
    std::optional<std::string> lexicon;
    std::optional<std::string> wot;
    std::optional<std::string> out;
    std::optional<double> threshold;  // overrides the bundle threshold
};

struct EvaluateOptions {
    std::string corpus;
    std::string annotations;
    std::string embeddings;
    std::optional<std::string> lexicon;
    std::optional<std::string> wot;
    std::optional<std::string> out;
    std::size_t k = 10;
    std::uint64_t seed = 0;
    double lambda = 1e-4;
    int epochs = 200;
    double threshold = 0.6;
    double min_agreement = 0.66;
    bool balanced = false;
    bool normalize_vectors = false;
    bool stacked_features = false;
};

struct ExportVectorsOptions {
    std::string bundle;
    std::string corpus;
    std::string embeddings;
    std::optional<std::string> lexicon;
    std::optional<std::string> annotations;  // adds a label column
    std::optional<std::string> out;
};

// Each command returns its exit code; diagnostics go to stderr, data to
// --out or stdout. Output files are written atomically (temp + rename).
int run_ingest(const IngestOptions& options, HttpTransport* transport = nullptr);
int run_train(const TrainOptions& options);
int run_score(const ScoreOptions& options);
int run_evaluate(const EvaluateOptions& options);
int run_export_vectors(const ExportVectorsOptions& options);

/// Writes `content` to `path` via a temp file in the same directory.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace credrep
