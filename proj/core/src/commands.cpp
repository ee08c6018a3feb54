#include "credrep/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "credrep/annotation.hpp"
#include "credrep/bundle.hpp"
#include "credrep/corpus.hpp"
#include "credrep/embeddings.hpp"
#include "credrep/errors.hpp"
#include "credrep/pipeline.hpp"
#include "credrep/svce.hpp"

namespace credrep {

using json = nlohmann::ordered_json;

namespace {

void emit(const std::optional<std::string>& out, const std::string& content) {
    if (out) {
        write_file_atomic(*out, content);
    } else {
        std::cout << content;
    }
}

ConceptLexicon load_lexicon_or_default(const std::optional<std::string>& path) {
    return path ? load_lexicon(*path) : default_lexicon();
}

WotTable load_wot_or_default(const std::optional<std::string>& path) {
    return path ? load_wot_table(*path) : WotTable{};
}

json metrics_to_json(const ModelColumn& column) {
    json confusion;
    confusion["tp"] = column.confusion.tp;
    confusion["fp"] = column.confusion.fp;
    confusion["fn"] = column.confusion.fn;
    confusion["tn"] = column.confusion.tn;
    json metrics;
    metrics["accuracy"] = column.metrics.accuracy;
    metrics["precision"] = column.metrics.precision;
    metrics["recall"] = column.metrics.recall;
    metrics["tnr"] = column.metrics.tnr;
    metrics["fpr"] = column.metrics.fpr;
    metrics["f1"] = column.metrics.f1;
    metrics["degenerate"] = column.metrics.degenerate;
    json out;
    out["confusion"] = confusion;
    out["metrics"] = metrics;
    return out;
}

std::string verdict_to_jsonl(const Verdict& verdict) {
    json j;
    j["post_id"] = verdict.post_id;
    j["pe"] = verdict.pe;
    j["ps"] = verdict.ps;
    j["pf"] = verdict.pf;
    j["s_c"] = verdict.s_c;
    j["d_c"] = verdict.d_c;
    j["d_i"] = verdict.d_i;
    j["label"] = to_string(verdict.label);
    j["no_signal"] = verdict.no_signal;
    return j.dump() + "\n";
}

struct FixtureData {
    FixtureTransport transport;
    std::optional<std::int64_t> now_utc;
};

FixtureData load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open fixture file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": invalid JSON: " + std::string(e.what()));
    }
    FixtureData data;
    if (j.contains("now_utc")) data.now_utc = j["now_utc"].get<std::int64_t>();
    if (!j.contains("responses") || !j["responses"].is_object()) {
        throw ParseError(path + ": missing 'responses' object");
    }
    for (const auto& [request_path, responses] : j["responses"].items()) {
        if (!responses.is_array()) {
            throw ParseError(path + ": responses for '" + request_path +
                             "' must be an array");
        }
        for (const auto& r : responses) {
            HttpResponse resp;
            resp.status = r.value("status", 200);
            if (r.contains("body")) {
                resp.body = r["body"].is_string() ? r["body"].get<std::string>()
                                                  : r["body"].dump();
            }
            if (r.contains("retry_after_seconds")) {
                resp.retry_after_seconds = r["retry_after_seconds"].get<double>();
            }
            data.transport.record(request_path, std::move(resp));
        }
    }
    return data;
}

struct LoadedInputs {
    Corpus corpus;
    ConceptLexicon lexicon;
    WotTable wot;
    EmbeddingStore store;
};

} // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + temp.string() + "'");
        out << content;
        if (!out.flush()) throw Error("short write to '" + temp.string() + "'");
    }
    std::filesystem::rename(temp, target);
}

int run_ingest(const IngestOptions& options, HttpTransport* transport) {
    try {
        std::vector<ListingTab> tabs;
        for (const std::string& name : options.tabs) {
            auto tab = parse_tab(name);
            if (!tab) throw ValidationError("unknown tab '" + name + "'");
            tabs.push_back(*tab);
        }

        std::optional<FixtureData> fixture;
        RedditClient::Clock clock;
        RedditClient::Sleeper sleeper;
        if (options.fixture) {
            fixture = load_fixture(*options.fixture);
            transport = &fixture->transport;
            if (fixture->now_utc) {
                clock = [t = *fixture->now_utc] { return t; };
            }
            sleeper = [](std::chrono::milliseconds) {};  // replay without waiting
        }
        if (!transport) {
            throw TransportError("no transport available (missing API token?)");
        }

        RedditClient client(*transport, RetryPolicy{}, clock, sleeper);
        const Corpus corpus = client.fetch_live(options.subreddits, tabs, options.limit);

        std::ostringstream buffer;
        save_corpus(corpus, buffer);
        emit(options.out, buffer.str());
        std::cerr << "ingested " << corpus.posts.size() << " posts from "
                  << corpus.authors.size() << " authors\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "ingest failed: " << e.what() << "\n";
        return kExitIngest;
    }
}

int run_train(const TrainOptions& options) {
    try {
        const Corpus corpus = load_corpus(options.corpus);
        const std::vector<AnnotationRecord> records = load_annotations(options.annotations);
        const AggregationResult aggregated =
            aggregate_annotations(records, options.min_agreement);
        if (aggregated.kept.empty()) {
            throw ValidationError("no posts survive the agreement cut");
        }
        const DatasetStats stats = dataset_stats(aggregated.kept);
        const KappaReport kappa = mean_pairwise_kappa(records);
        std::cerr << "annotations: kept " << aggregated.kept.size() << " ("
                  << stats.credible << " credible / " << stats.non_credible
                  << " non-credible), dropped " << aggregated.dropped.size()
                  << ", mean pairwise kappa " << kappa.mean << "\n";

        const ConceptLexicon lexicon = load_lexicon_or_default(options.lexicon);
        const WotTable wot = load_wot_or_default(options.wot);
        const EmbeddingStore store = load_embeddings(options.embeddings);

        const std::vector<TrainingRow> rows = build_rows(
            corpus, aggregated.kept, lexicon, store, wot, options.normalize_vectors);

        PipelineConfig config;
        config.lambda = options.lambda;
        config.epochs = options.epochs;
        config.seed = options.seed;
        config.threshold = options.threshold;
        config.normalize_vectors = options.normalize_vectors;
        config.stacked_features = options.stacked_features;

        ModelBundle bundle;
        bundle.pipeline = fit_pipeline(rows, config);
        bundle.embedding_dim = store.dim();
        bundle.lexicon_fingerprint = lexicon.fingerprint();
        bundle.snapshot_utc = corpus.snapshot_utc;
        save_bundle(bundle, options.out_bundle);

        std::cerr << "trained on " << rows.size() << " posts; We=" << bundle.pipeline.weights.we
                  << " Ws=" << bundle.pipeline.weights.ws << "; bundle written to "
                  << options.out_bundle << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "train failed: " << e.what() << "\n";
        return kExitTrain;
    }
}

int run_score(const ScoreOptions& options) {
    try {
        ModelBundle bundle = load_bundle(options.bundle);
        const Corpus corpus = load_corpus(options.corpus);
        const ConceptLexicon lexicon = load_lexicon_or_default(options.lexicon);
        const WotTable wot = load_wot_or_default(options.wot);
        const EmbeddingStore store = load_embeddings(options.embeddings);

        if (store.dim() != bundle.embedding_dim) {
            throw ValidationError("embedding dimension " + std::to_string(store.dim()) +
                                  " does not match the bundle's " +
                                  std::to_string(bundle.embedding_dim));
        }
        if (lexicon.fingerprint() != bundle.lexicon_fingerprint) {
            throw ValidationError("lexicon fingerprint does not match the bundle; score "
                                  "with the lexicon used at training time");
        }
        if (options.threshold) {
            if (!(*options.threshold > 0.0) || !(*options.threshold < 1.0)) {
                throw ValidationError("threshold override must be inside (0,1)");
            }
            bundle.pipeline.threshold = *options.threshold;  // labels move, Pf does not
        }

        std::ostringstream buffer;
        for (const Post& post : corpus.posts) {
            const Verdict verdict =
                score_post(post, corpus.author_of(post), bundle.pipeline, lexicon, store,
                           wot, corpus.snapshot_utc);
            buffer << verdict_to_jsonl(verdict);
        }
        emit(options.out, buffer.str());
        std::cerr << "scored " << corpus.posts.size() << " posts\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "score failed: " << e.what() << "\n";
        return kExitScore;
    }
}

int run_evaluate(const EvaluateOptions& options) {
    try {
        const Corpus corpus = load_corpus(options.corpus);
        const std::vector<AnnotationRecord> records = load_annotations(options.annotations);
        const AggregationResult aggregated =
            aggregate_annotations(records, options.min_agreement);
        const KappaReport kappa = mean_pairwise_kappa(records);

        const ConceptLexicon lexicon = load_lexicon_or_default(options.lexicon);
        const WotTable wot = load_wot_or_default(options.wot);
        const EmbeddingStore store = load_embeddings(options.embeddings);

        std::vector<TrainingRow> rows = build_rows(
            corpus, aggregated.kept, lexicon, store, wot, options.normalize_vectors);
        if (options.balanced) {
            rows = balanced_subsample(rows, options.seed);
        }

        PipelineConfig config;
        config.lambda = options.lambda;
        config.epochs = options.epochs;
        config.seed = options.seed;
        config.threshold = options.threshold;
        config.normalize_vectors = options.normalize_vectors;
        config.stacked_features = options.stacked_features;

        const CrossValidationReport report = cross_validate(rows, options.k, config);

        json j;
        json config_json;
        config_json["k"] = options.k;
        config_json["seed"] = options.seed;
        config_json["lambda"] = options.lambda;
        config_json["epochs"] = options.epochs;
        config_json["threshold"] = options.threshold;
        config_json["min_agreement"] = options.min_agreement;
        config_json["balanced"] = options.balanced;
        config_json["normalize_vectors"] = options.normalize_vectors;
        config_json["stacked_features"] = options.stacked_features;
        j["config"] = config_json;

        const DatasetStats stats = dataset_stats(aggregated.kept);
        json dataset;
        dataset["evaluated_posts"] = rows.size();
        dataset["kept"] = aggregated.kept.size();
        dataset["dropped"] = aggregated.dropped.size();
        dataset["credible"] = stats.credible;
        dataset["non_credible"] = stats.non_credible;
        dataset["mean_pairwise_kappa"] = kappa.mean;
        j["dataset"] = dataset;

        j["warnings"] = report.warnings;

        json folds = json::array();
        for (const FoldReport& fold : report.folds) {
            json f;
            f["fold"] = fold.fold;
            f["ensembled"] = metrics_to_json(fold.ensembled);
            f["embedding"] = metrics_to_json(fold.embedding);
            f["svm"] = metrics_to_json(fold.svm);
            folds.push_back(std::move(f));
        }
        j["folds"] = folds;

        json pooled;
        pooled["ensembled"] = metrics_to_json(report.ensembled);
        pooled["embedding"] = metrics_to_json(report.embedding);
        pooled["svm"] = metrics_to_json(report.svm);
        j["pooled"] = pooled;

        emit(options.out, j.dump(2) + "\n");
        std::cerr << "evaluated " << rows.size() << " posts over " << options.k
                  << " folds; pooled ensemble accuracy "
                  << report.ensembled.metrics.accuracy << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "evaluate failed: " << e.what() << "\n";
        return kExitTrain;
    }
}

int run_export_vectors(const ExportVectorsOptions& options) {
    try {
        const ModelBundle bundle = load_bundle(options.bundle);
        const Corpus corpus = load_corpus(options.corpus);
        const ConceptLexicon lexicon = load_lexicon_or_default(options.lexicon);
        const EmbeddingStore store = load_embeddings(options.embeddings);
        if (store.dim() != bundle.embedding_dim) {
            throw ValidationError("embedding dimension " + std::to_string(store.dim()) +
                                  " does not match the bundle's " +
                                  std::to_string(bundle.embedding_dim));
        }

        std::optional<std::map<std::string, Label>> labels;
        if (options.annotations) {
            const AggregationResult aggregated =
                aggregate_annotations(load_annotations(*options.annotations));
            labels.emplace();
            for (const LabeledPost& post : aggregated.kept) {
                labels->emplace(post.post_id, post.label);
            }
        }

        std::vector<PostEmbedding> embeddings;
        embeddings.reserve(corpus.posts.size());
        for (const Post& post : corpus.posts) {
            embeddings.push_back(post_vector(post, lexicon, store,
                                             bundle.pipeline.config.normalize_vectors));
        }

        std::ostringstream buffer;
        export_vectors(embeddings, labels ? &*labels : nullptr, buffer);
        emit(options.out, buffer.str());
        std::cerr << "exported " << embeddings.size() << " vectors\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "export-vectors failed: " << e.what() << "\n";
        return kExitScore;
    }
}

} // namespace credrep
