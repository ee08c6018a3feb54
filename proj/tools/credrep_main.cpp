#include <cstdlib>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "credrep/commands.hpp"
#include "reddit_http_transport.hpp"

namespace {

constexpr const char* kTokenEnvVar = "CREDREP_API_TOKEN";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"credrep: credibility and reputation scoring for threat-intel posts"};
    app.require_subcommand(1);

    credrep::IngestOptions ingest;
    std::string ingest_out;
    std::string ingest_fixture;
    auto* cmd_ingest = app.add_subcommand("ingest", "Fetch posts into a corpus JSONL file");
    cmd_ingest->add_option("--subreddits", ingest.subreddits, "Subreddits to fetch")
        ->required()
        ->delimiter(',');
    cmd_ingest
        ->add_option("--tabs", ingest.tabs, "Listing tabs: hot,new,controversial,gilded,top")
        ->required()
        ->delimiter(',')
        ->check(CLI::IsMember({"hot", "new", "controversial", "gilded", "top"}));
    cmd_ingest->add_option("--limit", ingest.limit, "Max submissions per (subreddit, tab)");
    cmd_ingest->add_option("--out", ingest_out, "Output corpus path (stdout when absent)");
    cmd_ingest->add_option("--fixture", ingest_fixture,
                           "Replay a recorded transcript instead of live HTTP");

    credrep::TrainOptions train;
    std::string train_lexicon;
    std::string train_wot;
    auto* cmd_train = app.add_subcommand("train", "Fit a model bundle from a labeled corpus");
    cmd_train->add_option("--corpus", train.corpus, "Corpus JSONL")->required();
    cmd_train->add_option("--annotations", train.annotations, "Annotation CSV")->required();
    cmd_train->add_option("--embeddings", train.embeddings, "word2vec text embeddings")
        ->required();
    cmd_train->add_option("--lexicon", train_lexicon, "Concept lexicon TSV (built-in default)");
    cmd_train->add_option("--wot", train_wot, "WOT TSV (neutral default when absent)");
    cmd_train->add_option("--out-bundle", train.out_bundle, "Bundle output path")->required();
    cmd_train->add_option("--seed", train.seed, "Training seed");
    cmd_train->add_option("--lambda", train.lambda, "SVM regularization strength");
    cmd_train->add_option("--epochs", train.epochs, "SVM epochs");
    cmd_train->add_option("--threshold", train.threshold, "Credible threshold on Pf");
    cmd_train->add_option("--min-agreement", train.min_agreement,
                          "Annotation agreement cut");
    cmd_train->add_flag("--normalize-vectors", train.normalize_vectors,
                        "Unit-normalize post vectors");
    cmd_train->add_flag("--stacked", train.stacked_features,
                        "Append the embedding prediction to the SVM features");

    credrep::ScoreOptions score;
    std::string score_lexicon;
    std::string score_wot;
    std::string score_out;
    double score_threshold = -1.0;
    auto* cmd_score = app.add_subcommand("score", "Score a corpus with a trained bundle");
    cmd_score->add_option("--bundle", score.bundle, "Model bundle JSON")->required();
    cmd_score->add_option("--corpus", score.corpus, "Corpus JSONL")->required();
    cmd_score->add_option("--embeddings", score.embeddings, "word2vec text embeddings")
        ->required();
    cmd_score->add_option("--lexicon", score_lexicon, "Concept lexicon TSV");
    cmd_score->add_option("--wot", score_wot, "WOT TSV");
    cmd_score->add_option("--out", score_out, "Verdict JSONL path (stdout when absent)");
    cmd_score->add_option("--threshold", score_threshold,
                          "Override the bundle's credible threshold");

    credrep::EvaluateOptions evaluate;
    std::string evaluate_lexicon;
    std::string evaluate_wot;
    std::string evaluate_out;
    auto* cmd_evaluate =
        app.add_subcommand("evaluate", "Cross-validate the pipeline on a labeled corpus");
    cmd_evaluate->add_option("--corpus", evaluate.corpus, "Corpus JSONL")->required();
    cmd_evaluate->add_option("--annotations", evaluate.annotations, "Annotation CSV")
        ->required();
    cmd_evaluate->add_option("--embeddings", evaluate.embeddings, "word2vec text embeddings")
        ->required();
    cmd_evaluate->add_option("--lexicon", evaluate_lexicon, "Concept lexicon TSV");
    cmd_evaluate->add_option("--wot", evaluate_wot, "WOT TSV");
    cmd_evaluate->add_option("--out", evaluate_out, "Report JSON path (stdout when absent)");
    cmd_evaluate->add_option("--k", evaluate.k, "Number of folds");
    cmd_evaluate->add_option("--seed", evaluate.seed, "Fold/training seed");
    cmd_evaluate->add_option("--lambda", evaluate.lambda, "SVM regularization strength");
    cmd_evaluate->add_option("--epochs", evaluate.epochs, "SVM epochs");
    cmd_evaluate->add_option("--threshold", evaluate.threshold, "Credible threshold on Pf");
    cmd_evaluate->add_option("--min-agreement", evaluate.min_agreement,
                             "Annotation agreement cut");
    cmd_evaluate->add_flag("--balanced", evaluate.balanced,
                           "Evaluate on a seeded balanced subsample");
    cmd_evaluate->add_flag("--normalize-vectors", evaluate.normalize_vectors,
                           "Unit-normalize post vectors");
    cmd_evaluate->add_flag("--stacked", evaluate.stacked_features,
                           "Append the embedding prediction to the SVM features");

    credrep::ExportVectorsOptions export_vectors;
    std::string export_lexicon;
    std::string export_annotations;
    std::string export_out;
    auto* cmd_export =
        app.add_subcommand("export-vectors", "Dump post vectors as CSV for projection");
    cmd_export->add_option("--bundle", export_vectors.bundle, "Model bundle JSON")->required();
    cmd_export->add_option("--corpus", export_vectors.corpus, "Corpus JSONL")->required();
    cmd_export->add_option("--embeddings", export_vectors.embeddings,
                           "word2vec text embeddings")
        ->required();
    cmd_export->add_option("--lexicon", export_lexicon, "Concept lexicon TSV");
    cmd_export->add_option("--annotations", export_annotations,
                           "Annotation CSV for the label column");
    cmd_export->add_option("--out", export_out, "CSV path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return credrep::kExitUsage;
    }

    if (cmd_ingest->parsed()) {
        if (!ingest_out.empty()) ingest.out = ingest_out;
        if (!ingest_fixture.empty()) ingest.fixture = ingest_fixture;
        std::unique_ptr<credrep::RedditHttpTransport> live;
        if (!ingest.fixture) {
            const char* token = std::getenv(kTokenEnvVar);
            if (token == nullptr || *token == '\0') {
                std::cerr << "ingest failed: " << kTokenEnvVar << " is not set\n";
                return credrep::kExitIngest;
            }
            live = std::make_unique<credrep::RedditHttpTransport>("https://oauth.reddit.com",
                                                                  token);
        }
        return credrep::run_ingest(ingest, live.get());
    }
    if (cmd_train->parsed()) {
        if (!train_lexicon.empty()) train.lexicon = train_lexicon;
        if (!train_wot.empty()) train.wot = train_wot;
        return credrep::run_train(train);
    }
    if (cmd_score->parsed()) {
        if (!score_lexicon.empty()) score.lexicon = score_lexicon;
        if (!score_wot.empty()) score.wot = score_wot;
        if (!score_out.empty()) score.out = score_out;
        if (score_threshold >= 0.0) score.threshold = score_threshold;
        return credrep::run_score(score);
    }
    if (cmd_evaluate->parsed()) {
        if (!evaluate_lexicon.empty()) evaluate.lexicon = evaluate_lexicon;
        if (!evaluate_wot.empty()) evaluate.wot = evaluate_wot;
        if (!evaluate_out.empty()) evaluate.out = evaluate_out;
        return credrep::run_evaluate(evaluate);
    }
    if (cmd_export->parsed()) {
        if (!export_lexicon.empty()) export_vectors.lexicon = export_lexicon;
        if (!export_annotations.empty()) export_vectors.annotations = export_annotations;
        if (!export_out.empty()) export_vectors.out = export_out;
        return credrep::run_export_vectors(export_vectors);
    }
    return credrep::kExitUsage;
}
