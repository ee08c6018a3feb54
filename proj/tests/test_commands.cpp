#include <doctest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "credrep/bundle.hpp"
#include "credrep/commands.hpp"
#include "credrep/corpus.hpp"
#include "credrep/embeddings.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace credrep;
using credrep::testing::TempDir;
using json = nlohmann::json;

namespace {

/// Writes every input file the train/score/evaluate commands need.
struct CommandFixture {
    TempDir dir;
    credrep::testing::SyntheticData data;

    explicit CommandFixture(std::size_t n_posts = 120, std::uint64_t seed = 33) {
        credrep::testing::SyntheticOptions options;
        options.n_posts = n_posts;
        options.dim = 16;
        options.seed = seed;
        data = credrep::testing::make_synthetic(options);

        save_corpus(data.corpus, dir.file("corpus.jsonl"));
        save_embeddings(data.store, dir.file("embeddings.txt"));

        std::ofstream lexicon(dir.file("lexicon.tsv"));
        for (const auto& [term, category] : data.lexicon.entries()) {
            lexicon << term << '\t' << to_string(category) << '\n';
        }
        std::ofstream wot(dir.file("wot.tsv"));
        for (const auto& [domain, score] : data.wot.entries) {
            wot << domain << '\t' << score * 100.0 << '\n';
        }
        std::ofstream annotations(dir.file("annotations.csv"));
        annotations << "post_id,annotator_id,label\n";
        for (const auto& labeled : data.labels) {
            for (int a = 0; a < 3; ++a) {
                annotations << labeled.post_id << ",a" << a << ','
                            << to_string(labeled.label) << '\n';
            }
        }
    }

    TrainOptions train_options() const {
        TrainOptions options;
        options.corpus = dir.file("corpus.jsonl");
        options.annotations = dir.file("annotations.csv");
        options.embeddings = dir.file("embeddings.txt");
        options.lexicon = dir.file("lexicon.tsv");
        options.wot = dir.file("wot.tsv");
        options.out_bundle = dir.file("bundle.json");
        options.seed = 9;
        options.epochs = 50;
        return options;
    }
};

} // namespace

TEST_CASE("run_train fits and persists a bundle deterministically") {
    CommandFixture fixture;
    TrainOptions options = fixture.train_options();
    CHECK(run_train(options) == kExitOk);
    const std::string first = fixture.dir.read("bundle.json");
    CHECK_FALSE(first.empty());

    options.out_bundle = fixture.dir.file("bundle2.json");
    CHECK(run_train(options) == kExitOk);
    CHECK(fixture.dir.read("bundle2.json") == first);  // same seed, same bytes
}

TEST_CASE("run_train fails cleanly on a missing input") {
    CommandFixture fixture;
    TrainOptions options = fixture.train_options();
    options.embeddings = fixture.dir.file("nope.txt");
    CHECK(run_train(options) == kExitTrain);
}

TEST_CASE("run_score emits one verdict per post and honors threshold overrides") {
    CommandFixture fixture;
    const TrainOptions train = fixture.train_options();
    REQUIRE(run_train(train) == kExitOk);

    ScoreOptions score;
    score.bundle = train.out_bundle;
    score.corpus = train.corpus;
    score.embeddings = train.embeddings;
    score.lexicon = train.lexicon;
    score.wot = train.wot;
    score.out = fixture.dir.file("verdicts.jsonl");
    REQUIRE(run_score(score) == kExitOk);

    std::istringstream verdicts(fixture.dir.read("verdicts.jsonl"));
    std::string line;
    std::size_t count = 0;
    std::vector<double> pfs;
    while (std::getline(verdicts, line)) {
        const json v = json::parse(line);
        CHECK(v.contains("post_id"));
        CHECK(v["pe"].get<double>() >= 0.0);
        CHECK(v["ps"].get<double>() >= 0.0);
        CHECK(v["pf"].get<double>() <= 1.0);
        CHECK(v.contains("s_c"));
        CHECK(v.contains("d_c"));
        CHECK(v.contains("d_i"));
        CHECK(v.contains("no_signal"));
        const bool credible = v["label"].get<std::string>() == "credible";
        CHECK(credible == (v["pf"].get<double>() > 0.6));
        pfs.push_back(v["pf"].get<double>());
        ++count;
    }
    CHECK(count == fixture.data.corpus.posts.size());

    // A threshold override moves labels, never Pf.
    score.threshold = 0.99;
    score.out = fixture.dir.file("verdicts2.jsonl");
    REQUIRE(run_score(score) == kExitOk);
    std::istringstream overridden(fixture.dir.read("verdicts2.jsonl"));
    std::size_t row = 0;
    while (std::getline(overridden, line)) {
        const json v = json::parse(line);
        CHECK(v["pf"].get<double>() == pfs[row]);
        const bool credible = v["label"].get<std::string>() == "credible";
        CHECK(credible == (v["pf"].get<double>() > 0.99));
        ++row;
    }
}

TEST_CASE("run_score rejects a lexicon that does not match the bundle") {
    CommandFixture fixture;
    const TrainOptions train = fixture.train_options();
    REQUIRE(run_train(train) == kExitOk);

    fixture.dir.write("other_lexicon.tsv", "rootkit\tmeans-of-attack\n");
    ScoreOptions score;
    score.bundle = train.out_bundle;
    score.corpus = train.corpus;
    score.embeddings = train.embeddings;
    score.lexicon = fixture.dir.file("other_lexicon.tsv");
    CHECK(run_score(score) == kExitScore);
}

TEST_CASE("run_score on an empty corpus writes empty output") {
    CommandFixture fixture;
    const TrainOptions train = fixture.train_options();
    REQUIRE(run_train(train) == kExitOk);

    Corpus empty;
    empty.snapshot_utc = fixture.data.corpus.snapshot_utc;
    save_corpus(empty, fixture.dir.file("empty.jsonl"));

    ScoreOptions score;
    score.bundle = train.out_bundle;
    score.corpus = fixture.dir.file("empty.jsonl");
    score.embeddings = train.embeddings;
    score.lexicon = train.lexicon;
    score.wot = train.wot;
    score.out = fixture.dir.file("empty_verdicts.jsonl");
    CHECK(run_score(score) == kExitOk);
    CHECK(fixture.dir.read("empty_verdicts.jsonl").empty());
}

TEST_CASE("run_evaluate writes the three-model report") {
    CommandFixture fixture(160, 44);
    const TrainOptions train = fixture.train_options();

    EvaluateOptions evaluate;
    evaluate.corpus = train.corpus;
    evaluate.annotations = train.annotations;
    evaluate.embeddings = train.embeddings;
    evaluate.lexicon = train.lexicon;
    evaluate.wot = train.wot;
    evaluate.out = fixture.dir.file("report.json");
    evaluate.k = 4;
    evaluate.seed = 9;
    evaluate.epochs = 50;
    REQUIRE(run_evaluate(evaluate) == kExitOk);

    const json report = json::parse(fixture.dir.read("report.json"));
    CHECK(report["folds"].size() == 4);
    for (const char* column : {"ensembled", "embedding", "svm"}) {
        CHECK(report["pooled"].contains(column));
        const auto& confusion = report["pooled"][column]["confusion"];
        const std::size_t total = confusion["tp"].get<std::size_t>() +
                                  confusion["fp"].get<std::size_t>() +
                                  confusion["fn"].get<std::size_t>() +
                                  confusion["tn"].get<std::size_t>();
        CHECK(total == fixture.data.labels.size());
    }
    CHECK(report["dataset"]["mean_pairwise_kappa"].get<double>() ==
          doctest::Approx(1.0));  // unanimous annotators
}

TEST_CASE("run_evaluate --balanced subsamples to twice the minority class") {
    credrep::testing::SyntheticOptions options;
    options.n_posts = 150;
    options.dim = 16;
    options.seed = 55;
    options.credible_fraction = 0.8;
    CommandFixture fixture(1, 1);  // replaced below
    fixture.data = credrep::testing::make_synthetic(options);
    save_corpus(fixture.data.corpus, fixture.dir.file("corpus.jsonl"));
    save_embeddings(fixture.data.store, fixture.dir.file("embeddings.txt"));
    {
        std::ofstream annotations(fixture.dir.file("annotations.csv"));
        annotations << "post_id,annotator_id,label\n";
        for (const auto& labeled : fixture.data.labels) {
            for (int a = 0; a < 3; ++a) {
                annotations << labeled.post_id << ",a" << a << ','
                            << to_string(labeled.label) << '\n';
            }
        }
        std::ofstream lexicon(fixture.dir.file("lexicon.tsv"));
        for (const auto& [term, category] : fixture.data.lexicon.entries()) {
            lexicon << term << '\t' << to_string(category) << '\n';
        }
    }

    std::size_t minority = 0;
    for (const auto& labeled : fixture.data.labels) {
        if (labeled.label == Label::non_credible) ++minority;
    }

    EvaluateOptions evaluate;
    evaluate.corpus = fixture.dir.file("corpus.jsonl");
    evaluate.annotations = fixture.dir.file("annotations.csv");
    evaluate.embeddings = fixture.dir.file("embeddings.txt");
    evaluate.lexicon = fixture.dir.file("lexicon.tsv");
    evaluate.out = fixture.dir.file("report.json");
    evaluate.k = 3;
    evaluate.epochs = 40;
    evaluate.balanced = true;
    REQUIRE(run_evaluate(evaluate) == kExitOk);

    const json report = json::parse(fixture.dir.read("report.json"));
    CHECK(report["dataset"]["evaluated_posts"].get<std::size_t>() == 2 * minority);
}

TEST_CASE("run_export_vectors writes a labeled CSV") {
    CommandFixture fixture;
    const TrainOptions train = fixture.train_options();
    REQUIRE(run_train(train) == kExitOk);

    ExportVectorsOptions export_options;
    export_options.bundle = train.out_bundle;
    export_options.corpus = train.corpus;
    export_options.embeddings = train.embeddings;
    export_options.lexicon = train.lexicon;
    export_options.annotations = train.annotations;
    export_options.out = fixture.dir.file("vectors.csv");
    REQUIRE(run_export_vectors(export_options) == kExitOk);

    std::istringstream csv(fixture.dir.read("vectors.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header.rfind("post_id,label,c0,", 0) == 0);
    std::size_t rows = 0;
    std::string line;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == fixture.data.corpus.posts.size());
}

TEST_CASE("run_ingest replays a fixture into a loadable corpus") {
    TempDir dir;
    const std::string listing =
        R"({"kind":"Listing","data":{"children":[{"kind":"t3","data":{)"
        R"("name":"t3_x1","subreddit":"netsec","title":"patch out","selftext":"",)"
        R"("url":"https://example.com/a","created_utc":1699999000,"ups":5,"downs":0,)"
        R"("score":5,"num_comments":1,"num_crossposts":0,"author":"alice",)"
        R"("author_fullname":"t2_u1"}},{"kind":"t3","data":{)"
        R"("name":"t3_x2","subreddit":"netsec","title":"rumor","selftext":"doubt",)"
        R"("created_utc":1699998000,"ups":1,"downs":0,"score":1,"num_comments":0,)"
        R"("num_crossposts":0,"author":"bob","author_fullname":"t2_u2"}}],"after":null}})";
    json fixture;
    fixture["now_utc"] = 1700000000;
    fixture["responses"]["/r/netsec/new.json?limit=10"] = json::array(
        {{{"status", 200}, {"body", json::parse(listing)}}});
    fixture["responses"]["/user/alice/about.json"] = json::array(
        {{{"status", 200},
          {"body",
           json::parse(R"({"kind":"t2","data":{"id":"u1","name":"alice",)"
                       R"("created_utc":1500000000,"link_karma":10,"comment_karma":20,)"
                       R"("has_verified_email":true,"verified":true,"is_mod":false}})")}}});
    fixture["responses"]["/user/bob/about.json"] = json::array(
        {{{"status", 200},
          {"body",
           json::parse(R"({"kind":"t2","data":{"id":"u2","name":"bob",)"
                       R"("created_utc":1600000000,"link_karma":1,"comment_karma":2,)"
                       R"("has_verified_email":false,"verified":false,"is_mod":false}})")}}});
    dir.write("fixture.json", fixture.dump());

    IngestOptions options;
    options.subreddits = {"netsec"};
    options.tabs = {"new"};
    options.limit = 10;
    options.fixture = dir.file("fixture.json");
    options.out = dir.file("corpus.jsonl");
    CHECK(run_ingest(options) == kExitOk);

    const Corpus corpus = load_corpus(dir.file("corpus.jsonl"));
    CHECK(corpus.posts.size() == 2);
    CHECK(corpus.snapshot_utc == 1700000000);
    CHECK(corpus.authors.at("t2_u1").name == "alice");
}

TEST_CASE("run_ingest with limit 0 emits an empty corpus") {
    TempDir dir;
    dir.write("fixture.json", R"({"now_utc": 1700000000, "responses": {}})");
    IngestOptions options;
    options.subreddits = {"netsec"};
    options.tabs = {"new"};
    options.limit = 0;
    options.fixture = dir.file("fixture.json");
    options.out = dir.file("corpus.jsonl");
    CHECK(run_ingest(options) == kExitOk);
    const Corpus corpus = load_corpus(dir.file("corpus.jsonl"));
    CHECK(corpus.posts.empty());
}

TEST_CASE("run_ingest surfaces transport failure as exit 2") {
    TempDir dir;
    dir.write("fixture.json", R"({"responses": {}})");  // every request fails
    IngestOptions options;
    options.subreddits = {"netsec"};
    options.tabs = {"new"};
    options.limit = 5;
    options.fixture = dir.file("fixture.json");
    CHECK(run_ingest(options) == kExitIngest);

    IngestOptions no_transport;
    no_transport.subreddits = {"netsec"};
    no_transport.tabs = {"new"};
    CHECK(run_ingest(no_transport, nullptr) == kExitIngest);
}
