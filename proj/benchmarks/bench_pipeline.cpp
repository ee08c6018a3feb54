#include <benchmark/benchmark.h>

#include "credrep/embeddings.hpp"
#include "credrep/evaluation.hpp"
#include "credrep/pipeline.hpp"
#include "credrep/svce.hpp"
#include "credrep/svm.hpp"
#include "synthetic.hpp"

using namespace credrep;

namespace {

const std::string kSample =
    "Ransomware crew exploits a buffer overflow in Apache 2.4.49 running on "
    "Windows Server; dropper.exe phones home over https before lateral movement. "
    "Patch and rotate credentials, watch for data exfiltration via dns tunnels.";

void BM_ExtractConcepts(benchmark::State& state) {
    const ConceptLexicon& lexicon = default_lexicon();
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_concepts(kSample, lexicon));
    }
}
BENCHMARK(BM_ExtractConcepts);

void BM_PostVector(benchmark::State& state) {
    credrep::testing::SyntheticOptions options;
    options.n_posts = 2;
    options.dim = static_cast<std::size_t>(state.range(0));
    const auto data = credrep::testing::make_synthetic(options);
    const Post& post = data.corpus.posts.front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(post_vector(post, data.lexicon, data.store));
    }
}
BENCHMARK(BM_PostVector)->Arg(50)->Arg(100)->Arg(300);

void BM_TrainSvm(benchmark::State& state) {
    const auto blobs = credrep::testing::make_blobs(
        static_cast<std::size_t>(state.range(0)), 7);
    SvmConfig config;
    config.epochs = 50;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_svm(blobs.X, blobs.y, config));
    }
}
BENCHMARK(BM_TrainSvm)->Arg(100)->Arg(1000);

void BM_ReputationScore(benchmark::State& state) {
    credrep::testing::SyntheticOptions options;
    options.n_posts = 40;
    options.dim = 100;
    const auto data = credrep::testing::make_synthetic(options);
    const auto rows =
        build_rows(data.corpus, data.labels, data.lexicon, data.store, data.wot, false);
    std::vector<PostEmbedding> embeddings;
    std::vector<Label> labels;
    for (const auto& row : rows) {
        embeddings.push_back(row.embedding);
        labels.push_back(row.label);
    }
    const CentroidModel centroids = fit_centroids(embeddings, labels);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reputation_score(embeddings.front(), centroids));
    }
}
BENCHMARK(BM_ReputationScore);

void BM_CrossValidate(benchmark::State& state) {
    credrep::testing::SyntheticOptions options;
    options.n_posts = static_cast<std::size_t>(state.range(0));
    options.dim = 32;
    const auto data = credrep::testing::make_synthetic(options);
    const auto rows =
        build_rows(data.corpus, data.labels, data.lexicon, data.store, data.wot, false);
    PipelineConfig config;
    config.epochs = 50;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cross_validate(rows, 5, config));
    }
}
BENCHMARK(BM_CrossValidate)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
