// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Each criterion pins its tolerance in code.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "credrep/annotation.hpp"
#include "credrep/bundle.hpp"
#include "credrep/commands.hpp"
#include "credrep/corpus.hpp"
#include "credrep/embeddings.hpp"
#include "credrep/ensemble.hpp"
#include "credrep/evaluation.hpp"
#include "credrep/pipeline.hpp"
#include "credrep/rng.hpp"
#include "credrep/svm.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace credrep;
using credrep::testing::BlobData;
using credrep::testing::TempDir;

namespace {

struct Criterion {
    int number;
    std::string name;
    std::function<bool(std::string&)> body;
    double max_seconds;  // <= 0: no runtime bound stated
};

bool nearly(double actual, double expected, double tolerance) {
    return std::abs(actual - expected) <= tolerance;
}

// 1. Reputation-score reproduction from the published distance pairs.
bool criterion_reputation(std::string& detail) {
    const double first = score_from_distances(0.00697, 0.02646);
    const double second = score_from_distances(0.02986, 0.00343);
    detail = "s_c = " + std::to_string(first) + ", " + std::to_string(second);
    return nearly(first, 0.791, 0.001) && nearly(second, 0.103, 0.001);
}

// 2. Metric-table reproduction plus uniqueness of the count assignment.
bool criterion_metrics(std::string& detail) {
    const std::array<std::size_t, 4> counts = {67, 77, 174, 188};
    const std::array<double, 6> expected = {0.71541, 0.72199, 0.69323,
                                            0.73725, 0.26274, 0.70732};
    const double tol = 1e-4;

    std::array<std::size_t, 4> perm = counts;
    std::sort(perm.begin(), perm.end());
    int matches = 0;
    ConfusionMatrix match;
    do {
        const ConfusionMatrix cm{perm[0], perm[1], perm[2], perm[3]};
        const MetricsReport m = compute_metrics(cm);
        const std::array<double, 6> actual = {m.accuracy, m.precision, m.recall,
                                              m.tnr,      m.fpr,       m.f1};
        bool all = true;
        for (std::size_t i = 0; i < 6; ++i) {
            all = all && nearly(actual[i], expected[i], tol);
        }
        if (all) {
            ++matches;
            match = cm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    detail = "matching assignments: " + std::to_string(matches);
    return matches == 1 && match == ConfusionMatrix{174, 67, 77, 188};
}

// 3. Ensemble-formula identities on 10,000 random samples.
bool criterion_ensemble_identities(std::string& detail) {
    Rng rng(101);
    std::size_t violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const double pe = rng.next_double();
        const double ps = rng.next_double();
        const double we = 1e-3 + rng.next_double() * 10.0;
        const double ws = 1e-3 + rng.next_double() * 10.0;
        const double pf = combine(pe, ps, we, ws);

        // Scale invariance: bitwise for power-of-two scales, <= 1e-12 relative
        // for arbitrary positive scales.
        const double pow2 = std::ldexp(1.0, static_cast<int>(rng.bounded(17)) - 8);
        if (combine(pe, ps, pow2 * we, pow2 * ws) != pf) ++violations;
        const double c = 1e-2 + rng.next_double() * 100.0;
        const double scaled = combine(pe, ps, c * we, c * ws);
        if (std::abs(scaled - pf) > 1e-12 * std::max(1.0, std::abs(pf))) ++violations;

        if (pf < std::min(pe, ps) || pf > std::max(pe, ps)) ++violations;

        const double pe_hi = pe + rng.next_double() * (1.0 - pe);
        if (combine(pe_hi, ps, we, ws) < pf) ++violations;
        const double ps_hi = ps + rng.next_double() * (1.0 - ps);
        if (combine(pe, ps_hi, we, ws) < pf) ++violations;
    }
    detail = "violations: " + std::to_string(violations) + " / 10000 samples";
    return violations == 0;
}

// 4. Complementarity of s_c under centroid swap.
bool criterion_complementarity(std::string& detail) {
    Rng rng(102);
    std::size_t violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t dim = 1 + rng.bounded(16);
        PostEmbedding e;
        e.n_terms = 1;
        CentroidModel centroids;
        centroids.n_credible = centroids.n_non_credible = 1;
        for (std::size_t d = 0; d < dim; ++d) {
            e.vector.push_back(rng.normal() * 3.0);
            centroids.credible_centroid.push_back(rng.normal() * 3.0);
            centroids.non_credible_centroid.push_back(rng.normal() * 3.0);
        }
        CentroidModel swapped = centroids;
        std::swap(swapped.credible_centroid, swapped.non_credible_centroid);
        const double s = reputation_score(e, centroids).s_c;
        const double s_swapped = reputation_score(e, swapped).s_c;
        if (std::abs(s_swapped - (1.0 - s)) > 1e-12) ++violations;
    }
    detail = "violations: " + std::to_string(violations) + " / 1000 triples";
    return violations == 0;
}

// 5. SVM correctness on the seeded separable blobs.
bool criterion_svm(std::string& detail) {
    const BlobData data = credrep::testing::make_blobs(100, 7);

    double min_gap = 1e300;
    for (std::size_t i = 0; i < data.X.size(); ++i) {
        for (std::size_t j = 0; j < data.X.size(); ++j) {
            if (data.y[i] == data.y[j]) continue;
            const double dx = data.X[i][0] - data.X[j][0];
            const double dy = data.X[i][1] - data.X[j][1];
            min_gap = std::min(min_gap, std::hypot(dx, dy));
        }
    }
    if (min_gap < 1.0) {
        detail = "generator gap below 1";
        return false;
    }
    if (!credrep::testing::perceptron_separable(data.X, data.y)) {
        detail = "perceptron oracle says not separable";
        return false;
    }

    SvmConfig config;
    config.epochs = 50;
    config.seed = 7;
    const LinearSvmModel model = train_svm(data.X, data.y, config);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.X.size(); ++i) {
        if ((decision_function(model, data.X[i]) > 0.0 ? 1 : -1) == data.y[i]) ++correct;
    }
    if (correct != data.X.size()) {
        detail = "training accuracy " + std::to_string(correct) + "/100";
        return false;
    }

    const LinearSvmModel again = train_svm(data.X, data.y, config);
    if (!(model == again)) {
        detail = "identical seeds disagree";
        return false;
    }

    for (std::uint64_t seed : {1ULL, 7ULL, 21ULL, 99ULL}) {
        SvmConfig c2 = config;
        c2.seed = seed;
        const LinearSvmModel m = train_svm(data.X, data.y, c2);
        const std::vector<double> zero(2, 0.0);
        const double at_solution =
            svm_objective(data.X, data.y, m.weights, m.bias, c2.lambda, c2.class_weighted);
        const double at_zero =
            svm_objective(data.X, data.y, zero, 0.0, c2.lambda, c2.class_weighted);
        if (at_solution > at_zero) {
            detail = "objective above the zero vector for seed " + std::to_string(seed);
            return false;
        }
    }
    detail = "gap " + std::to_string(min_gap) + ", accuracy 1.0";
    return true;
}

// 6. Platt calibration on the symmetric-margins fixture.
bool criterion_platt(std::string& detail) {
    std::vector<double> margins;
    std::vector<int> y;
    for (int i = 0; i < 40; ++i) {
        margins.push_back(i % 2 == 0 ? 1.0 : -1.0);
        y.push_back(i % 2 == 0 ? 1 : -1);
    }
    const PlattCalibration calib = fit_platt(margins, y);
    const double at_zero = calib.apply(0.0);
    if (!nearly(at_zero, 0.5, 1e-6)) {
        detail = "Ps(0) = " + std::to_string(at_zero);
        return false;
    }
    // Strict increase sampled over the non-saturating band (the sigmoid tail
    // rounds onto 1.0's neighbors past |z| ~ 36), plus open-interval bounds
    // at extreme margins.
    double prev = calib.apply(-8.0);
    for (double m = -7.75; m <= 8.0; m += 0.25) {
        const double p = calib.apply(m);
        if (p <= prev) {
            detail = "not strictly increasing at margin " + std::to_string(m);
            return false;
        }
        prev = p;
    }
    for (double m : {-1e6, 1e6}) {
        const double p = calib.apply(m);
        if (!(p > 0.0) || !(p < 1.0)) {
            detail = "output left (0,1) at margin " + std::to_string(m);
            return false;
        }
    }
    detail = "Ps(0) = " + std::to_string(at_zero);
    return true;
}

// 7. End-to-end desk-scale experiment on the planted-signal corpus.
bool criterion_end_to_end(std::string& detail) {
    credrep::testing::SyntheticOptions options;
    options.n_posts = 2000;
    options.dim = 100;
    options.seed = 42;
    const auto data = credrep::testing::make_synthetic(options);
    const auto rows =
        build_rows(data.corpus, data.labels, data.lexicon, data.store, data.wot, false);

    PipelineConfig config;
    config.seed = 42;
    const CrossValidationReport report = cross_validate(rows, 10, config);

    const double ensembled = report.ensembled.metrics.accuracy;
    const double embedding = report.embedding.metrics.accuracy;
    const double svm = report.svm.metrics.accuracy;
    detail = "accuracy ensembled " + std::to_string(ensembled) + ", embedding " +
             std::to_string(embedding) + ", svm " + std::to_string(svm);
    return ensembled >= 0.95 && ensembled >= std::max(embedding, svm) - 0.02;
}

// 8. Annotation pipeline: unanimity cut and the published class counts.
bool criterion_annotation(std::string& detail) {
    Rng rng(103);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<AnnotationRecord> records;
        std::map<std::string, bool> unanimous;
        for (int p = 0; p < 20; ++p) {
            const std::string id = "p" + std::to_string(p);
            std::array<Label, 3> labels;
            for (auto& l : labels) {
                l = rng.bounded(2) == 0 ? Label::credible : Label::non_credible;
            }
            unanimous[id] = labels[0] == labels[1] && labels[1] == labels[2];
            for (int a = 0; a < 3; ++a) {
                records.push_back({id, "a" + std::to_string(a), labels[a]});
            }
        }
        const AggregationResult result = aggregate_annotations(records, 0.66);
        for (const auto& kept : result.kept) {
            if (!unanimous.at(kept.post_id)) {
                detail = "non-unanimous post survived the cut";
                return false;
            }
        }
        std::size_t expected_kept = 0;
        for (const auto& [id, is_unanimous] : unanimous) {
            if (is_unanimous) ++expected_kept;
        }
        if (result.kept.size() != expected_kept) {
            detail = "unanimous post dropped";
            return false;
        }
    }

    const auto fixture = credrep::testing::make_annotation_fixture(953, 253, 794);
    const AggregationResult result = aggregate_annotations(fixture, 0.66);
    const DatasetStats stats = dataset_stats(result.kept);
    detail = "fixture kept " + std::to_string(stats.credible) + " credible / " +
             std::to_string(stats.non_credible) + " non-credible";
    return result.kept.size() == 1206 && stats.credible == 953 && stats.non_credible == 253;
}

// 9. Kappa unit values.
bool criterion_kappa(std::string& detail) {
    constexpr Label C = Label::credible;
    constexpr Label N = Label::non_credible;
    const std::vector<Label> same = {C, C, N};
    const std::vector<Label> a1 = {C, C, N, N};
    const std::vector<Label> b1 = {C, N, C, N};
    const std::vector<Label> a2 = {C, C, C, N};
    const std::vector<Label> b2 = {C, C, N, N};
    const double identical = cohen_kappa(same, same);
    const double zero = cohen_kappa(a1, b1);
    const double half = cohen_kappa(a2, b2);
    detail = "kappa = " + std::to_string(identical) + ", " + std::to_string(zero) + ", " +
             std::to_string(half);
    return identical == 1.0 && std::abs(zero - 0.0) <= 1e-12 &&
           std::abs(half - 0.5) <= 1e-12;
}

// 10. Determinism and round-trip of the training command.
bool criterion_determinism(std::string& detail) {
    TempDir dir;
    credrep::testing::SyntheticOptions options;
    options.n_posts = 100;
    options.dim = 24;
    options.seed = 77;
    const auto data = credrep::testing::make_synthetic(options);
    save_corpus(data.corpus, dir.file("corpus.jsonl"));
    save_embeddings(data.store, dir.file("embeddings.txt"));
    {
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

    TrainOptions train;
    train.corpus = dir.file("corpus.jsonl");
    train.annotations = dir.file("annotations.csv");
    train.embeddings = dir.file("embeddings.txt");
    train.lexicon = dir.file("lexicon.tsv");
    train.wot = dir.file("wot.tsv");
    train.seed = 5;
    train.epochs = 80;
    train.out_bundle = dir.file("bundle1.json");
    if (run_train(train) != kExitOk) {
        detail = "first training run failed";
        return false;
    }
    train.out_bundle = dir.file("bundle2.json");
    if (run_train(train) != kExitOk) {
        detail = "second training run failed";
        return false;
    }
    if (dir.read("bundle1.json") != dir.read("bundle2.json")) {
        detail = "bundles differ between identical seeded runs";
        return false;
    }

    // Re-scoring through the reloaded bundle must reproduce the in-memory
    // pipeline's verdicts exactly.
    const ModelBundle bundle = load_bundle(dir.file("bundle1.json"));
    const auto rows =
        build_rows(data.corpus, data.labels, data.lexicon, data.store, data.wot, false);
    PipelineConfig config;
    config.seed = train.seed;
    config.epochs = train.epochs;
    const FittedPipeline direct = fit_pipeline(rows, config);
    for (const Post& post : data.corpus.posts) {
        const Verdict a =
            score_post(post, data.corpus.author_of(post), direct, data.lexicon, data.store,
                       data.wot, data.corpus.snapshot_utc);
        const Verdict b =
            score_post(post, data.corpus.author_of(post), bundle.pipeline, data.lexicon,
                       data.store, data.wot, data.corpus.snapshot_utc);
        if (a.pf != b.pf || a.pe != b.pe || a.ps != b.ps || a.label != b.label) {
            detail = "verdict mismatch after bundle reload for post " + post.id;
            return false;
        }
    }
    detail = "bundles byte-identical; 100-post verdicts identical after reload";
    return true;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "reputation-score reproduction", criterion_reputation, 0.0},
        {2, "metric-table reproduction", criterion_metrics, 1.0},
        {3, "ensemble-formula identities", criterion_ensemble_identities, 5.0},
        {4, "complementarity of s_c", criterion_complementarity, 5.0},
        {5, "svm correctness", criterion_svm, 5.0},
        {6, "platt calibration", criterion_platt, 1.0},
        {7, "end-to-end desk-scale experiment", criterion_end_to_end, 60.0},
        {8, "annotation pipeline", criterion_annotation, 5.0},
        {9, "kappa unit values", criterion_kappa, 0.0},
        {10, "determinism and bundle round-trip", criterion_determinism, 30.0},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.max_seconds > 0.0 && seconds > criterion.max_seconds) {
            ok = false;
            detail += " [exceeded " + std::to_string(criterion.max_seconds) + "s budget]";
        }
        std::printf("%s criterion %d: %s (%.3fs) %s\n", ok ? "PASS" : "FAIL",
                    criterion.number, criterion.name.c_str(), seconds,
                    detail.empty() ? "" : ("- " + detail).c_str());
        if (!ok) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
