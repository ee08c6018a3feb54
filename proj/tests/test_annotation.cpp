#include <doctest.h>

#include <algorithm>

#include "credrep/annotation.hpp"
#include "credrep/errors.hpp"
#include "credrep/rng.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace credrep;
using credrep::testing::TempDir;

namespace {
constexpr Label C = Label::credible;
constexpr Label N = Label::non_credible;
} // namespace

TEST_CASE("cohen_kappa on the worked examples") {
    // Identical sequences: perfect agreement.
    const std::vector<Label> same = {C, C, N};
    CHECK(cohen_kappa(same, same) == doctest::Approx(1.0));

    // Hand computation: p_o = 0.5, p_e = 0.5 -> kappa = 0.
    const std::vector<Label> a1 = {C, C, N, N};
    const std::vector<Label> b1 = {C, N, C, N};
    CHECK(cohen_kappa(a1, b1) == doctest::Approx(0.0).epsilon(1e-12));

    // Hand computation: p_o = 0.75, p_e = 0.5 -> kappa = 0.5.
    const std::vector<Label> a2 = {C, C, C, N};
    const std::vector<Label> b2 = {C, C, N, N};
    CHECK(cohen_kappa(a2, b2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cohen_kappa rejects bad input") {
    const std::vector<Label> a = {C, N};
    const std::vector<Label> b = {C};
    CHECK_THROWS_AS(cohen_kappa(a, b), ValidationError);
    CHECK_THROWS_AS(cohen_kappa(std::vector<Label>{}, std::vector<Label>{}), ValidationError);
}

TEST_CASE("cohen_kappa is symmetric, self-perfect, and bounded") {
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.bounded(20);
        std::vector<Label> a(n);
        std::vector<Label> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.bounded(2) == 0 ? C : N;
            b[i] = rng.bounded(2) == 0 ? C : N;
        }
        const double k_ab = cohen_kappa(a, b);
        const double k_ba = cohen_kappa(b, a);
        CHECK(k_ab == doctest::Approx(k_ba).epsilon(1e-12));
        CHECK(k_ab >= -1.0 - 1e-12);
        CHECK(k_ab <= 1.0 + 1e-12);
        CHECK(cohen_kappa(a, a) == doctest::Approx(1.0));
    }
}

TEST_CASE("aggregate_annotations keeps unanimous posts with the majority label") {
    std::vector<AnnotationRecord> records = {
        {"p1", "a1", C}, {"p1", "a2", C}, {"p1", "a3", C},
    };
    const AggregationResult result = aggregate_annotations(records, 0.66);
    REQUIRE(result.kept.size() == 1);
    CHECK(result.kept[0].post_id == "p1");
    CHECK(result.kept[0].label == C);
    CHECK(result.kept[0].agreement == doctest::Approx(1.0));
    CHECK(result.dropped.empty());
}

TEST_CASE("aggregate_annotations drops a 2-1 split under the 0.66 cut") {
    // Three annotator pairs, one agreeing: agreement = 1/3.
    std::vector<AnnotationRecord> records = {
        {"p1", "a1", C}, {"p1", "a2", C}, {"p1", "a3", N},
    };
    const AggregationResult result = aggregate_annotations(records, 0.66);
    CHECK(result.kept.empty());
    REQUIRE(result.dropped.size() == 1);
    CHECK(result.dropped[0].reason == DropReason::low_agreement);
    CHECK(result.dropped[0].agreement == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("aggregate_annotations reports posts with fewer than 3 annotations") {
    std::vector<AnnotationRecord> records = {
        {"p1", "a1", C}, {"p1", "a2", C},
        {"p2", "a1", C}, {"p2", "a2", C}, {"p2", "a3", C},
    };
    const AggregationResult result = aggregate_annotations(records, 0.66);
    REQUIRE(result.kept.size() == 1);
    CHECK(result.kept[0].post_id == "p2");
    REQUIRE(result.dropped.size() == 1);
    CHECK(result.dropped[0].post_id == "p1");
    CHECK(result.dropped[0].reason == DropReason::too_few_annotations);
}

TEST_CASE("aggregate_annotations drops even-count ties") {
    std::vector<AnnotationRecord> records = {
        {"p1", "a1", C}, {"p1", "a2", C}, {"p1", "a3", N}, {"p1", "a4", N},
    };
    // 2-2 split: agreement = 2/6, below any sensible cut.
    const AggregationResult low = aggregate_annotations(records, 0.2);
    REQUIRE(low.dropped.size() == 1);
    CHECK(low.dropped[0].reason == DropReason::tie);
}

TEST_CASE("aggregate_annotations rejects duplicate (post, annotator) pairs") {
    std::vector<AnnotationRecord> records = {
        {"p1", "a1", C}, {"p1", "a1", N},
    };
    CHECK_THROWS_AS(aggregate_annotations(records, 0.66), ValidationError);
}

TEST_CASE("kept and dropped partition the posts; majority label ignores order") {
    Rng rng(11);
    std::vector<AnnotationRecord> records;
    const std::size_t n_posts = 60;
    for (std::size_t p = 0; p < n_posts; ++p) {
        const std::size_t n_ann = 3 + rng.bounded(3);
        for (std::size_t a = 0; a < n_ann; ++a) {
            records.push_back({"p" + std::to_string(p), "a" + std::to_string(a),
                               rng.bounded(2) == 0 ? C : N});
        }
    }
    const AggregationResult forward = aggregate_annotations(records, 0.5);
    CHECK(forward.kept.size() + forward.dropped.size() == n_posts);
    for (const auto& kept : forward.kept) CHECK(kept.agreement > 0.5);

    std::vector<AnnotationRecord> shuffled = records;
    rng.shuffle(shuffled);
    const AggregationResult backward = aggregate_annotations(shuffled, 0.5);
    REQUIRE(backward.kept.size() == forward.kept.size());
    for (std::size_t i = 0; i < forward.kept.size(); ++i) {
        CHECK(backward.kept[i].post_id == forward.kept[i].post_id);
        CHECK(backward.kept[i].label == forward.kept[i].label);
    }
}

TEST_CASE("with 3 annotators the 0.66 cut keeps exactly the unanimous posts") {
    Rng rng(13);
    std::vector<AnnotationRecord> records;
    std::map<std::string, bool> unanimous;
    for (std::size_t p = 0; p < 200; ++p) {
        const std::string id = "p" + std::to_string(p);
        std::vector<Label> labels = {rng.bounded(2) == 0 ? C : N,
                                     rng.bounded(2) == 0 ? C : N,
                                     rng.bounded(2) == 0 ? C : N};
        unanimous[id] = labels[0] == labels[1] && labels[1] == labels[2];
        for (std::size_t a = 0; a < 3; ++a) {
            records.push_back({id, "a" + std::to_string(a), labels[a]});
        }
    }
    const AggregationResult result = aggregate_annotations(records, 0.66);
    for (const auto& kept : result.kept) CHECK(unanimous.at(kept.post_id));
    for (const auto& dropped : result.dropped) CHECK_FALSE(unanimous.at(dropped.post_id));
}

TEST_CASE("the tuned 2000-post fixture reproduces the 953/253 split") {
    const auto records = credrep::testing::make_annotation_fixture(953, 253, 794);
    const AggregationResult result = aggregate_annotations(records, 0.66);
    CHECK(result.kept.size() == 1206);
    CHECK(result.dropped.size() == 794);
    const DatasetStats stats = dataset_stats(result.kept);
    CHECK(stats.credible == 953);
    CHECK(stats.non_credible == 253);
}

TEST_CASE("dataset_stats counts classes and their ratio") {
    CHECK(dataset_stats({}).credible == 0);
    CHECK(dataset_stats({}).non_credible == 0);
    CHECK_FALSE(dataset_stats({}).ratio.has_value());

    const std::vector<LabeledPost> labeled = {
        {"p1", C, 1.0}, {"p2", C, 1.0}, {"p3", C, 1.0}, {"p4", N, 1.0}};
    const DatasetStats stats = dataset_stats(labeled);
    CHECK(stats.credible == 3);
    CHECK(stats.non_credible == 1);
    CHECK(stats.ratio == doctest::Approx(3.0));
}

TEST_CASE("mean_pairwise_kappa averages over annotator pairs with shared posts") {
    std::vector<AnnotationRecord> records;
    // a1 and a2 agree everywhere; a3 shares nothing.
    for (int p = 0; p < 4; ++p) {
        const Label l = p % 2 == 0 ? C : N;
        records.push_back({"p" + std::to_string(p), "a1", l});
        records.push_back({"p" + std::to_string(p), "a2", l});
    }
    records.push_back({"q1", "a3", C});
    const KappaReport report = mean_pairwise_kappa(records);
    REQUIRE(report.pairs.size() == 1);
    CHECK(report.pairs[0].annotator_a == "a1");
    CHECK(report.pairs[0].annotator_b == "a2");
    CHECK(report.pairs[0].n_shared == 4);
    CHECK(report.mean == doctest::Approx(1.0));
}

TEST_CASE("load_annotations parses the CSV format") {
    TempDir dir;
    dir.write("a.csv",
              "post_id,annotator_id,label\r\np1,a1,credible\np1,a2,non-credible\n");
    const auto records = load_annotations(dir.file("a.csv"));
    REQUIRE(records.size() == 2);
    CHECK(records[0].post_id == "p1");
    CHECK(records[1].label == N);

    dir.write("nohdr.csv", "p1,a1,credible\n");
    CHECK_THROWS_AS(load_annotations(dir.file("nohdr.csv")), ParseError);
    dir.write("badlabel.csv", "post_id,annotator_id,label\np1,a1,maybe\n");
    CHECK_THROWS_AS(load_annotations(dir.file("badlabel.csv")), ParseError);
}
