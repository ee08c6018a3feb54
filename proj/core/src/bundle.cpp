#include "credrep/bundle.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "credrep/commands.hpp"
#include "credrep/errors.hpp"

namespace credrep {

using json = nlohmann::ordered_json;

namespace {

json vec_to_json(const std::vector<double>& v) { return json(v); }

std::vector<double> vec_from_json(const json& j, const char* name) {
    if (!j.is_array()) throw ParseError(std::string("bundle: '") + name + "' must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_number()) {
            throw ParseError(std::string("bundle: '") + name + "' holds a non-number");
        }
        out.push_back(item.get<double>());
    }
    return out;
}

const json& member(const json& j, const char* name) {
    if (!j.contains(name)) {
        throw ParseError(std::string("bundle: missing member '") + name + "'");
    }
    return j.at(name);
}

} // namespace

void ModelBundle::validate() const {
    if (format_version.empty()) throw ValidationError("bundle: format version absent");
    const std::size_t width = pipeline.feature_schema.size();
    if (width == 0) throw ValidationError("bundle: empty feature schema");
    if (pipeline.svm.weights.size() != width) {
        throw ValidationError("bundle: SVM weight count does not match the feature schema");
    }
    if (pipeline.standardizer.size() != width) {
        throw ValidationError("bundle: standardizer width does not match the feature schema");
    }
    if (pipeline.centroids.credible_centroid.size() != embedding_dim ||
        pipeline.centroids.non_credible_centroid.size() != embedding_dim) {
        throw ValidationError("bundle: centroid length does not match embedding_dim");
    }
    if (!(pipeline.threshold > 0.0) || !(pipeline.threshold < 1.0)) {
        throw ValidationError("bundle: threshold must be inside (0,1)");
    }
    if (pipeline.weights.we < 0.0 || pipeline.weights.ws < 0.0 ||
        pipeline.weights.we + pipeline.weights.ws <= 0.0) {
        throw ValidationError("bundle: ensemble weights must be non-negative and not both zero");
    }
}

std::string serialize_bundle(const ModelBundle& bundle) {
    bundle.validate();
    json j;
    j["format_version"] = bundle.format_version;
    j["feature_schema"] = bundle.pipeline.feature_schema;
    j["embedding_dim"] = bundle.embedding_dim;
    j["snapshot_utc"] = bundle.snapshot_utc;
    j["lexicon_fingerprint"] = bundle.lexicon_fingerprint;

    json flags;
    flags["normalize_vectors"] = bundle.pipeline.config.normalize_vectors;
    flags["stacked_features"] = bundle.pipeline.config.stacked_features;
    j["flags"] = flags;

    json standardizer;
    standardizer["means"] = vec_to_json(bundle.pipeline.standardizer.means());
    standardizer["stds"] = vec_to_json(bundle.pipeline.standardizer.stds());
    json mask = json::array();
    for (bool m : bundle.pipeline.standardizer.mask()) mask.push_back(m);
    standardizer["mask"] = mask;
    j["standardizer"] = standardizer;

    json svm;
    svm["weights"] = vec_to_json(bundle.pipeline.svm.weights);
    svm["bias"] = bundle.pipeline.svm.bias;
    svm["lambda"] = bundle.pipeline.svm.lambda;
    svm["epochs"] = bundle.pipeline.svm.epochs;
    svm["seed"] = bundle.pipeline.svm.seed;
    j["svm"] = svm;

    json platt;
    platt["a"] = bundle.pipeline.platt.a;
    platt["b"] = bundle.pipeline.platt.b;
    j["platt"] = platt;

    json centroids;
    centroids["credible"] = vec_to_json(bundle.pipeline.centroids.credible_centroid);
    centroids["non_credible"] = vec_to_json(bundle.pipeline.centroids.non_credible_centroid);
    centroids["n_credible"] = bundle.pipeline.centroids.n_credible;
    centroids["n_non_credible"] = bundle.pipeline.centroids.n_non_credible;
    j["centroids"] = centroids;

    json ensemble;
    ensemble["we"] = bundle.pipeline.weights.we;
    ensemble["ws"] = bundle.pipeline.weights.ws;
    ensemble["threshold"] = bundle.pipeline.threshold;
    j["ensemble"] = ensemble;

    json training;
    training["seed"] = bundle.pipeline.config.seed;
    training["lambda"] = bundle.pipeline.config.lambda;
    training["epochs"] = bundle.pipeline.config.epochs;
    training["calibration_folds"] = bundle.pipeline.config.calibration_folds;
    training["class_weighted"] = bundle.pipeline.config.class_weighted;
    training["in_sample_calibration"] = bundle.pipeline.in_sample_calibration;
    j["training"] = training;

    return j.dump(2) + "\n";
}

ModelBundle deserialize_bundle(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bundle: invalid JSON: ") + e.what());
    }

    ModelBundle bundle;
    bundle.format_version = member(j, "format_version").get<std::string>();
    if (bundle.format_version != "1") {
        throw ParseError("bundle: unsupported format version '" + bundle.format_version + "'");
    }
    bundle.pipeline.feature_schema =
        member(j, "feature_schema").get<std::vector<std::string>>();
    bundle.embedding_dim = member(j, "embedding_dim").get<std::size_t>();
    bundle.snapshot_utc = member(j, "snapshot_utc").get<std::int64_t>();
    bundle.lexicon_fingerprint = member(j, "lexicon_fingerprint").get<std::string>();

    const json& flags = member(j, "flags");
    bundle.pipeline.config.normalize_vectors =
        member(flags, "normalize_vectors").get<bool>();
    bundle.pipeline.config.stacked_features =
        member(flags, "stacked_features").get<bool>();

    const json& standardizer = member(j, "standardizer");
    std::vector<double> means = vec_from_json(member(standardizer, "means"), "means");
    std::vector<double> stds = vec_from_json(member(standardizer, "stds"), "stds");
    std::vector<bool> mask;
    for (const auto& m : member(standardizer, "mask")) mask.push_back(m.get<bool>());
    bundle.pipeline.standardizer =
        Standardizer(std::move(means), std::move(stds), std::move(mask));

    const json& svm = member(j, "svm");
    bundle.pipeline.svm.weights = vec_from_json(member(svm, "weights"), "weights");
    bundle.pipeline.svm.bias = member(svm, "bias").get<double>();
    bundle.pipeline.svm.lambda = member(svm, "lambda").get<double>();
    bundle.pipeline.svm.epochs = member(svm, "epochs").get<int>();
    bundle.pipeline.svm.seed = member(svm, "seed").get<std::uint64_t>();

    const json& platt = member(j, "platt");
    bundle.pipeline.platt.a = member(platt, "a").get<double>();
    bundle.pipeline.platt.b = member(platt, "b").get<double>();

    const json& centroids = member(j, "centroids");
    bundle.pipeline.centroids.credible_centroid =
        vec_from_json(member(centroids, "credible"), "credible");
    bundle.pipeline.centroids.non_credible_centroid =
        vec_from_json(member(centroids, "non_credible"), "non_credible");
    bundle.pipeline.centroids.n_credible =
        member(centroids, "n_credible").get<std::size_t>();
    bundle.pipeline.centroids.n_non_credible =
        member(centroids, "n_non_credible").get<std::size_t>();

    const json& ensemble = member(j, "ensemble");
    bundle.pipeline.weights.we = member(ensemble, "we").get<double>();
    bundle.pipeline.weights.ws = member(ensemble, "ws").get<double>();
    bundle.pipeline.threshold = member(ensemble, "threshold").get<double>();
    bundle.pipeline.config.threshold = bundle.pipeline.threshold;

    const json& training = member(j, "training");
    bundle.pipeline.config.seed = member(training, "seed").get<std::uint64_t>();
    bundle.pipeline.config.lambda = member(training, "lambda").get<double>();
    bundle.pipeline.config.epochs = member(training, "epochs").get<int>();
    bundle.pipeline.config.calibration_folds =
        member(training, "calibration_folds").get<int>();
    bundle.pipeline.config.class_weighted = member(training, "class_weighted").get<bool>();
    bundle.pipeline.in_sample_calibration =
        member(training, "in_sample_calibration").get<bool>();

    bundle.validate();
    return bundle;
}

void save_bundle(const ModelBundle& bundle, const std::string& path) {
    write_file_atomic(path, serialize_bundle(bundle));
}

ModelBundle load_bundle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open bundle file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return deserialize_bundle(buffer.str());
}

} // namespace credrep
