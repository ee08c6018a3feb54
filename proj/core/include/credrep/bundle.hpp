#pragma once

#include <cstdint>
#include <string>

#include "credrep/pipeline.hpp"

namespace credrep {

/// Serializable container for a fitted pipeline plus the metadata needed to
/// reproduce and validate its use: feature schema, embedding dimension,
/// lexicon fingerprint, corpus snapshot time, and training settings.
struct ModelBundle {
    std::string format_version = "1";
    FittedPipeline pipeline;
    std::size_t embedding_dim = 0;
    std::string lexicon_fingerprint;
    std::int64_t snapshot_utc = 0;

    /// Schema/dimension consistency across members. Throws ValidationError.
    void validate() const;
};

/// One JSON document with decimal floats that round-trip at full precision.
/// Serialization is byte-deterministic for a given bundle.
std::string serialize_bundle(const ModelBundle& bundle);
ModelBundle deserialize_bundle(const std::string& text);

void save_bundle(const ModelBundle& bundle, const std::string& path);
ModelBundle load_bundle(const std::string& path);

} // namespace credrep
