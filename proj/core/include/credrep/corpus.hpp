#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace credrep {

/// One social-media submission, as stored in the corpus JSONL file.
struct Post {
    std::string id;
    std::string subreddit;
    std::string title;
    std::string body;
    std::optional<std::string> url;
    std::int64_t created_utc = 0;
    std::int64_t ups = 0;
    std::int64_t downs = 0;
    std::int64_t score = 0;
    std::int64_t num_comments = 0;
    std::int64_t num_crossposts = 0;
    std::string author_id;

    bool operator==(const Post&) const = default;
};

/// Per-submitter metadata.
struct AuthorProfile {
    std::string author_id;
    std::string name;
    std::int64_t created_utc = 0;
    std::int64_t link_karma = 0;
    std::int64_t comment_karma = 0;
    bool has_verified_email = false;
    bool is_verified = false;
    bool is_moderator = false;

    bool operator==(const AuthorProfile&) const = default;
};

/// Immutable snapshot of posts and their authors. All age features are
/// computed relative to snapshot_utc, never wall clock.
struct Corpus {
    std::int64_t snapshot_utc = 0;
    std::vector<Post> posts;                       // sorted by (created_utc, id)
    std::map<std::string, AuthorProfile> authors;  // keyed by author_id

    bool operator==(const Corpus&) const = default;

    const AuthorProfile& author_of(const Post& post) const;

    /// Enforces every invariant (referential integrity, non-negative counters,
    /// no posts after snapshot_utc, unique ids) and sorts posts. Throws
    /// ValidationError on any violation.
    void finalize();
};

/// Per-domain trust scores in [0,1] with a default for unknown domains.
struct WotTable {
    std::map<std::string, double> entries;  // lower-cased domain -> [0,1]
    double default_score = 0.5;
};

struct WotLookup {
    double score = 0.0;
    bool has_url = false;
};

/// Reads a corpus JSONL file: a meta header line followed by one post or
/// author object per line. Throws ParseError with line numbers on malformed
/// input, ValidationError on invariant violations.
Corpus load_corpus(const std::string& path);

/// Canonical serialization: meta line, authors sorted by id, posts in sorted
/// order, fixed key order. load(save(c)) == c, byte for byte on re-save.
void save_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::string& path);

/// Trust score for a post URL. Absent or unparsable URLs yield
/// (0.0, has_url=false); unknown domains yield the table default. The result
/// is always within [0,1]. Parse warnings go to `warn` when provided.
WotLookup wot_lookup(const std::optional<std::string>& url, const WotTable& table,
                     std::ostream* warn = nullptr);

/// Lower-cased registrable host from an http(s) URL, or nullopt when the
/// URL has no parsable authority.
std::optional<std::string> url_domain(const std::string& url);

/// Reads a `domain<TAB>score` TSV with scores in [0,100]; scores are divided
/// by 100 on load.
WotTable load_wot_table(const std::string& path, double default_score = 0.5);

} // namespace credrep
