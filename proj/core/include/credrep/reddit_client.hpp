#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "credrep/corpus.hpp"

namespace credrep {

struct HttpResponse {
    int status = 0;  // 0 = transport-level failure
    std::string body;
    std::optional<double> retry_after_seconds;  // server-advised delay
};

/// Minimal GET transport. Live runs use an HTTP implementation; tests inject
/// recorded fixtures.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& path) = 0;
};

/// Replays a recorded request/response transcript. Paths requested more times
/// than recorded replay their last response.
class FixtureTransport : public HttpTransport {
public:
    void record(const std::string& path, HttpResponse response);
    HttpResponse get(const std::string& path) override;

    const std::vector<std::string>& requests() const { return requests_; }

private:
    std::map<std::string, std::vector<HttpResponse>> responses_;
    std::map<std::string, std::size_t> cursor_;
    std::vector<std::string> requests_;
};

struct RetryPolicy {
    int max_attempts = 4;
    std::chrono::milliseconds base_delay{500};
    std::chrono::milliseconds max_delay{8000};
};

enum class ListingTab { hot, new_, controversial, gilded, top };

std::string to_string(ListingTab tab);
std::optional<ListingTab> parse_tab(const std::string& name);

/// Fetches listing pages and author profiles through the Reddit JSON API
/// shape and assembles a validated Corpus.
class RedditClient {
public:
    using Clock = std::function<std::int64_t()>;
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    explicit RedditClient(HttpTransport& transport, RetryPolicy retry = {},
                          Clock clock = nullptr, Sleeper sleeper = nullptr);

    /// Collects up to `limit` submissions per (subreddit, tab) pair, then the
    /// profile of every distinct author. snapshot_utc is the fetch time.
    /// limit == 0 issues no requests and returns an empty corpus.
    Corpus fetch_live(const std::vector<std::string>& subreddits,
                      const std::vector<ListingTab>& tabs, std::size_t limit);

private:
    HttpResponse get_with_retry(const std::string& path);

    HttpTransport& transport_;
    RetryPolicy retry_;
    Clock clock_;
    Sleeper sleeper_;
};

} // namespace credrep
