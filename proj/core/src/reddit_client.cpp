#include "credrep/reddit_client.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "credrep/errors.hpp"

namespace credrep {

using json = nlohmann::json;

void FixtureTransport::record(const std::string& path, HttpResponse response) {
    responses_[path].push_back(std::move(response));
}

HttpResponse FixtureTransport::get(const std::string& path) {
    requests_.push_back(path);
    auto it = responses_.find(path);
    if (it == responses_.end() || it->second.empty()) {
        return HttpResponse{0, "", std::nullopt};
    }
    std::size_t& idx = cursor_[path];
    const HttpResponse& resp = it->second[std::min(idx, it->second.size() - 1)];
    ++idx;
    return resp;
}

std::string to_string(ListingTab tab) {
    switch (tab) {
        case ListingTab::hot: return "hot";
        case ListingTab::new_: return "new";
        case ListingTab::controversial: return "controversial";
        case ListingTab::gilded: return "gilded";
        case ListingTab::top: return "top";
    }
    return "new";
}

std::optional<ListingTab> parse_tab(const std::string& name) {
    if (name == "hot") return ListingTab::hot;
    if (name == "new") return ListingTab::new_;
    if (name == "controversial") return ListingTab::controversial;
    if (name == "gilded") return ListingTab::gilded;
    if (name == "top") return ListingTab::top;
    return std::nullopt;
}

namespace {

std::int64_t json_int(const json& value, const char* context) {
    if (value.is_number_integer()) return value.get<std::int64_t>();
    if (value.is_number()) return static_cast<std::int64_t>(value.get<double>());
    throw ParseError(std::string("unparsable payload: '") + context + "' is not a number");
}

/// Listing ids come as fullnames ("t2_abc"); about payloads carry the short
/// form. Normalize both to the fullname.
std::string author_fullname(std::string id) {
    if (id.rfind("t2_", 0) != 0) id = "t2_" + id;
    return id;
}

Post parse_listing_post(const json& data, const std::string& fallback_subreddit) {
    Post p;
    if (data.contains("name") && data["name"].is_string()) {
        p.id = data["name"].get<std::string>();
    } else if (data.contains("id") && data["id"].is_string()) {
        p.id = data["id"].get<std::string>();
    } else {
        throw ParseError("unparsable payload: submission without an id");
    }
    p.subreddit = data.value("subreddit", fallback_subreddit);
    if (!data.contains("title") || !data["title"].is_string()) {
        throw ParseError("unparsable payload: submission '" + p.id + "' without a title");
    }
    p.title = data["title"].get<std::string>();
    p.body = data.value("selftext", "");
    if (data.contains("url") && data["url"].is_string() &&
        !data["url"].get<std::string>().empty()) {
        p.url = data["url"].get<std::string>();
    }
    if (!data.contains("created_utc")) {
        throw ParseError("unparsable payload: submission '" + p.id + "' without created_utc");
    }
    p.created_utc = json_int(data["created_utc"], "created_utc");
    p.ups = data.contains("ups") ? json_int(data["ups"], "ups") : 0;
    p.downs = data.contains("downs") ? json_int(data["downs"], "downs") : 0;
    p.score = data.contains("score") ? json_int(data["score"], "score") : 0;
    p.num_comments =
        data.contains("num_comments") ? json_int(data["num_comments"], "num_comments") : 0;
    p.num_crossposts =
        data.contains("num_crossposts") ? json_int(data["num_crossposts"], "num_crossposts")
                                        : 0;
    if (!data.contains("author_fullname") || !data["author_fullname"].is_string()) {
        throw ParseError("unparsable payload: submission '" + p.id +
                         "' without author_fullname");
    }
    p.author_id = author_fullname(data["author_fullname"].get<std::string>());
    return p;
}

AuthorProfile parse_about_author(const json& body) {
    if (!body.is_object() || !body.contains("data") || !body["data"].is_object()) {
        throw ParseError("unparsable payload: author record without data");
    }
    const json& data = body["data"];
    AuthorProfile a;
    if (!data.contains("id") || !data["id"].is_string()) {
        throw ParseError("unparsable payload: author record without an id");
    }
    a.author_id = author_fullname(data["id"].get<std::string>());
    a.name = data.value("name", "");
    a.created_utc =
        data.contains("created_utc") ? json_int(data["created_utc"], "created_utc") : 0;
    a.link_karma = data.contains("link_karma") ? json_int(data["link_karma"], "link_karma") : 0;
    a.comment_karma =
        data.contains("comment_karma") ? json_int(data["comment_karma"], "comment_karma") : 0;
    a.has_verified_email = data.value("has_verified_email", false);
    a.is_verified = data.value("verified", false);
    a.is_moderator = data.value("is_mod", false);
    return a;
}

} // namespace

RedditClient::RedditClient(HttpTransport& transport, RetryPolicy retry, Clock clock,
                           Sleeper sleeper)
    : transport_(transport), retry_(retry), clock_(std::move(clock)),
      sleeper_(std::move(sleeper)) {
    if (!clock_) {
        clock_ = [] {
            return std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                .count();
        };
    }
    if (!sleeper_) {
        sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    }
}

HttpResponse RedditClient::get_with_retry(const std::string& path) {
    std::chrono::milliseconds backoff = retry_.base_delay;
    for (int attempt = 1; attempt <= retry_.max_attempts; ++attempt) {
        HttpResponse resp = transport_.get(path);
        if (resp.status == 200) return resp;
        if (resp.status >= 400 && resp.status < 500 && resp.status != 429) {
            throw TransportError("GET " + path + " failed with status " +
                                 std::to_string(resp.status));
        }
        if (attempt == retry_.max_attempts) break;
        std::chrono::milliseconds delay = backoff;
        if (resp.status == 429 && resp.retry_after_seconds) {
            delay = std::chrono::milliseconds(
                static_cast<std::int64_t>(std::ceil(*resp.retry_after_seconds * 1000.0)));
        }
        sleeper_(std::min(delay, retry_.max_delay));
        backoff = std::min(backoff * 2, retry_.max_delay);
    }
    throw TransportError("GET " + path + " failed after " +
                         std::to_string(retry_.max_attempts) + " attempts");
}

Corpus RedditClient::fetch_live(const std::vector<std::string>& subreddits,
                                const std::vector<ListingTab>& tabs, std::size_t limit) {
    Corpus corpus;
    corpus.snapshot_utc = clock_();
    if (limit == 0) return corpus;

    std::map<std::string, std::string> author_names;  // author_id -> screen name
    std::set<std::string> seen_posts;

    for (const std::string& subreddit : subreddits) {
        for (ListingTab tab : tabs) {
            std::size_t fetched = 0;
            std::string after;
            while (fetched < limit) {
                const std::size_t page = std::min<std::size_t>(100, limit - fetched);
                std::string path =
                    "/r/" + subreddit + "/" + to_string(tab) + ".json?limit=" +
                    std::to_string(page);
                if (!after.empty()) path += "&after=" + after;

                HttpResponse resp = get_with_retry(path);
                json body;
                try {
                    body = json::parse(resp.body);
                } catch (const json::exception& e) {
                    throw ParseError(std::string("unparsable payload from ") + path + ": " +
                                     e.what());
                }
                if (!body.is_object() || !body.contains("data") ||
                    !body["data"].is_object() || !body["data"].contains("children") ||
                    !body["data"]["children"].is_array()) {
                    throw ParseError("unparsable payload from " + path +
                                     ": not a listing");
                }
                const json& children = body["data"]["children"];
                if (children.empty()) break;
                for (const json& child : children) {
                    if (!child.is_object() || !child.contains("data")) {
                        throw ParseError("unparsable payload from " + path +
                                         ": child without data");
                    }
                    Post p = parse_listing_post(child["data"], subreddit);
                    ++fetched;
                    if (seen_posts.insert(p.id).second) {
                        author_names.emplace(p.author_id, child["data"].value("author", ""));
                        corpus.posts.push_back(std::move(p));
                    }
                    if (fetched >= limit) break;
                }
                const json& next = body["data"].contains("after") ? body["data"]["after"]
                                                                  : json(nullptr);
                if (!next.is_string() || next.get<std::string>().empty()) break;
                after = next.get<std::string>();
            }
        }
    }

    // author_names is id-ordered, so profile requests are deterministic.
    for (const auto& [author_id, name] : author_names) {
        const std::string path = "/user/" + name + "/about.json";
        HttpResponse resp = get_with_retry(path);
        json body;
        try {
            body = json::parse(resp.body);
        } catch (const json::exception& e) {
            throw ParseError(std::string("unparsable payload from ") + path + ": " + e.what());
        }
        AuthorProfile a = parse_about_author(body);
        corpus.authors.emplace(a.author_id, std::move(a));
    }

    corpus.finalize();
    return corpus;
}

} // namespace credrep
