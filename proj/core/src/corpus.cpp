#include "credrep/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "credrep/errors.hpp"

namespace credrep {

using json = nlohmann::ordered_json;

namespace {

std::string ascii_lower(std::string s) {
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
}

[[noreturn]] void fail_line(const std::string& path, std::size_t line_no,
                            const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": " + what);
}

void expect_fields(const json& obj, const std::set<std::string>& required,
                   const std::set<std::string>& optional, const std::string& path,
                   std::size_t line_no) {
    for (const auto& name : required) {
        if (!obj.contains(name)) fail_line(path, line_no, "missing field '" + name + "'");
    }
    for (const auto& [key, value] : obj.items()) {
        if (!required.contains(key) && !optional.contains(key)) {
            fail_line(path, line_no, "unknown field '" + key + "'");
        }
    }
}

std::int64_t get_int(const json& obj, const char* name, const std::string& path,
                     std::size_t line_no) {
    const auto& v = obj.at(name);
    if (!v.is_number_integer()) {
        fail_line(path, line_no, std::string("field '") + name + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

std::string get_str(const json& obj, const char* name, const std::string& path,
                    std::size_t line_no) {
    const auto& v = obj.at(name);
    if (!v.is_string()) {
        fail_line(path, line_no, std::string("field '") + name + "' must be a string");
    }
    return v.get<std::string>();
}

bool get_bool(const json& obj, const char* name, const std::string& path,
              std::size_t line_no) {
    const auto& v = obj.at(name);
    if (!v.is_boolean()) {
        fail_line(path, line_no, std::string("field '") + name + "' must be a boolean");
    }
    return v.get<bool>();
}

Post parse_post(const json& obj, const std::string& path, std::size_t line_no) {
    expect_fields(obj,
                  {"kind", "id", "subreddit", "title", "body", "created_utc", "ups",
                   "downs", "score", "num_comments", "num_crossposts", "author_id"},
                  {"url"}, path, line_no);
    Post p;
    p.id = get_str(obj, "id", path, line_no);
    p.subreddit = get_str(obj, "subreddit", path, line_no);
    p.title = get_str(obj, "title", path, line_no);
    p.body = get_str(obj, "body", path, line_no);
    if (obj.contains("url") && !obj.at("url").is_null()) {
        p.url = get_str(obj, "url", path, line_no);
    }
    p.created_utc = get_int(obj, "created_utc", path, line_no);
    p.ups = get_int(obj, "ups", path, line_no);
    p.downs = get_int(obj, "downs", path, line_no);
    p.score = get_int(obj, "score", path, line_no);
    p.num_comments = get_int(obj, "num_comments", path, line_no);
    p.num_crossposts = get_int(obj, "num_crossposts", path, line_no);
    p.author_id = get_str(obj, "author_id", path, line_no);
    return p;
}

AuthorProfile parse_author(const json& obj, const std::string& path, std::size_t line_no) {
    expect_fields(obj,
                  {"kind", "author_id", "name", "created_utc", "link_karma",
                   "comment_karma", "has_verified_email", "is_verified", "is_moderator"},
                  {}, path, line_no);
    AuthorProfile a;
    a.author_id = get_str(obj, "author_id", path, line_no);
    a.name = get_str(obj, "name", path, line_no);
    a.created_utc = get_int(obj, "created_utc", path, line_no);
    a.link_karma = get_int(obj, "link_karma", path, line_no);
    a.comment_karma = get_int(obj, "comment_karma", path, line_no);
    a.has_verified_email = get_bool(obj, "has_verified_email", path, line_no);
    a.is_verified = get_bool(obj, "is_verified", path, line_no);
    a.is_moderator = get_bool(obj, "is_moderator", path, line_no);
    return a;
}

json post_to_json(const Post& p) {
    json obj;
    obj["kind"] = "post";
    obj["id"] = p.id;
    obj["subreddit"] = p.subreddit;
    obj["title"] = p.title;
    obj["body"] = p.body;
    if (p.url) obj["url"] = *p.url;
    obj["created_utc"] = p.created_utc;
    obj["ups"] = p.ups;
    obj["downs"] = p.downs;
    obj["score"] = p.score;
    obj["num_comments"] = p.num_comments;
    obj["num_crossposts"] = p.num_crossposts;
    obj["author_id"] = p.author_id;
    return obj;
}

json author_to_json(const AuthorProfile& a) {
    json obj;
    obj["kind"] = "author";
    obj["author_id"] = a.author_id;
    obj["name"] = a.name;
    obj["created_utc"] = a.created_utc;
    obj["link_karma"] = a.link_karma;
    obj["comment_karma"] = a.comment_karma;
    obj["has_verified_email"] = a.has_verified_email;
    obj["is_verified"] = a.is_verified;
    obj["is_moderator"] = a.is_moderator;
    return obj;
}

} // namespace

const AuthorProfile& Corpus::author_of(const Post& post) const {
    auto it = authors.find(post.author_id);
    if (it == authors.end()) {
        throw ValidationError("missing author '" + post.author_id + "' for post '" +
                              post.id + "'");
    }
    return it->second;
}

void Corpus::finalize() {
    std::set<std::string> ids;
    for (const Post& p : posts) {
        if (p.id.empty()) throw ValidationError("post with empty id");
        if (!ids.insert(p.id).second) {
            throw ValidationError("duplicate post id '" + p.id + "'");
        }
        if (p.created_utc > snapshot_utc) {
            throw ValidationError("post '" + p.id + "' created after snapshot_utc");
        }
        if (p.ups < 0 || p.downs < 0 || p.num_comments < 0 || p.num_crossposts < 0) {
            throw ValidationError("post '" + p.id + "' has a negative counter");
        }
        if (!authors.contains(p.author_id)) {
            throw ValidationError("missing author '" + p.author_id + "' for post '" +
                                  p.id + "'");
        }
    }
    for (const auto& [id, a] : authors) {
        if (id.empty() || a.author_id.empty()) {
            throw ValidationError("author with empty id");
        }
        if (id != a.author_id) {
            throw ValidationError("author map key '" + id + "' does not match record '" +
                                  a.author_id + "'");
        }
        if (a.created_utc > snapshot_utc) {
            throw ValidationError("author '" + id + "' created after snapshot_utc");
        }
    }
    std::sort(posts.begin(), posts.end(), [](const Post& a, const Post& b) {
        if (a.created_utc != b.created_utc) return a.created_utc < b.created_utc;
        return a.id < b.id;
    });
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file '" + path + "'");

    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    bool have_meta = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            fail_line(path, line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object() || !obj.contains("kind") || !obj.at("kind").is_string()) {
            fail_line(path, line_no, "expected an object with a 'kind' field");
        }
        const std::string kind = obj.at("kind").get<std::string>();
        if (!have_meta) {
            if (kind != "meta") fail_line(path, line_no, "first line must be the meta record");
            expect_fields(obj, {"kind", "snapshot_utc"}, {}, path, line_no);
            corpus.snapshot_utc = get_int(obj, "snapshot_utc", path, line_no);
            have_meta = true;
            continue;
        }
        if (kind == "post") {
            corpus.posts.push_back(parse_post(obj, path, line_no));
        } else if (kind == "author") {
            AuthorProfile a = parse_author(obj, path, line_no);
            if (corpus.authors.contains(a.author_id)) {
                fail_line(path, line_no, "duplicate author id '" + a.author_id + "'");
            }
            corpus.authors.emplace(a.author_id, std::move(a));
        } else if (kind == "meta") {
            fail_line(path, line_no, "duplicate meta record");
        } else {
            fail_line(path, line_no, "unknown kind '" + kind + "'");
        }
    }
    if (!have_meta) {
        throw ParseError(path + ": missing meta record with snapshot_utc");
    }
    corpus.finalize();
    return corpus;
}

void save_corpus(const Corpus& corpus, std::ostream& out) {
    json meta;
    meta["kind"] = "meta";
    meta["snapshot_utc"] = corpus.snapshot_utc;
    out << meta.dump() << '\n';
    for (const auto& [id, author] : corpus.authors) {
        out << author_to_json(author).dump() << '\n';
    }
    for (const Post& post : corpus.posts) {
        out << post_to_json(post).dump() << '\n';
    }
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write corpus file '" + path + "'");
    save_corpus(corpus, out);
}

std::optional<std::string> url_domain(const std::string& url) {
    const std::string lowered = ascii_lower(url);
    std::size_t scheme_end = lowered.find("://");
    if (scheme_end == std::string::npos) return std::nullopt;
    const std::string scheme = lowered.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") return std::nullopt;

    std::size_t auth_begin = scheme_end + 3;
    std::size_t auth_end = lowered.find_first_of("/?#", auth_begin);
    if (auth_end == std::string::npos) auth_end = lowered.size();
    std::string authority = lowered.substr(auth_begin, auth_end - auth_begin);

    if (std::size_t at = authority.rfind('@'); at != std::string::npos) {
        authority = authority.substr(at + 1);
    }
    if (!authority.empty() && authority.front() == '[') {
        // bracketed IPv6 literal
        std::size_t close = authority.find(']');
        if (close == std::string::npos) return std::nullopt;
        authority = authority.substr(1, close - 1);
    } else if (std::size_t colon = authority.rfind(':'); colon != std::string::npos) {
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) return std::nullopt;
    return authority;
}

WotLookup wot_lookup(const std::optional<std::string>& url, const WotTable& table,
                     std::ostream* warn) {
    if (!url) return {0.0, false};
    auto domain = url_domain(*url);
    if (!domain) {
        if (warn) *warn << "warning: unparsable URL '" << *url << "', treated as absent\n";
        return {0.0, false};
    }
    auto it = table.entries.find(*domain);
    double score = it != table.entries.end() ? it->second : table.default_score;
    score = std::clamp(score, 0.0, 1.0);
    return {score, true};
}

WotTable load_wot_table(const std::string& path, double default_score) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open WOT table '" + path + "'");
    WotTable table;
    table.default_score = default_score;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) fail_line(path, line_no, "expected domain<TAB>score");
        std::string domain = ascii_lower(line.substr(0, tab));
        if (domain.empty() || domain.find('/') != std::string::npos ||
            domain.find("://") != std::string::npos) {
            fail_line(path, line_no, "domain must be bare (no scheme or path)");
        }
        const std::string score_text = line.substr(tab + 1);
        double score = 0.0;
        auto [ptr, ec] = std::from_chars(score_text.data(),
                                         score_text.data() + score_text.size(), score);
        if (ec != std::errc{} || ptr != score_text.data() + score_text.size()) {
            fail_line(path, line_no, "score is not a number");
        }
        if (score < 0.0 || score > 100.0) {
            fail_line(path, line_no, "score must be within [0,100]");
        }
        table.entries[domain] = score / 100.0;
    }
    return table;
}

} // namespace credrep
