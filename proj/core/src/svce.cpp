#include "credrep/svce.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <span>
#include <string_view>

#include "credrep/errors.hpp"

namespace credrep {

namespace {

struct Decoded {
    char32_t cp = 0;
    std::size_t len = 1;
};

// Lenient UTF-8 decode; invalid bytes pass through as single code points so
// normalize stays a total function.
Decoded decode_utf8(std::string_view s, std::size_t i) {
    const unsigned char c0 = static_cast<unsigned char>(s[i]);
    if (c0 < 0x80) return {c0, 1};
    auto cont = [&](std::size_t off) {
        return i + off < s.size() &&
               (static_cast<unsigned char>(s[i + off]) & 0xC0) == 0x80;
    };
    if ((c0 & 0xE0) == 0xC0 && cont(1)) {
        return {static_cast<char32_t>(((c0 & 0x1F) << 6) |
                                      (static_cast<unsigned char>(s[i + 1]) & 0x3F)),
                2};
    }
    if ((c0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        return {static_cast<char32_t>(((c0 & 0x0F) << 12) |
                                      ((static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6) |
                                      (static_cast<unsigned char>(s[i + 2]) & 0x3F)),
                3};
    }
    if ((c0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        return {static_cast<char32_t>(((c0 & 0x07) << 18) |
                                      ((static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12) |
                                      ((static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6) |
                                      (static_cast<unsigned char>(s[i + 3]) & 0x3F)),
                4};
    }
    return {c0, 1};
}

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Sentence punctuation stripped at token edges. Hyphens, slashes, and signs
// stay, so hyphenated terms, paths, and tokens like "c++" survive.
bool is_edge_punct(char32_t cp) {
    switch (cp) {
        case '.': case ',': case ';': case ':': case '!': case '?':
        case '\'': case '"': case '(': case ')': case '[': case ']':
        case '{': case '}': case '<': case '>': case '*': case '_':
        case '`': case '~': case '|':
        case 0x2018: case 0x2019: case 0x201C: case 0x201D:  // curly quotes
        case 0x2013: case 0x2014: case 0x2026:               // dashes, ellipsis
        case 0xAB: case 0xBB:                                // guillemets
            return true;
        default:
            return false;
    }
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string join_terms(std::span<const Token> tokens, std::size_t begin, std::size_t count) {
    std::string key;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) key += ' ';
        key += tokens[begin + i].text;
    }
    return key;
}

} // namespace

std::string to_string(Category category) {
    switch (category) {
        case Category::means_of_attack: return "means-of-attack";
        case Category::consequence: return "consequence";
        case Category::software: return "software";
        case Category::hardware: return "hardware";
        case Category::operating_system: return "operating-system";
        case Category::version: return "version";
        case Category::network_term: return "network-term";
        case Category::file_name: return "file-name";
        case Category::technical_term: return "technical-term";
    }
    return "technical-term";
}

std::optional<Category> parse_category(const std::string& name) {
    static const std::array<Category, 9> all = {
        Category::means_of_attack, Category::consequence,     Category::software,
        Category::hardware,        Category::operating_system, Category::version,
        Category::network_term,    Category::file_name,        Category::technical_term,
    };
    for (Category c : all) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

std::vector<Token> normalize(const std::string& text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        Decoded d = decode_utf8(text, i);
        if (is_unicode_space(d.cp)) {
            i += d.len;
            continue;
        }
        std::size_t begin = i;
        std::size_t end = i;
        while (end < text.size()) {
            Decoded e = decode_utf8(text, end);
            if (is_unicode_space(e.cp)) break;
            end += e.len;
        }
        i = end;

        // Strip punctuation from both edges.
        while (begin < end) {
            Decoded front = decode_utf8(text, begin);
            if (!is_edge_punct(front.cp)) break;
            begin += front.len;
        }
        while (end > begin) {
            std::size_t last = end - 1;
            while (last > begin && (static_cast<unsigned char>(text[last]) & 0xC0) == 0x80) {
                --last;
            }
            Decoded back = decode_utf8(text, last);
            if (!is_edge_punct(back.cp)) break;
            end = last;
        }
        if (begin < end) {
            tokens.push_back(
                {ascii_lower(std::string_view(text).substr(begin, end - begin)), begin, end});
        }
    }
    return tokens;
}

bool is_version_token(const std::string& token) {
    if (token.size() < 3) return false;
    bool has_dot = false;
    char prev = 0;
    for (char c : token) {
        if (c == '.') {
            if (prev == '.' || prev == 0) return false;
            has_dot = true;
        } else if (c < '0' || c > '9') {
            return false;
        }
        prev = c;
    }
    return has_dot && prev != '.';
}

bool is_filename_token(const std::string& token) {
    static const std::set<std::string> extensions = {
        "exe", "dll", "sys",  "pdf", "doc", "docx", "xls",  "xlsx", "ppt",  "pptx",
        "js",  "php", "py",   "sh",  "bat", "ps1",  "vbs",  "scr",  "zip",  "rar",
        "tar", "gz",  "7z",   "apk", "jar", "bin",  "iso",  "txt",  "csv",  "sql",
        "db",  "dmg", "msi",  "so",  "ini", "cfg",  "conf", "log",  "bak",  "torrent",
    };
    std::size_t dot = token.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= token.size()) return false;
    return extensions.contains(token.substr(dot + 1));
}

void ConceptLexicon::add(const std::string& term, Category category) {
    const std::vector<Token> tokens = normalize(term);
    if (tokens.empty()) {
        throw ValidationError("lexicon term '" + term + "' is empty after normalization");
    }
    std::string key = join_terms(tokens, 0, tokens.size());
    auto [it, inserted] = entries_.emplace(key, category);
    if (!inserted && it->second != category) {
        throw ValidationError("lexicon term '" + key + "' already mapped to " +
                              to_string(it->second));
    }
    max_term_tokens_ = std::max(max_term_tokens_, tokens.size());
}

std::optional<Category> ConceptLexicon::find(const std::string& normalized_term) const {
    auto it = entries_.find(normalized_term);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::string ConceptLexicon::fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& [term, category] : entries_) {
        mix(term);
        mix("\t");
        mix(to_string(category));
        mix("\n");
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) {
        buf[i] = digits[(h >> (60 - 4 * i)) & 0xF];
    }
    buf[16] = '\0';
    return std::string("fnv1a:") + buf;
}

std::vector<ConceptMention> extract_concepts(const std::string& text,
                                             const ConceptLexicon& lexicon) {
    if (lexicon.empty()) throw ValidationError("extract_concepts: empty lexicon");

    const std::vector<Token> tokens = normalize(text);
    std::vector<ConceptMention> mentions;
    std::size_t i = 0;
    while (i < tokens.size()) {
        const std::size_t max_len = std::min(lexicon.max_term_tokens(), tokens.size() - i);
        bool matched = false;
        for (std::size_t len = max_len; len >= 1; --len) {
            std::string key = join_terms(tokens, i, len);
            if (auto category = lexicon.find(key)) {
                mentions.push_back({std::move(key), *category, tokens[i].begin,
                                    tokens[i + len - 1].end});
                i += len;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        const Token& t = tokens[i];
        if (is_version_token(t.text)) {
            mentions.push_back({t.text, Category::version, t.begin, t.end});
        } else if (is_filename_token(t.text)) {
            mentions.push_back({t.text, Category::file_name, t.begin, t.end});
        }
        ++i;
    }
    return mentions;
}

ConceptLexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open lexicon file '" + path + "'");
    ConceptLexicon lexicon;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected term<TAB>category");
        }
        const std::string term = line.substr(0, tab);
        const std::string category_name = line.substr(tab + 1);
        auto category = parse_category(category_name);
        if (!category) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": unknown category '" +
                             category_name + "'");
        }
        lexicon.add(term, *category);
    }
    return lexicon;
}

} // namespace credrep
