#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace credrep {

/// Security concept categories tagged by the extractor.
enum class Category {
    means_of_attack,
    consequence,
    software,
    hardware,
    operating_system,
    version,
    network_term,
    file_name,
    technical_term,
};

std::string to_string(Category category);
std::optional<Category> parse_category(const std::string& name);

/// Gazetteer mapping normalized terms (lower-case, single-spaced) to their
/// category. Immutable after load.
class ConceptLexicon {
public:
    /// Normalizes the term before insert. Conflicting categories for the same
    /// normalized term throw ValidationError; exact duplicates are idempotent.
    void add(const std::string& term, Category category);

    std::optional<Category> find(const std::string& normalized_term) const;
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, Category>& entries() const { return entries_; }

    /// Longest entry length, in tokens. Bounds the greedy-match window.
    std::size_t max_term_tokens() const { return max_term_tokens_; }

    /// Stable content hash over sorted (term, category) pairs.
    std::string fingerprint() const;

private:
    std::map<std::string, Category> entries_;
    std::size_t max_term_tokens_ = 0;
};

struct Token {
    std::string text;        // normalized
    std::size_t begin = 0;   // byte offset in the source text
    std::size_t end = 0;     // one past the last byte
};

struct ConceptMention {
    std::string term;  // normalized, space-joined for multi-token terms
    Category category = Category::technical_term;
    std::size_t begin = 0;  // byte span in the source text
    std::size_t end = 0;
};

/// Lower-cased tokens split on Unicode whitespace, with sentence punctuation
/// stripped at token edges. Interior dots survive, so version strings and
/// dotted file names come through whole. Total function.
std::vector<Token> normalize(const std::string& text);

/// Greedy longest-match-first scan of the normalized token stream against the
/// lexicon, with open-class version-number and file-name tokens matched by
/// pattern. Every occurrence yields one mention; mentions never overlap.
std::vector<ConceptMention> extract_concepts(const std::string& text,
                                             const ConceptLexicon& lexicon);

/// True for digit-dot sequences like "2.0.0".
bool is_version_token(const std::string& token);

/// True for tokens ending in a dot plus a known file extension.
bool is_filename_token(const std::string& token);

/// Reads a `term<TAB>category` TSV. Unknown category names are rejected with
/// a line number.
ConceptLexicon load_lexicon(const std::string& path);

/// Shipped seed lexicon (~200 terms across the nine categories).
const ConceptLexicon& default_lexicon();

} // namespace credrep
