#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rumor {

/// Ordered list of normalized terms. Every token is nonempty and free of
/// whitespace.
using TokenSeq = std::vector<std::string>;

using TermId = std::uint32_t;

struct TokenizerConfig {
    std::set<std::string, std::less<>> stopwords;
    std::size_t min_token_len = 2;  // in code points
    bool strip_urls = true;
    bool strip_mentions = true;
    bool stemming = false;

    /// Default settings with the bundled English stopword list.
    static TokenizerConfig defaults();

    bool operator==(const TokenizerConfig&) const = default;
};

/// Parses a stopword file body: one word per line, '#' comment lines and
/// blank lines ignored. Words are normalized the same way tokens are.
std::set<std::string, std::less<>> parse_stopwords(std::string_view text);
std::set<std::string, std::less<>> load_stopwords(const std::filesystem::path& path);

/// Lowercases, drops URLs and @-mentions, keeps hashtag words without the
/// '#', splits on punctuation (apostrophes are deleted rather than split on),
/// then removes stopwords and tokens shorter than min_token_len.
TokenSeq tokenize(std::string_view text, const TokenizerConfig& config);

/// Corpus statistics over a collection of token sequences. Term ids follow
/// first appearance order.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Reassembles a vocabulary from stored parts (index deserialization).
    static Vocabulary from_parts(std::vector<std::string> terms,
                                 std::vector<std::uint32_t> doc_freq,
                                 std::size_t n_docs, double avgdl);

    std::size_t size() const noexcept { return terms_.size(); }
    std::size_t n_docs() const noexcept { return n_docs_; }
    double avgdl() const noexcept { return avgdl_; }

    std::optional<TermId> find(std::string_view term) const;
    const std::string& term(TermId id) const { return terms_.at(id); }
    std::uint32_t doc_freq(TermId id) const { return doc_freq_.at(id); }
    std::uint32_t doc_freq(std::string_view term) const;

    const std::vector<std::string>& terms() const noexcept { return terms_; }
    const std::vector<std::uint32_t>& doc_freqs() const noexcept { return doc_freq_; }

private:
    friend Vocabulary build_vocabulary(std::span<const TokenSeq> docs);

    TermId intern(const std::string& term);

    std::vector<std::string> terms_;
    std::unordered_map<std::string, TermId> ids_;
    std::vector<std::uint32_t> doc_freq_;
    std::size_t n_docs_ = 0;
    double avgdl_ = 0.0;
};

/// Throws EmptyCorpus when `docs` is empty and AllEmptyAfterTokenize when
/// every document is empty.
Vocabulary build_vocabulary(std::span<const TokenSeq> docs);

std::map<std::string, std::uint32_t> term_counts(const TokenSeq& doc);

/// Porter (1980) suffix stripping. Non-ASCII words are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace rumor
