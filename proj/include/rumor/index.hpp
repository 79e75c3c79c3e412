#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rumor/corpus.hpp"
#include "rumor/textpipe.hpp"

namespace rumor {

struct Posting {
    std::uint32_t article;  // ordinal into the reference set
    std::uint32_t count;    // occurrences of the term in that article

    bool operator==(const Posting&) const = default;
};

struct WeightedTerm {
    TermId term;
    double weight;
};

/// Inverted index over the reference article bodies. Immutable once built;
/// every scoring routine reads it concurrently without locking.
class ArticleIndex {
public:
    std::size_t size() const noexcept { return article_ids_.size(); }
    const Vocabulary& vocabulary() const noexcept { return vocab_; }
    const TokenizerConfig& tokenizer() const noexcept { return tokenizer_; }

    /// Postings for `term`, sorted by article ordinal.
    std::span<const Posting> postings(TermId term) const;
    /// L2-normalized TF-IDF weights aligned with postings(term).
    std::span<const double> posting_tfidf(TermId term) const;

    std::uint32_t doc_len(std::size_t article) const { return doc_len_.at(article); }
    const std::vector<std::uint32_t>& doc_lens() const noexcept { return doc_len_; }

    /// Sparse TF-IDF vector of one article, sorted by term id. Empty for
    /// articles that tokenized to nothing.
    std::span<const WeightedTerm> tfidf_vector(std::size_t article) const;

    /// ln(N / df) for a term of the vocabulary.
    double tfidf_idf(TermId term) const { return tfidf_idf_.at(term); }

    const std::string& article_id(std::size_t ordinal) const { return article_ids_.at(ordinal); }
    const std::vector<std::string>& article_ids() const noexcept { return article_ids_; }
    std::optional<std::size_t> ordinal_of(std::string_view article_id) const;

    /// Non-fatal notes collected while building (articles with no tokens).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    friend ArticleIndex build_index_from_tokens(std::vector<std::string>, std::span<const TokenSeq>,
                                                TokenizerConfig);
    friend ArticleIndex load_index(const std::filesystem::path&);

    void finish();  // derives TF-IDF data and warnings from postings

    TokenizerConfig tokenizer_;
    Vocabulary vocab_;
    std::vector<std::string> article_ids_;
    std::vector<std::uint32_t> doc_len_;
    std::vector<std::size_t> posting_offsets_;  // size v + 1
    std::vector<Posting> postings_;
    std::vector<double> posting_tfidf_;
    std::vector<double> tfidf_idf_;
    std::vector<std::size_t> vector_offsets_;  // size n + 1
    std::vector<WeightedTerm> vector_entries_;
    std::vector<std::string> warnings_;
};

/// Tokenizes every article body with `tokenizer` and indexes the result.
/// Throws EmptyCorpus for no articles, AllEmptyAfterTokenize when no article
/// yields a single token.
ArticleIndex build_index(std::span<const RumorArticle> articles, const TokenizerConfig& tokenizer);

/// Indexes pre-tokenized documents. `ids` and `docs` run in parallel.
ArticleIndex build_index_from_tokens(std::vector<std::string> ids, std::span<const TokenSeq> docs,
                                     TokenizerConfig tokenizer);

/// Binary index file: "RUMORIDX" magic, one version byte, then little-endian
/// fields in a fixed order. Identical indexes serialize to identical bytes.
void save_index(const std::filesystem::path& path, const ArticleIndex& index);

/// Throws BadIndexFormat on a wrong magic, an unknown version or truncation.
ArticleIndex load_index(const std::filesystem::path& path);

inline constexpr std::uint8_t kIndexFormatVersion = 1;

}  // namespace rumor
