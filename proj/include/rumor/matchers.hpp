#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rumor/corpus.hpp"
#include "rumor/embedding.hpp"
#include "rumor/index.hpp"
#include "rumor/lexicon.hpp"
#include "rumor/textpipe.hpp"

namespace rumor {

struct BM25Params {
    double k1 = 1.2;
    double b = 0.75;

    /// Throws InvalidArgument unless k1 >= 0 and 0 <= b <= 1.
    void validate() const;
};

/// Cosine between the tweet's TF-IDF vector (raw tf, idf = ln(N/df) from the
/// index) and each article's normalized vector. Out-of-vocabulary terms are
/// ignored; a zero operand scores 0. Every score lies in [0, 1].
std::vector<double> score_tfidf(const TokenSeq& tweet_tokens, const ArticleIndex& index);

/// Okapi BM25 with the tweet as query and each article as document:
///
///   sum over unique query terms q of
///     idf(q) * f(q,d) * (k1 + 1) / (f(q,d) + k1 * (1 - b + b * |d| / avgdl))
///
/// where idf(q) = ln(1 + (N - df(q) + 0.5) / (df(q) + 0.5)) is never negative.
std::vector<double> score_bm25(const TokenSeq& tweet_tokens, const ArticleIndex& index,
                               const BM25Params& params);

/// BM25 scorer with per-article length factors precomputed, for batch use.
class Bm25Scorer {
public:
    Bm25Scorer(const ArticleIndex& index, BM25Params params);

    /// Writes one score per article into `out` (resized as needed).
    void score(const TokenSeq& tweet_tokens, std::vector<double>& out) const;

    double idf(TermId term) const { return idf_.at(term); }

private:
    const ArticleIndex* index_;
    BM25Params params_;
    std::vector<double> idf_;
    std::vector<double> length_norm_;  // k1 * (1 - b + b * |d| / avgdl)
};

struct BestMatch {
    std::size_t ordinal = 0;
    std::string article_id;
    double score = 0.0;
};

/// Argmax of `scores`; ties go to the lowest ordinal. Throws EmptyScores for
/// an empty list and InvalidArgument when the length differs from the index.
BestMatch best_match(std::span<const double> scores, const ArticleIndex& index);

struct MatchResult {
    std::string tweet_id;
    std::optional<std::string> best_article_id;
    double best_score = 0.0;
    std::optional<std::vector<double>> scores;
    bool undefined_representation = false;
};

/// RUMOR iff best_score is strictly greater than `threshold`.
Label classify(const MatchResult& result, double threshold);

enum class MatcherKind { Tfidf, Bm25, Embedding, DocVec, Lexicon };

std::string_view to_string(MatcherKind kind) noexcept;
/// Case-insensitive: tfidf, bm25, embedding (alias word2vec), docvec
/// (alias doc2vec), lexicon.
std::optional<MatcherKind> parse_matcher_kind(std::string_view s) noexcept;

/// One scoring algorithm bound to an index. Implementations are immutable
/// and match() may be called from any number of threads at once.
class Matcher {
public:
    virtual ~Matcher() = default;

    virtual MatcherKind kind() const noexcept = 0;
    virtual MatchResult match(const Tweet& tweet, bool keep_scores = false) const = 0;

    /// Whether the rumor decision is a score threshold (false for lexicon,
    /// which decides by pattern hit alone).
    virtual bool thresholded() const noexcept { return true; }

    Label decide(const MatchResult& result, double threshold) const;
};

struct MatcherResources {
    BM25Params bm25;
    const EmbeddingTable* word_vectors = nullptr;  // required for Embedding
    const EmbeddingTable* doc_vectors = nullptr;   // required for DocVec
    const LexiconPatternSet* lexicon = nullptr;    // defaults when null
};

/// The returned matcher keeps references to `index` and to the tables in
/// `resources`; they must outlive it. Throws InvalidArgument when a required
/// table is missing.
std::unique_ptr<Matcher> make_matcher(MatcherKind kind, const ArticleIndex& index,
                                      const MatcherResources& resources);

/// Matches every tweet with `jobs` worker threads. The result vector is in
/// input order regardless of the job count or scheduling.
std::vector<MatchResult> match_batch(const Matcher& matcher, std::span<const Tweet> tweets,
                                     std::size_t jobs);

/// One line of matches.jsonl.
struct MatchRecord {
    std::string tweet_id;
    std::optional<std::string> article_id;
    std::optional<double> score;  // absent for lexicon output
    Label label = Label::NonRumor;

    bool operator==(const MatchRecord&) const = default;
};

MatchRecord to_record(const Matcher& matcher, const MatchResult& result, double threshold);
std::string to_json_line(const MatchRecord& record);
MatchRecord parse_match_record(std::string_view json_line, std::size_t line_no);
std::vector<MatchRecord> load_matches(const std::filesystem::path& path);

}  // namespace rumor
