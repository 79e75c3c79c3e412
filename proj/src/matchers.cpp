#include "rumor/matchers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "rumor/error.hpp"
#include "rumor/io.hpp"

namespace rumor {

namespace {

using json = nlohmann::ordered_json;

// Distinct in-vocabulary term ids of a token sequence, ascending.
std::vector<TermId> unique_terms(const TokenSeq& tokens, const Vocabulary& vocab)
{
    std::vector<TermId> ids;
    ids.reserve(tokens.size());
    for (const auto& token : tokens) {
        if (auto id = vocab.find(token)) {
            ids.push_back(*id);
        }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

void score_tfidf_into(const TokenSeq& tokens, const ArticleIndex& index, std::vector<double>& out)
{
    out.assign(index.size(), 0.0);
    const auto& vocab = index.vocabulary();

    std::vector<std::pair<TermId, double>> query;
    for (const auto& [term, count] : term_counts(tokens)) {
        auto id = vocab.find(term);
        if (!id) {
            continue;
        }
        double w = count * index.tfidf_idf(*id);
        if (w > 0.0) {
            query.emplace_back(*id, w);
        }
    }
    double norm_sq = 0.0;
    for (const auto& [id, w] : query) {
        norm_sq += w * w;
    }
    if (norm_sq == 0.0) {
        return;
    }
    const double norm = std::sqrt(norm_sq);
    for (const auto& [id, w] : query) {
        const double q = w / norm;
        auto postings = index.postings(id);
        auto weights = index.posting_tfidf(id);
        for (std::size_t k = 0; k < postings.size(); ++k) {
            out[postings[k].article] += q * weights[k];
        }
    }
    for (auto& s : out) {
        s = std::clamp(s, 0.0, 1.0);
    }
}

MatchResult from_scores(const Tweet& tweet, std::vector<double> scores, const ArticleIndex& index,
                        bool keep_scores)
{
    MatchResult r;
    r.tweet_id = tweet.id;
    auto best = best_match(scores, index);
    r.best_article_id = std::move(best.article_id);
    r.best_score = best.score;
    if (keep_scores) {
        r.scores = std::move(scores);
    }
    return r;
}

class TfidfMatcher final : public Matcher {
public:
    explicit TfidfMatcher(const ArticleIndex& index) : index_(index) {}

    MatcherKind kind() const noexcept override { return MatcherKind::Tfidf; }

    MatchResult match(const Tweet& tweet, bool keep_scores) const override
    {
        std::vector<double> scores;
        score_tfidf_into(tokenize(tweet.text, index_.tokenizer()), index_, scores);
        return from_scores(tweet, std::move(scores), index_, keep_scores);
    }

private:
    const ArticleIndex& index_;
};

class Bm25Matcher final : public Matcher {
public:
    Bm25Matcher(const ArticleIndex& index, BM25Params params) : index_(index), scorer_(index, params) {}

    MatcherKind kind() const noexcept override { return MatcherKind::Bm25; }

    MatchResult match(const Tweet& tweet, bool keep_scores) const override
    {
        std::vector<double> scores;
        scorer_.score(tokenize(tweet.text, index_.tokenizer()), scores);
        return from_scores(tweet, std::move(scores), index_, keep_scores);
    }

private:
    const ArticleIndex& index_;
    Bm25Scorer scorer_;
};

// Word-average and document-vector matching share this class. For document
// vectors the tweet's own id is its single "token", so the tweet vector is
// looked up in the same table that holds the article vectors.
class EmbeddingMatcher final : public Matcher {
public:
    EmbeddingMatcher(MatcherKind kind, const ArticleIndex& index, const EmbeddingTable& table,
                     std::vector<std::vector<double>> article_vectors)
        : kind_(kind), index_(index), table_(table), article_vectors_(std::move(article_vectors))
    {
        // surfaces DIM_MISMATCH at construction rather than per tweet
        (void)score_embedding({}, article_vectors_, table_);
    }

    MatcherKind kind() const noexcept override { return kind_; }

    MatchResult match(const Tweet& tweet, bool keep_scores) const override
    {
        TokenSeq tokens = kind_ == MatcherKind::DocVec ? TokenSeq{tweet.id}
                                                        : tokenize(tweet.text, index_.tokenizer());
        auto scored = score_embedding(tokens, article_vectors_, table_);
        MatchResult r;
        r.tweet_id = tweet.id;
        r.undefined_representation = scored.undefined_representation;
        if (!scored.undefined_representation) {
            auto best = best_match(scored.scores, index_);
            r.best_article_id = std::move(best.article_id);
            r.best_score = best.score;
        }
        if (keep_scores) {
            r.scores = std::move(scored.scores);
        }
        return r;
    }

private:
    MatcherKind kind_;
    const ArticleIndex& index_;
    const EmbeddingTable& table_;
    std::vector<std::vector<double>> article_vectors_;
};

class LexiconMatcher final : public Matcher {
public:
    explicit LexiconMatcher(const LexiconPatternSet& patterns) : patterns_(patterns) {}

    MatcherKind kind() const noexcept override { return MatcherKind::Lexicon; }
    bool thresholded() const noexcept override { return false; }

    MatchResult match(const Tweet& tweet, bool) const override
    {
        MatchResult r;
        r.tweet_id = tweet.id;
        r.best_score = match_lexicon(tweet.text, patterns_) ? 1.0 : 0.0;
        return r;
    }

private:
    const LexiconPatternSet& patterns_;
};

// Keeps a defaulted pattern set alive alongside the matcher that uses it.
class OwningLexiconMatcher final : public Matcher {
public:
    OwningLexiconMatcher() : patterns_(LexiconPatternSet::defaults()), inner_(patterns_) {}

    MatcherKind kind() const noexcept override { return MatcherKind::Lexicon; }
    bool thresholded() const noexcept override { return false; }
    MatchResult match(const Tweet& tweet, bool keep) const override { return inner_.match(tweet, keep); }

private:
    LexiconPatternSet patterns_;
    LexiconMatcher inner_;
};

}  // namespace

void BM25Params::validate() const
{
    if (!(k1 >= 0.0) || !std::isfinite(k1)) {
        throw Error(ErrorCode::InvalidArgument, "bm25 k1 must be >= 0");
    }
    if (!(b >= 0.0 && b <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "bm25 b must lie in [0, 1]");
    }
}

std::vector<double> score_tfidf(const TokenSeq& tweet_tokens, const ArticleIndex& index)
{
    std::vector<double> out;
    score_tfidf_into(tweet_tokens, index, out);
    return out;
}

Bm25Scorer::Bm25Scorer(const ArticleIndex& index, BM25Params params) : index_(&index), params_(params)
{
    params_.validate();
    const auto& vocab = index.vocabulary();
    const auto n = static_cast<double>(vocab.n_docs());
    idf_.resize(vocab.size());
    for (TermId t = 0; t < vocab.size(); ++t) {
        const auto df = static_cast<double>(vocab.doc_freq(t));
        idf_[t] = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
    }
    length_norm_.resize(index.size());
    for (std::size_t d = 0; d < index.size(); ++d) {
        length_norm_[d] = params_.k1 * (1.0 - params_.b + params_.b * index.doc_len(d) / vocab.avgdl());
    }
}

void Bm25Scorer::score(const TokenSeq& tweet_tokens, std::vector<double>& out) const
{
    out.assign(index_->size(), 0.0);
    const double k1_plus_1 = params_.k1 + 1.0;
    for (TermId t : unique_terms(tweet_tokens, index_->vocabulary())) {
        const double idf = idf_[t];
        for (const auto& p : index_->postings(t)) {
            const double f = p.count;
            out[p.article] += idf * f * k1_plus_1 / (f + length_norm_[p.article]);
        }
    }
}

std::vector<double> score_bm25(const TokenSeq& tweet_tokens, const ArticleIndex& index, const BM25Params& params)
{
    std::vector<double> out;
    Bm25Scorer(index, params).score(tweet_tokens, out);
    return out;
}

BestMatch best_match(std::span<const double> scores, const ArticleIndex& index)
{
    if (scores.empty()) {
        throw Error(ErrorCode::EmptyScores, "no scores to rank");
    }
    if (scores.size() != index.size()) {
        throw Error(ErrorCode::InvalidArgument, "score list length " + std::to_string(scores.size()) +
                                                    " differs from article count " + std::to_string(index.size()));
    }
    std::size_t best = 0;
    for (std::size_t d = 1; d < scores.size(); ++d) {
        if (scores[d] > scores[best]) {
            best = d;
        }
    }
    return BestMatch{best, index.article_id(best), scores[best]};
}

Label classify(const MatchResult& result, double threshold)
{
    return result.best_score > threshold ? Label::Rumor : Label::NonRumor;
}

Label Matcher::decide(const MatchResult& result, double threshold) const
{
    if (thresholded()) {
        return classify(result, threshold);
    }
    return result.best_score > 0.0 ? Label::Rumor : Label::NonRumor;
}

std::string_view to_string(MatcherKind kind) noexcept
{
    switch (kind) {
    case MatcherKind::Tfidf: return "TFIDF";
    case MatcherKind::Bm25: return "BM25";
    case MatcherKind::Embedding: return "EMBEDDING";
    case MatcherKind::DocVec: return "DOCVEC";
    case MatcherKind::Lexicon: return "LEXICON";
    }
    return "UNKNOWN";
}

std::optional<MatcherKind> parse_matcher_kind(std::string_view s) noexcept
{
    std::string lower(s);
    for (auto& c : lower) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    }
    if (lower == "tfidf" || lower == "tf-idf") return MatcherKind::Tfidf;
    if (lower == "bm25") return MatcherKind::Bm25;
    if (lower == "embedding" || lower == "word2vec") return MatcherKind::Embedding;
    if (lower == "docvec" || lower == "doc2vec") return MatcherKind::DocVec;
    if (lower == "lexicon") return MatcherKind::Lexicon;
    return std::nullopt;
}

std::unique_ptr<Matcher> make_matcher(MatcherKind kind, const ArticleIndex& index, const MatcherResources& resources)
{
    switch (kind) {
    case MatcherKind::Tfidf:
        return std::make_unique<TfidfMatcher>(index);
    case MatcherKind::Bm25:
        return std::make_unique<Bm25Matcher>(index, resources.bm25);
    case MatcherKind::Embedding:
        if (resources.word_vectors == nullptr) {
            throw Error(ErrorCode::InvalidArgument, "EMBEDDING matcher needs a word vector file");
        }
        return std::make_unique<EmbeddingMatcher>(kind, index, *resources.word_vectors,
                                                  article_vectors_from_words(index, *resources.word_vectors));
    case MatcherKind::DocVec:
        if (resources.doc_vectors == nullptr) {
            throw Error(ErrorCode::InvalidArgument, "DOCVEC matcher needs a document vector file");
        }
        return std::make_unique<EmbeddingMatcher>(kind, index, *resources.doc_vectors,
                                                  article_vectors_from_docvecs(index, *resources.doc_vectors));
    case MatcherKind::Lexicon:
        if (resources.lexicon == nullptr) {
            return std::make_unique<OwningLexiconMatcher>();
        }
        return std::make_unique<LexiconMatcher>(*resources.lexicon);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown matcher");
}

std::vector<MatchResult> match_batch(const Matcher& matcher, std::span<const Tweet> tweets, std::size_t jobs)
{
    std::vector<MatchResult> results(tweets.size());
    if (tweets.empty()) {
        return results;
    }
    jobs = std::clamp<std::size_t>(jobs, 1, tweets.size());
    if (jobs == 1) {
        for (std::size_t i = 0; i < tweets.size(); ++i) {
            results[i] = matcher.match(tweets[i]);
        }
        return results;
    }

    // Workers claim fixed-size blocks; each result lands in its input slot.
    constexpr std::size_t kBlock = 512;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        try {
            while (!failed.load(std::memory_order_relaxed)) {
                std::size_t begin = next.fetch_add(kBlock);
                if (begin >= tweets.size()) {
                    return;
                }
                std::size_t end = std::min(begin + kBlock, tweets.size());
                for (std::size_t i = begin; i < end; ++i) {
                    results[i] = matcher.match(tweets[i]);
                }
            }
        } catch (...) {
            if (!failed.exchange(true)) {
                failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

MatchRecord to_record(const Matcher& matcher, const MatchResult& result, double threshold)
{
    MatchRecord rec;
    rec.tweet_id = result.tweet_id;
    rec.article_id = result.best_article_id;
    if (matcher.thresholded()) {
        rec.score = result.best_score;
    }
    rec.label = matcher.decide(result, threshold);
    return rec;
}

std::string to_json_line(const MatchRecord& record)
{
    json obj;
    obj["tweet_id"] = record.tweet_id;
    obj["article_id"] = record.article_id ? json(*record.article_id) : json(nullptr);
    obj["score"] = record.score ? json(*record.score) : json(nullptr);
    obj["label"] = to_string(record.label);
    return obj.dump();
}

MatchRecord parse_match_record(std::string_view line, std::size_t line_no)
{
    auto bad = [&](std::string_view why) -> Error {
        return Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": " + std::string(why));
    };
    json obj = json::parse(line.begin(), line.end(), nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
        throw bad("invalid JSON object");
    }
    MatchRecord rec;
    auto id = obj.find("tweet_id");
    if (id == obj.end() || !id->is_string()) {
        throw bad("missing tweet_id");
    }
    rec.tweet_id = id->get<std::string>();
    if (auto a = obj.find("article_id"); a != obj.end() && !a->is_null()) {
        if (!a->is_string()) throw bad("non-string article_id");
        rec.article_id = a->get<std::string>();
    }
    if (auto s = obj.find("score"); s != obj.end() && !s->is_null()) {
        if (!s->is_number()) throw bad("non-numeric score");
        rec.score = s->get<double>();
    }
    auto label = obj.find("label");
    std::optional<Label> parsed;
    if (label != obj.end() && label->is_string()) {
        parsed = parse_label(label->get<std::string>());
    }
    if (!parsed) {
        throw bad("missing or unknown label");
    }
    rec.label = *parsed;
    return rec;
}

std::vector<MatchRecord> load_matches(const std::filesystem::path& path)
{
    std::vector<MatchRecord> out;
    std::unordered_set<std::string> seen;
    io::for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (io::is_blank(line)) {
            return;
        }
        auto rec = parse_match_record(line, line_no);
        if (!seen.insert(rec.tweet_id).second) {
            throw Error(ErrorCode::DuplicateId, rec.tweet_id);
        }
        out.push_back(std::move(rec));
    });
    return out;
}

}  // namespace rumor
