#include "rumor/index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <unordered_set>

#include "rumor/error.hpp"
#include "rumor/io.hpp"

namespace rumor {

namespace {

constexpr char kMagic[8] = {'R', 'U', 'M', 'O', 'R', 'I', 'D', 'X'};

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }

    void u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i) {
            u8(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }

    void u64(std::uint64_t v)
    {
        for (int i = 0; i < 8; ++i) {
            u8(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }

    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    void str(std::string_view s)
    {
        u32(static_cast<std::uint32_t>(s.size()));
        out_.write(s.data(), static_cast<std::streamsize>(s.size()));
    }

private:
    std::ostream& out_;
};

class Reader {
public:
    Reader(std::vector<char> bytes, std::string source) : bytes_(std::move(bytes)), source_(std::move(source)) {}

    std::uint8_t u8()
    {
        need(1);
        return static_cast<std::uint8_t>(bytes_[pos_++]);
    }

    std::uint32_t u32()
    {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(u8()) << (8 * i);
        }
        return v;
    }

    std::uint64_t u64()
    {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<std::uint64_t>(u8()) << (8 * i);
        }
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    std::string str()
    {
        auto n = u32();
        need(n);
        std::string s(bytes_.data() + pos_, n);
        pos_ += n;
        return s;
    }

    // Count prefix for an array whose elements take at least `min_elem` bytes.
    std::size_t count(std::size_t min_elem)
    {
        auto n = u64();
        if (min_elem > 0 && n > (bytes_.size() - pos_) / min_elem) {
            fail("implausible element count");
        }
        return static_cast<std::size_t>(n);
    }

    bool at_end() const { return pos_ == bytes_.size(); }

    [[noreturn]] void fail(std::string_view why) const
    {
        throw Error(ErrorCode::BadIndexFormat, source_ + ": " + std::string(why));
    }

private:
    void need(std::size_t n) const
    {
        if (bytes_.size() - pos_ < n) {
            fail("truncated file");
        }
    }

    std::vector<char> bytes_;
    std::string source_;
    std::size_t pos_ = 0;
};

}  // namespace

std::span<const Posting> ArticleIndex::postings(TermId term) const
{
    auto begin = posting_offsets_.at(term);
    auto end = posting_offsets_.at(term + 1);
    return std::span<const Posting>(postings_).subspan(begin, end - begin);
}

std::span<const double> ArticleIndex::posting_tfidf(TermId term) const
{
    auto begin = posting_offsets_.at(term);
    auto end = posting_offsets_.at(term + 1);
    return std::span<const double>(posting_tfidf_).subspan(begin, end - begin);
}

std::span<const WeightedTerm> ArticleIndex::tfidf_vector(std::size_t article) const
{
    auto begin = vector_offsets_.at(article);
    auto end = vector_offsets_.at(article + 1);
    return std::span<const WeightedTerm>(vector_entries_).subspan(begin, end - begin);
}

std::optional<std::size_t> ArticleIndex::ordinal_of(std::string_view article_id) const
{
    auto it = std::find(article_ids_.begin(), article_ids_.end(), article_id);
    if (it == article_ids_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(std::distance(article_ids_.begin(), it));
}

void ArticleIndex::finish()
{
    const auto n = static_cast<double>(vocab_.n_docs());
    tfidf_idf_.resize(vocab_.size());
    for (TermId t = 0; t < vocab_.size(); ++t) {
        tfidf_idf_[t] = std::log(n / static_cast<double>(vocab_.doc_freq(t)));
    }

    // Per-article squared norms of the raw count * idf weights.
    std::vector<double> norm_sq(size(), 0.0);
    std::vector<std::size_t> entries_per_article(size(), 0);
    for (TermId t = 0; t < vocab_.size(); ++t) {
        for (const auto& p : postings(t)) {
            double w = p.count * tfidf_idf_[t];
            norm_sq[p.article] += w * w;
            ++entries_per_article[p.article];
        }
    }

    posting_tfidf_.assign(postings_.size(), 0.0);
    for (TermId t = 0; t < vocab_.size(); ++t) {
        for (auto k = posting_offsets_[t]; k < posting_offsets_[t + 1]; ++k) {
            const auto& p = postings_[k];
            double norm = std::sqrt(norm_sq[p.article]);
            posting_tfidf_[k] = norm > 0.0 ? p.count * tfidf_idf_[t] / norm : 0.0;
        }
    }

    vector_offsets_.assign(size() + 1, 0);
    for (std::size_t d = 0; d < size(); ++d) {
        vector_offsets_[d + 1] = vector_offsets_[d] + entries_per_article[d];
    }
    vector_entries_.assign(vector_offsets_.back(), WeightedTerm{0, 0.0});
    std::vector<std::size_t> cursor(vector_offsets_.begin(), vector_offsets_.end() - 1);
    // term-major traversal keeps each article's entries sorted by term id
    for (TermId t = 0; t < vocab_.size(); ++t) {
        for (auto k = posting_offsets_[t]; k < posting_offsets_[t + 1]; ++k) {
            vector_entries_[cursor[postings_[k].article]++] = WeightedTerm{t, posting_tfidf_[k]};
        }
    }

    warnings_.clear();
    for (std::size_t d = 0; d < size(); ++d) {
        if (doc_len_[d] == 0) {
            warnings_.push_back("article " + article_ids_[d] + " has no tokens after tokenization");
        }
    }
}

ArticleIndex build_index(std::span<const RumorArticle> articles, const TokenizerConfig& tokenizer)
{
    if (articles.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no articles to index");
    }
    std::vector<std::string> ids;
    std::vector<TokenSeq> docs;
    ids.reserve(articles.size());
    docs.reserve(articles.size());
    for (const auto& a : articles) {
        ids.push_back(a.id);
        docs.push_back(tokenize(a.body, tokenizer));
    }
    return build_index_from_tokens(std::move(ids), docs, tokenizer);
}

ArticleIndex build_index_from_tokens(std::vector<std::string> ids, std::span<const TokenSeq> docs,
                                     TokenizerConfig tokenizer)
{
    if (docs.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no articles to index");
    }
    if (ids.size() != docs.size()) {
        throw Error(ErrorCode::InvalidArgument, "article id and document counts differ");
    }
    {
        std::unordered_set<std::string_view> seen;
        for (const auto& id : ids) {
            if (!seen.insert(id).second) {
                throw Error(ErrorCode::DuplicateId, id);
            }
        }
    }

    ArticleIndex index;
    index.tokenizer_ = std::move(tokenizer);
    index.vocab_ = build_vocabulary(docs);
    index.article_ids_ = std::move(ids);

    const auto& vocab = index.vocab_;
    index.doc_len_.resize(docs.size());
    std::vector<std::vector<Posting>> lists(vocab.size());
    std::vector<std::uint32_t> counts(vocab.size(), 0);
    std::vector<TermId> touched;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        index.doc_len_[d] = static_cast<std::uint32_t>(docs[d].size());
        touched.clear();
        for (const auto& token : docs[d]) {
            TermId t = *vocab.find(token);
            if (counts[t]++ == 0) {
                touched.push_back(t);
            }
        }
        for (TermId t : touched) {
            lists[t].push_back(Posting{static_cast<std::uint32_t>(d), counts[t]});
            counts[t] = 0;
        }
    }

    index.posting_offsets_.assign(vocab.size() + 1, 0);
    for (TermId t = 0; t < vocab.size(); ++t) {
        index.posting_offsets_[t + 1] = index.posting_offsets_[t] + lists[t].size();
    }
    index.postings_.reserve(index.posting_offsets_.back());
    for (auto& list : lists) {
        index.postings_.insert(index.postings_.end(), list.begin(), list.end());
    }
    index.finish();
    return index;
}

void save_index(const std::filesystem::path& path, const ArticleIndex& index)
{
    io::AtomicFile file(path);
    Writer w(file.stream());
    file.stream().write(kMagic, sizeof kMagic);
    w.u8(kIndexFormatVersion);

    const auto& tok = index.tokenizer();
    w.u64(tok.min_token_len);
    w.u8(tok.strip_urls ? 1 : 0);
    w.u8(tok.strip_mentions ? 1 : 0);
    w.u8(tok.stemming ? 1 : 0);
    w.u64(tok.stopwords.size());
    for (const auto& s : tok.stopwords) {
        w.str(s);
    }

    const auto& vocab = index.vocabulary();
    w.u64(vocab.n_docs());
    w.f64(vocab.avgdl());
    w.u64(vocab.size());
    for (TermId t = 0; t < vocab.size(); ++t) {
        w.str(vocab.term(t));
        w.u32(vocab.doc_freq(t));
    }

    w.u64(index.size());
    for (std::size_t d = 0; d < index.size(); ++d) {
        w.str(index.article_id(d));
        w.u32(index.doc_len(d));
    }

    for (TermId t = 0; t < vocab.size(); ++t) {
        auto list = index.postings(t);
        w.u64(list.size());
        for (const auto& p : list) {
            w.u32(p.article);
            w.u32(p.count);
        }
    }
    file.commit();
}

ArticleIndex load_index(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::MissingFile, path.string());
    }
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reader r(std::move(bytes), path.string());

    for (char c : kMagic) {
        if (static_cast<char>(r.u8()) != c) {
            r.fail("not an index file (bad magic)");
        }
    }
    auto version = r.u8();
    if (version != kIndexFormatVersion) {
        r.fail("unsupported index version " + std::to_string(version) + " (expected " +
               std::to_string(kIndexFormatVersion) + ")");
    }

    ArticleIndex index;
    auto& tok = index.tokenizer_;
    tok.min_token_len = r.u64();
    tok.strip_urls = r.u8() != 0;
    tok.strip_mentions = r.u8() != 0;
    tok.stemming = r.u8() != 0;
    auto n_stop = r.count(4);
    for (std::size_t i = 0; i < n_stop; ++i) {
        tok.stopwords.insert(r.str());
    }

    auto n_docs = r.u64();
    auto avgdl = r.f64();
    auto v = r.count(8);
    std::vector<std::string> terms(v);
    std::vector<std::uint32_t> df(v);
    for (std::size_t t = 0; t < v; ++t) {
        terms[t] = r.str();
        df[t] = r.u32();
    }
    try {
        index.vocab_ = Vocabulary::from_parts(std::move(terms), std::move(df), n_docs, avgdl);
    } catch (const Error& e) {
        r.fail(e.detail());
    }

    auto n = r.count(8);
    if (n != n_docs || n == 0) {
        r.fail("article count does not match vocabulary statistics");
    }
    index.article_ids_.resize(n);
    index.doc_len_.resize(n);
    for (std::size_t d = 0; d < n; ++d) {
        index.article_ids_[d] = r.str();
        index.doc_len_[d] = r.u32();
    }

    index.posting_offsets_.assign(v + 1, 0);
    for (std::size_t t = 0; t < v; ++t) {
        auto len = r.count(8);
        if (len != index.vocab_.doc_freq(static_cast<TermId>(t))) {
            r.fail("posting list length disagrees with document frequency");
        }
        for (std::size_t k = 0; k < len; ++k) {
            Posting p{r.u32(), r.u32()};
            if (p.article >= n || p.count == 0) {
                r.fail("posting out of range");
            }
            index.postings_.push_back(p);
        }
        index.posting_offsets_[t + 1] = index.postings_.size();
    }
    if (!r.at_end()) {
        r.fail("trailing bytes");
    }
    index.finish();
    return index;
}

}  // namespace rumor
