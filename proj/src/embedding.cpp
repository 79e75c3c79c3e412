#include "rumor/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rumor/error.hpp"
#include "rumor/index.hpp"
#include "rumor/io.hpp"

namespace rumor {

namespace {

// Splits on runs of spaces/tabs.
std::vector<std::string_view> fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out)
{
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

[[noreturn]] void malformed(const std::filesystem::path& path, std::size_t line_no, std::string_view why)
{
    throw Error(ErrorCode::MalformedLine,
                path.string() + " line " + std::to_string(line_no) + ": " + std::string(why));
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim)
{
    if (dim == 0) {
        throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
    }
}

EmbeddingTable EmbeddingTable::load_word2vec(const std::filesystem::path& path)
{
    EmbeddingTable table;
    std::size_t expected = 0;
    bool header_seen = false;
    std::vector<double> row;
    io::for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        auto parts = fields(line);
        if (!header_seen) {
            std::size_t dim = 0;
            if (parts.size() != 2 || !parse_number(parts[0], expected) || !parse_number(parts[1], dim) ||
                dim == 0) {
                malformed(path, line_no, "expected header '<count> <dim>'");
            }
            table = EmbeddingTable(dim);
            table.data_.reserve(expected * dim);
            header_seen = true;
            return;
        }
        if (parts.empty()) {
            return;
        }
        if (parts.size() != table.dim_ + 1) {
            malformed(path, line_no,
                      "expected term plus " + std::to_string(table.dim_) + " values, got " +
                          std::to_string(parts.size() - 1));
        }
        row.resize(table.dim_);
        for (std::size_t k = 0; k < table.dim_; ++k) {
            if (!parse_number(parts[k + 1], row[k]) || !std::isfinite(row[k])) {
                malformed(path, line_no, "bad number '" + std::string(parts[k + 1]) + "'");
            }
        }
        table.add(std::string(parts[0]), row);
    });
    if (!header_seen) {
        throw Error(ErrorCode::MalformedLine, path.string() + ": empty embedding file");
    }
    if (table.size() != expected) {
        throw Error(ErrorCode::MalformedLine, path.string() + ": header announces " + std::to_string(expected) +
                                                  " vectors, file has " + std::to_string(table.size()));
    }
    return table;
}

void EmbeddingTable::add(std::string term, std::span<const double> vector)
{
    if (vector.size() != dim_) {
        throw Error(ErrorCode::DimMismatch, "vector for '" + term + "' has length " +
                                                std::to_string(vector.size()) + ", table dim is " +
                                                std::to_string(dim_));
    }
    auto [it, inserted] = rows_.emplace(term, terms_.size());
    if (!inserted) {
        throw Error(ErrorCode::DuplicateId, term);
    }
    terms_.push_back(std::move(term));
    data_.insert(data_.end(), vector.begin(), vector.end());
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view term) const
{
    auto it = rows_.find(std::string(term));
    if (it == rows_.end()) {
        return std::nullopt;
    }
    return std::span<const double>(data_).subspan(it->second * dim_, dim_);
}

EmbeddingTable EmbeddingTable::scaled(double factor) const
{
    EmbeddingTable copy = *this;
    for (auto& x : copy.data_) {
        x *= factor;
    }
    return copy;
}

std::optional<std::vector<double>> average_vector(std::span<const std::string> tokens, const EmbeddingTable& table)
{
    std::vector<double> sum(table.dim(), 0.0);
    std::size_t used = 0;
    for (const auto& token : tokens) {
        if (auto v = table.find(token)) {
            for (std::size_t k = 0; k < sum.size(); ++k) {
                sum[k] += (*v)[k];
            }
            ++used;
        }
    }
    if (used == 0) {
        return std::nullopt;
    }
    bool nonzero = false;
    for (auto& x : sum) {
        x /= static_cast<double>(used);
        nonzero = nonzero || x != 0.0;
    }
    if (!nonzero) {
        return std::nullopt;
    }
    return sum;
}

std::vector<std::vector<double>> article_vectors_from_words(const ArticleIndex& index, const EmbeddingTable& table)
{
    const auto& vocab = index.vocabulary();
    std::vector<std::vector<double>> sums(index.size(), std::vector<double>(table.dim(), 0.0));
    std::vector<std::size_t> used(index.size(), 0);
    for (TermId t = 0; t < vocab.size(); ++t) {
        auto v = table.find(vocab.term(t));
        if (!v) {
            continue;
        }
        for (const auto& p : index.postings(t)) {
            auto& sum = sums[p.article];
            for (std::size_t k = 0; k < sum.size(); ++k) {
                sum[k] += p.count * (*v)[k];
            }
            used[p.article] += p.count;
        }
    }
    for (std::size_t d = 0; d < sums.size(); ++d) {
        if (used[d] > 0) {
            for (auto& x : sums[d]) {
                x /= static_cast<double>(used[d]);
            }
        }
    }
    return sums;
}

std::vector<std::vector<double>> article_vectors_from_docvecs(const ArticleIndex& index,
                                                              const EmbeddingTable& docvecs)
{
    std::vector<std::vector<double>> out;
    out.reserve(index.size());
    for (const auto& id : index.article_ids()) {
        auto v = docvecs.find(id);
        if (!v) {
            throw Error(ErrorCode::InvalidArgument, "no document vector for article " + id);
        }
        out.emplace_back(v->begin(), v->end());
    }
    return out;
}

double cosine(std::span<const double> a, std::span<const double> b)
{
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        dot += a[k] * b[k];
        na += a[k] * a[k];
        nb += b[k] * b[k];
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    double c = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(c, -1.0, 1.0);
}

EmbeddingScores score_embedding(std::span<const std::string> tweet_tokens,
                                std::span<const std::vector<double>> article_vectors,
                                const EmbeddingTable& table)
{
    for (const auto& v : article_vectors) {
        if (v.size() != table.dim()) {
            throw Error(ErrorCode::DimMismatch, "article vector length " + std::to_string(v.size()) +
                                                    " vs table dim " + std::to_string(table.dim()));
        }
    }
    EmbeddingScores out;
    out.scores.assign(article_vectors.size(), 0.0);
    auto tweet = average_vector(tweet_tokens, table);
    if (!tweet) {
        out.undefined_representation = true;
        return out;
    }
    for (std::size_t d = 0; d < article_vectors.size(); ++d) {
        out.scores[d] = cosine(*tweet, article_vectors[d]);
    }
    return out;
}

}  // namespace rumor
