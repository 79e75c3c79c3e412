#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rumor/textpipe.hpp"

namespace rumor {

class ArticleIndex;

/// Dense term -> vector table. Rows are stored contiguously.
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    explicit EmbeddingTable(std::size_t dim);

    /// word2vec text format: "<count> <dim>" header, then "<term> v1 .. vdim".
    static EmbeddingTable load_word2vec(const std::filesystem::path& path);

    /// Throws DuplicateId for a repeated term, DimMismatch for a wrong length.
    void add(std::string term, std::span<const double> vector);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return terms_.size(); }
    std::optional<std::span<const double>> find(std::string_view term) const;
    const std::vector<std::string>& terms() const noexcept { return terms_; }

    /// Copy with every vector multiplied by `factor`.
    EmbeddingTable scaled(double factor) const;

private:
    std::size_t dim_ = 0;
    std::vector<std::string> terms_;
    std::unordered_map<std::string, std::size_t> rows_;
    std::vector<double> data_;
};

/// Mean of the table vectors of the in-vocabulary tokens (repeats count).
/// nullopt when no token is in the table or the mean is the zero vector.
std::optional<std::vector<double>> average_vector(std::span<const std::string> tokens,
                                                  const EmbeddingTable& table);

/// Article vectors by averaging each article's indexed tokens through
/// `table`. Articles with no in-vocabulary token get a zero vector.
std::vector<std::vector<double>> article_vectors_from_words(const ArticleIndex& index,
                                                            const EmbeddingTable& table);

/// Article vectors looked up by article id in a document-vector table.
/// Throws InvalidArgument when an article has no vector.
std::vector<std::vector<double>> article_vectors_from_docvecs(const ArticleIndex& index,
                                                              const EmbeddingTable& docvecs);

/// Cosine similarity; 0 when either operand is the zero vector.
double cosine(std::span<const double> a, std::span<const double> b);

struct EmbeddingScores {
    std::vector<double> scores;
    bool undefined_representation = false;  // tweet had no usable vector
};

/// Cosine between the tweet's averaged vector and every article vector.
/// Throws DimMismatch when an article vector disagrees with table.dim().
EmbeddingScores score_embedding(std::span<const std::string> tweet_tokens,
                                std::span<const std::vector<double>> article_vectors,
                                const EmbeddingTable& table);

}  // namespace rumor
