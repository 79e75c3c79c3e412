#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rumor {

enum class ErrorCode {
    // input errors
    MissingFile,
    MalformedLine,
    DuplicateId,
    EmptyBody,
    DanglingTweetRef,
    DanglingArticleRef,
    RumorWithoutArticle,
    DimMismatch,
    InvalidPattern,
    InvalidConfig,
    BadIndexFormat,
    MissingDetection,
    InvalidArgument,
    // empty or degenerate corpus
    EmptyCorpus,
    AllEmptyAfterTokenize,
    // evaluation degeneracy
    DegenerateLabels,
    NoRumorLabels,
    UnreachablePrecision,
    EmptyDenominator,
    NoRumors,
    ZeroArticlesForSubject,
    // internal
    EmptyScores,
    Io,
};

/// Stable upper-snake name, used in diagnostics ("DUPLICATE_ID: t3").
std::string_view error_code_name(ErrorCode code) noexcept;

/// Process exit status for a failure of this kind: 2 input, 3 empty corpus,
/// 4 evaluation degeneracy, 1 anything else.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string detail);

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace rumor
