#include "rumor/error.hpp"

namespace rumor {

std::string_view error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MissingFile: return "MISSING_FILE";
    case ErrorCode::MalformedLine: return "MALFORMED_LINE";
    case ErrorCode::DuplicateId: return "DUPLICATE_ID";
    case ErrorCode::EmptyBody: return "EMPTY_BODY";
    case ErrorCode::DanglingTweetRef: return "DANGLING_TWEET_REF";
    case ErrorCode::DanglingArticleRef: return "DANGLING_ARTICLE_REF";
    case ErrorCode::RumorWithoutArticle: return "RUMOR_WITHOUT_ARTICLE";
    case ErrorCode::DimMismatch: return "DIM_MISMATCH";
    case ErrorCode::InvalidPattern: return "INVALID_PATTERN";
    case ErrorCode::InvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::BadIndexFormat: return "BAD_INDEX_FORMAT";
    case ErrorCode::MissingDetection: return "MISSING_DETECTION";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::EmptyCorpus: return "EMPTY_CORPUS";
    case ErrorCode::AllEmptyAfterTokenize: return "ALL_EMPTY_AFTER_TOKENIZE";
    case ErrorCode::DegenerateLabels: return "DEGENERATE_LABELS";
    case ErrorCode::NoRumorLabels: return "NO_RUMOR_LABELS";
    case ErrorCode::UnreachablePrecision: return "UNREACHABLE_PRECISION";
    case ErrorCode::EmptyDenominator: return "EMPTY_DENOMINATOR";
    case ErrorCode::NoRumors: return "NO_RUMORS";
    case ErrorCode::ZeroArticlesForSubject: return "ZERO_ARTICLES_FOR_SUBJECT";
    case ErrorCode::EmptyScores: return "EMPTY_SCORES";
    case ErrorCode::Io: return "IO_ERROR";
    }
    return "UNKNOWN";
}

int exit_code_for(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MissingFile:
    case ErrorCode::MalformedLine:
    case ErrorCode::DuplicateId:
    case ErrorCode::EmptyBody:
    case ErrorCode::DanglingTweetRef:
    case ErrorCode::DanglingArticleRef:
    case ErrorCode::RumorWithoutArticle:
    case ErrorCode::DimMismatch:
    case ErrorCode::InvalidPattern:
    case ErrorCode::InvalidConfig:
    case ErrorCode::BadIndexFormat:
    case ErrorCode::MissingDetection:
    case ErrorCode::InvalidArgument:
        return 2;
    case ErrorCode::EmptyCorpus:
    case ErrorCode::AllEmptyAfterTokenize:
        return 3;
    case ErrorCode::DegenerateLabels:
    case ErrorCode::NoRumorLabels:
    case ErrorCode::UnreachablePrecision:
    case ErrorCode::EmptyDenominator:
    case ErrorCode::NoRumors:
    case ErrorCode::ZeroArticlesForSubject:
        return 4;
    case ErrorCode::EmptyScores:
    case ErrorCode::Io:
        return 1;
    }
    return 1;
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail))
{}

}  // namespace rumor
