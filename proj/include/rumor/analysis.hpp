#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rumor/corpus.hpp"
#include "rumor/matchers.hpp"
#include "rumor/textpipe.hpp"

namespace rumor {

struct Detection {
    std::string tweet_id;
    bool is_rumor = false;
    std::optional<std::string> article_id;  // present iff is_rumor
};

/// Half-open interval [start, end) of UTC epoch seconds.
struct TimeWindow {
    std::int64_t start = 0;
    std::int64_t end = 0;

    bool valid() const noexcept { return start < end; }
    bool contains(std::int64_t t) const noexcept { return t >= start && t < end; }
};

/// 2016-04-01T00:00Z to 2016-10-01T00:00Z.
TimeWindow default_election_window() noexcept;

/// Detections keyed by tweet id. Validates that article ids are present
/// exactly on rumor detections and, when `articles` is non-empty, that they
/// reference the reference set.
class DetectionSet {
public:
    DetectionSet() = default;
    explicit DetectionSet(std::vector<Detection> detections, std::span<const RumorArticle> articles = {});

    /// Rumor detections keep their article; nonrumor ones drop it.
    static DetectionSet from_matches(std::span<const MatchRecord> records,
                                     std::span<const RumorArticle> articles = {});

    /// Throws MissingDetection when the tweet was never scored.
    const Detection& at(std::string_view tweet_id) const;
    bool is_rumor(std::string_view tweet_id) const { return at(tweet_id).is_rumor; }
    std::size_t size() const noexcept { return by_id_.size(); }

private:
    std::unordered_map<std::string, Detection> by_id_;
};

/// Rumor tweets / all tweets of `group`, optionally restricted to `window`.
/// Throws EmptyDenominator when no tweet is in scope.
double group_rumor_ratio(std::span<const Tweet> tweets, const DetectionSet& detections, Group group,
                         std::optional<TimeWindow> window = std::nullopt);

/// Share of all rumor tweets posted by the top ceil(top_fraction * n_users)
/// users, ranked by rumor count (ties by user id). n_users counts every user
/// with a tweet in scope. `group` narrows the scope when given.
double user_concentration(std::span<const Tweet> tweets, const DetectionSet& detections, double top_fraction,
                          std::optional<Group> group = std::nullopt);

struct UserRumorStats {
    std::string user_id;
    std::size_t rumor_count = 0;
    std::size_t total_count = 0;
    double ratio = 0.0;

    bool operator==(const UserRumorStats&) const = default;
};

/// Users by rumor ratio descending, then rumor count descending, then id.
std::vector<UserRumorStats> user_rumor_ratio_ranking(std::span<const Tweet> tweets, const DetectionSet& detections,
                                                     std::size_t top_n, std::optional<Group> group = std::nullopt);

struct KeywordCount {
    std::string keyword;
    std::size_t rumor_count = 0;
    std::size_t nonrumor_count = 0;

    bool operator==(const KeywordCount&) const = default;
};

/// Number of tweets (not occurrences) containing each keyword, split by
/// detection. Tweets and keywords are tokenized with `tokenizer` minus its
/// stopword and length filters; a multi-word keyword matches as a phrase.
std::vector<KeywordCount> keyword_breakdown(std::span<const Tweet> tweets, const DetectionSet& detections,
                                            std::span<const std::string> keywords,
                                            const TokenizerConfig& tokenizer);

struct SubjectValue {
    Subject subject;
    double value = 0.0;
};

/// For each subject S: rumor tweets by `group` matched to an article tagged
/// S, divided by the number of articles tagged S. Multi-subject articles
/// count toward every one of their subjects. Throws ZeroArticlesForSubject.
std::vector<SubjectValue> content_attribution(std::span<const Tweet> tweets, const DetectionSet& detections,
                                              std::span<const RumorArticle> articles, Group group,
                                              std::span<const Subject> subjects);

struct TimelineBin {
    std::int64_t bin_start = 0;
    std::size_t rumor_count = 0;

    bool operator==(const TimelineBin&) const = default;
};

/// Rumor counts in consecutive bins of `bin_width` seconds tiling the window
/// (the last bin may be shorter). Empty bins are kept. An empty window gives
/// an empty list.
std::vector<TimelineBin> timeline(std::span<const Tweet> tweets, const DetectionSet& detections,
                                  std::int64_t bin_width, TimeWindow window,
                                  std::optional<Group> group = std::nullopt);

/// Strict local maxima whose count exceeds mean + k * stddev (population)
/// of the series.
std::vector<std::size_t> detect_peaks(std::span<const std::size_t> series, double k = 2.0);

// CSV exports

struct GroupRatioRow {
    Group group;
    std::string window;  // "entire" or "election"
    double ratio = 0.0;
};

struct ConcentrationRow {
    double fraction = 0.0;
    double share = 0.0;
};

struct AttributionRow {
    Group group;
    Subject subject;
    double value = 0.0;
};

void write_group_ratio(const std::filesystem::path& path, std::span<const GroupRatioRow> rows);
void write_concentration(const std::filesystem::path& path, std::span<const ConcentrationRow> rows);
void write_user_ranking(const std::filesystem::path& path, std::span<const UserRumorStats> rows);
void write_keywords(const std::filesystem::path& path, std::span<const KeywordCount> rows);
void write_attribution(const std::filesystem::path& path, std::span<const AttributionRow> rows);
void write_timeline(const std::filesystem::path& path, std::span<const TimelineBin> bins,
                    std::span<const std::size_t> peaks);

/// "2016-04-01T00:00:00Z"
std::string format_iso8601(std::int64_t epoch_seconds);
/// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS]Z" or a plain integer epoch.
std::optional<std::int64_t> parse_iso8601(std::string_view text);

}  // namespace rumor
