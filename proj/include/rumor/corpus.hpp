#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rumor {

enum class Group { ClintonFollower, TrumpFollower, Other };
enum class Subject { Clinton, Trump, Other };
enum class Label { Rumor, NonRumor };

std::string_view to_string(Group g) noexcept;
std::string_view to_string(Subject s) noexcept;
std::string_view to_string(Label l) noexcept;

std::optional<Group> parse_group(std::string_view s) noexcept;
std::optional<Subject> parse_subject(std::string_view s) noexcept;
std::optional<Label> parse_label(std::string_view s) noexcept;

struct Tweet {
    std::string id;
    std::string user_id;
    Group group = Group::Other;
    std::int64_t timestamp = 0;  // UTC epoch seconds
    std::string text;

    bool operator==(const Tweet&) const = default;
};

struct RumorArticle {
    std::string id;
    std::string title;
    std::string body;
    std::set<Subject> subjects{Subject::Other};
    std::optional<std::string> source_url;

    bool operator==(const RumorArticle&) const = default;
};

struct LabeledTweet {
    std::string tweet_id;
    Label label = Label::NonRumor;
    std::optional<std::string> article_id;  // present iff label == Rumor

    bool operator==(const LabeledTweet&) const = default;
};

/// Everything loaded for one run. Immutable once loading finishes.
struct CorpusHandle {
    std::vector<Tweet> tweets;
    std::vector<RumorArticle> articles;
    std::optional<std::vector<LabeledTweet>> labels;
};

// JSON Lines ingestion. All loaders are fail-fast: the first bad line aborts
// the load with an Error naming the line or the offending id.

std::vector<Tweet> load_tweets(const std::filesystem::path& path);
std::vector<RumorArticle> load_articles(const std::filesystem::path& path);
std::vector<LabeledTweet> load_labels(const std::filesystem::path& path,
                                      const CorpusHandle& corpus);

// Same validation applied to in-memory records, one record per call.
Tweet parse_tweet(std::string_view json_line, std::size_t line_no);
RumorArticle parse_article(std::string_view json_line, std::size_t line_no);
LabeledTweet parse_label_record(std::string_view json_line, std::size_t line_no);

std::string to_json_line(const Tweet& t);
std::string to_json_line(const RumorArticle& a);
std::string to_json_line(const LabeledTweet& l);

void save_tweets(const std::filesystem::path& path, std::span<const Tweet> tweets);
void save_articles(const std::filesystem::path& path, std::span<const RumorArticle> articles);
void save_labels(const std::filesystem::path& path, std::span<const LabeledTweet> labels);

/// Cross-reference check used by load_labels; exposed for in-memory corpora.
void validate_labels(std::span<const LabeledTweet> labels, const CorpusHandle& corpus);

}  // namespace rumor
