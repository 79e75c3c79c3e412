#include "rumor/corpus.hpp"

#include <unordered_set>

#include <json.hpp>

#include "rumor/error.hpp"
#include "rumor/io.hpp"

namespace rumor {

using json = nlohmann::ordered_json;

std::string_view to_string(Group g) noexcept
{
    switch (g) {
    case Group::ClintonFollower: return "CLINTON_FOLLOWER";
    case Group::TrumpFollower: return "TRUMP_FOLLOWER";
    case Group::Other: return "OTHER";
    }
    return "OTHER";
}

std::string_view to_string(Subject s) noexcept
{
    switch (s) {
    case Subject::Clinton: return "CLINTON";
    case Subject::Trump: return "TRUMP";
    case Subject::Other: return "OTHER";
    }
    return "OTHER";
}

std::string_view to_string(Label l) noexcept
{
    return l == Label::Rumor ? "RUMOR" : "NONRUMOR";
}

std::optional<Group> parse_group(std::string_view s) noexcept
{
    if (s == "CLINTON_FOLLOWER") return Group::ClintonFollower;
    if (s == "TRUMP_FOLLOWER") return Group::TrumpFollower;
    if (s == "OTHER") return Group::Other;
    return std::nullopt;
}

std::optional<Subject> parse_subject(std::string_view s) noexcept
{
    if (s == "CLINTON") return Subject::Clinton;
    if (s == "TRUMP") return Subject::Trump;
    if (s == "OTHER") return Subject::Other;
    return std::nullopt;
}

std::optional<Label> parse_label(std::string_view s) noexcept
{
    if (s == "RUMOR") return Label::Rumor;
    if (s == "NONRUMOR") return Label::NonRumor;
    return std::nullopt;
}

namespace {

[[noreturn]] void malformed(std::size_t line_no, std::string_view why)
{
    throw Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": " + std::string(why));
}

json parse_object(std::string_view line, std::size_t line_no)
{
    json obj = json::parse(line.begin(), line.end(), nullptr, false);
    if (obj.is_discarded()) {
        malformed(line_no, "invalid JSON");
    }
    if (!obj.is_object()) {
        malformed(line_no, "expected a JSON object");
    }
    return obj;
}

std::string required_string(const json& obj, const char* key, std::size_t line_no)
{
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        malformed(line_no, std::string("missing or non-string field '") + key + "'");
    }
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line_no)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        malformed(line_no, std::string("non-string field '") + key + "'");
    }
    return it->get<std::string>();
}

template <typename Record, typename Parse, typename IdOf>
std::vector<Record> load_jsonl(const std::filesystem::path& path, Parse parse, IdOf id_of)
{
    std::vector<Record> out;
    std::unordered_set<std::string> seen;
    io::for_each_line(path, [&](std::size_t line_no, std::string_view line) {
        if (io::is_blank(line)) {
            return;
        }
        Record rec = parse(line, line_no);
        if (!seen.insert(id_of(rec)).second) {
            throw Error(ErrorCode::DuplicateId, id_of(rec));
        }
        out.push_back(std::move(rec));
    });
    return out;
}

template <typename Record>
void save_jsonl(const std::filesystem::path& path, std::span<const Record> records)
{
    io::AtomicFile file(path);
    for (const auto& r : records) {
        file.stream() << to_json_line(r) << '\n';
    }
    file.commit();
}

}  // namespace

Tweet parse_tweet(std::string_view line, std::size_t line_no)
{
    json obj = parse_object(line, line_no);
    Tweet t;
    t.id = required_string(obj, "id", line_no);
    if (t.id.empty()) {
        malformed(line_no, "empty id");
    }
    t.user_id = required_string(obj, "user_id", line_no);
    auto group = parse_group(required_string(obj, "group", line_no));
    if (!group) {
        malformed(line_no, "unknown group");
    }
    t.group = *group;
    auto ts = obj.find("timestamp");
    if (ts == obj.end() || !ts->is_number_integer()) {
        malformed(line_no, "missing or non-integer field 'timestamp'");
    }
    t.timestamp = ts->get<std::int64_t>();
    t.text = required_string(obj, "text", line_no);
    if (io::trim(t.text).empty()) {
        malformed(line_no, "empty text for tweet " + t.id);
    }
    return t;
}

RumorArticle parse_article(std::string_view line, std::size_t line_no)
{
    json obj = parse_object(line, line_no);
    RumorArticle a;
    a.id = required_string(obj, "id", line_no);
    if (a.id.empty()) {
        malformed(line_no, "empty id");
    }
    a.title = required_string(obj, "title", line_no);
    a.body = required_string(obj, "body", line_no);
    if (io::trim(a.body).empty()) {
        throw Error(ErrorCode::EmptyBody, a.id);
    }
    a.subjects.clear();
    if (auto it = obj.find("subjects"); it != obj.end() && !it->is_null()) {
        if (!it->is_array()) {
            malformed(line_no, "'subjects' must be an array");
        }
        for (const auto& s : *it) {
            auto subject = s.is_string() ? parse_subject(s.get<std::string>()) : std::nullopt;
            if (!subject) {
                malformed(line_no, "unknown subject");
            }
            a.subjects.insert(*subject);
        }
    }
    if (a.subjects.empty()) {
        a.subjects.insert(Subject::Other);
    }
    a.source_url = optional_string(obj, "source_url", line_no);
    return a;
}

LabeledTweet parse_label_record(std::string_view line, std::size_t line_no)
{
    json obj = parse_object(line, line_no);
    LabeledTweet l;
    l.tweet_id = required_string(obj, "tweet_id", line_no);
    auto label = parse_label(required_string(obj, "label", line_no));
    if (!label) {
        malformed(line_no, "unknown label");
    }
    l.label = *label;
    l.article_id = optional_string(obj, "article_id", line_no);
    return l;
}

std::string to_json_line(const Tweet& t)
{
    json obj;
    obj["id"] = t.id;
    obj["user_id"] = t.user_id;
    obj["group"] = to_string(t.group);
    obj["timestamp"] = t.timestamp;
    obj["text"] = t.text;
    return obj.dump();
}

std::string to_json_line(const RumorArticle& a)
{
    json obj;
    obj["id"] = a.id;
    obj["title"] = a.title;
    obj["body"] = a.body;
    json subjects = json::array();
    for (auto s : a.subjects) {
        subjects.push_back(to_string(s));
    }
    obj["subjects"] = std::move(subjects);
    if (a.source_url) {
        obj["source_url"] = *a.source_url;
    }
    return obj.dump();
}

std::string to_json_line(const LabeledTweet& l)
{
    json obj;
    obj["tweet_id"] = l.tweet_id;
    obj["label"] = to_string(l.label);
    if (l.article_id) {
        obj["article_id"] = *l.article_id;
    }
    return obj.dump();
}

std::vector<Tweet> load_tweets(const std::filesystem::path& path)
{
    return load_jsonl<Tweet>(path, parse_tweet, [](const Tweet& t) { return t.id; });
}

std::vector<RumorArticle> load_articles(const std::filesystem::path& path)
{
    return load_jsonl<RumorArticle>(path, parse_article, [](const RumorArticle& a) { return a.id; });
}

std::vector<LabeledTweet> load_labels(const std::filesystem::path& path, const CorpusHandle& corpus)
{
    auto labels = load_jsonl<LabeledTweet>(path, parse_label_record,
                                           [](const LabeledTweet& l) { return l.tweet_id; });
    validate_labels(labels, corpus);
    return labels;
}

void validate_labels(std::span<const LabeledTweet> labels, const CorpusHandle& corpus)
{
    std::unordered_set<std::string_view> tweet_ids;
    for (const auto& t : corpus.tweets) {
        tweet_ids.insert(t.id);
    }
    std::unordered_set<std::string_view> article_ids;
    for (const auto& a : corpus.articles) {
        article_ids.insert(a.id);
    }
    for (const auto& l : labels) {
        if (!tweet_ids.contains(l.tweet_id)) {
            throw Error(ErrorCode::DanglingTweetRef, l.tweet_id);
        }
        // article_id must be present exactly for rumor labels
        if ((l.label == Label::Rumor) != l.article_id.has_value()) {
            throw Error(ErrorCode::RumorWithoutArticle, l.tweet_id);
        }
        if (l.article_id && !article_ids.contains(*l.article_id)) {
            throw Error(ErrorCode::DanglingArticleRef, *l.article_id);
        }
    }
}

void save_tweets(const std::filesystem::path& path, std::span<const Tweet> tweets)
{
    save_jsonl(path, tweets);
}

void save_articles(const std::filesystem::path& path, std::span<const RumorArticle> articles)
{
    save_jsonl(path, articles);
}

void save_labels(const std::filesystem::path& path, std::span<const LabeledTweet> labels)
{
    save_jsonl(path, labels);
}

}  // namespace rumor
