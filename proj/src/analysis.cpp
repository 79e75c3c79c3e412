#include "rumor/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <unordered_set>

#include "rumor/error.hpp"
#include "rumor/io.hpp"

namespace rumor {

namespace {

bool in_group(const Tweet& t, std::optional<Group> group)
{
    return !group || t.group == *group;
}

struct UserCounts {
    std::size_t rumors = 0;
    std::size_t total = 0;
};

std::map<std::string, UserCounts> count_users(std::span<const Tweet> tweets, const DetectionSet& detections,
                                              std::optional<Group> group)
{
    std::map<std::string, UserCounts> users;
    for (const auto& t : tweets) {
        if (!in_group(t, group)) {
            continue;
        }
        auto& c = users[t.user_id];
        ++c.total;
        if (detections.is_rumor(t.id)) {
            ++c.rumors;
        }
    }
    return users;
}

// Howard Hinnant's civil-calendar conversions (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d)
{
    y -= m <= 2 ? 1 : 0;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d)
{
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y += m <= 2 ? 1 : 0;
}

template <typename Row>
void write_csv(const std::filesystem::path& path, std::string_view header, std::span<const Row> rows,
               void (*emit)(std::ostream&, const Row&))
{
    io::AtomicFile file(path);
    file.stream() << header << '\n';
    for (const auto& row : rows) {
        emit(file.stream(), row);
        file.stream() << '\n';
    }
    file.commit();
}

}  // namespace

TimeWindow default_election_window() noexcept
{
    return TimeWindow{days_from_civil(2016, 4, 1) * 86400, days_from_civil(2016, 10, 1) * 86400};
}

DetectionSet::DetectionSet(std::vector<Detection> detections, std::span<const RumorArticle> articles)
{
    std::unordered_set<std::string_view> article_ids;
    for (const auto& a : articles) {
        article_ids.insert(a.id);
    }
    by_id_.reserve(detections.size());
    for (auto& d : detections) {
        if (d.is_rumor != d.article_id.has_value()) {
            throw Error(ErrorCode::InvalidArgument,
                        "detection " + d.tweet_id + ": article id must be present exactly on rumor detections");
        }
        if (d.article_id && !articles.empty() && !article_ids.contains(*d.article_id)) {
            throw Error(ErrorCode::DanglingArticleRef, *d.article_id);
        }
        if (by_id_.contains(d.tweet_id)) {
            throw Error(ErrorCode::DuplicateId, d.tweet_id);
        }
        std::string key = d.tweet_id;
        by_id_.emplace(std::move(key), std::move(d));
    }
}

DetectionSet DetectionSet::from_matches(std::span<const MatchRecord> records, std::span<const RumorArticle> articles)
{
    std::vector<Detection> detections;
    detections.reserve(records.size());
    for (const auto& r : records) {
        Detection d;
        d.tweet_id = r.tweet_id;
        d.is_rumor = r.label == Label::Rumor;
        if (d.is_rumor) {
            // lexicon output flags rumors without naming an article
            if (!r.article_id) {
                throw Error(ErrorCode::InvalidArgument,
                            "rumor detection " + r.tweet_id + " has no matched article (lexicon output?)");
            }
            d.article_id = r.article_id;
        }
        detections.push_back(std::move(d));
    }
    return DetectionSet(std::move(detections), articles);
}

const Detection& DetectionSet::at(std::string_view tweet_id) const
{
    auto it = by_id_.find(std::string(tweet_id));
    if (it == by_id_.end()) {
        throw Error(ErrorCode::MissingDetection, std::string(tweet_id));
    }
    return it->second;
}

double group_rumor_ratio(std::span<const Tweet> tweets, const DetectionSet& detections, Group group,
                         std::optional<TimeWindow> window)
{
    std::size_t total = 0;
    std::size_t rumors = 0;
    for (const auto& t : tweets) {
        if (t.group != group || (window && !window->contains(t.timestamp))) {
            continue;
        }
        ++total;
        if (detections.is_rumor(t.id)) {
            ++rumors;
        }
    }
    if (total == 0) {
        throw Error(ErrorCode::EmptyDenominator, std::string("no tweets by ") + std::string(to_string(group)) +
                                                     (window ? " in window" : ""));
    }
    return static_cast<double>(rumors) / static_cast<double>(total);
}

double user_concentration(std::span<const Tweet> tweets, const DetectionSet& detections, double top_fraction,
                          std::optional<Group> group)
{
    if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "top_fraction must lie in (0, 1]");
    }
    auto users = count_users(tweets, detections, group);
    std::vector<std::pair<std::string_view, std::size_t>> ranked;
    std::size_t all_rumors = 0;
    for (const auto& [id, c] : users) {
        ranked.emplace_back(id, c.rumors);
        all_rumors += c.rumors;
    }
    if (all_rumors == 0) {
        throw Error(ErrorCode::NoRumors, "no rumor tweets in scope");
    }
    // map order already sorts by id; stable sort keeps it for equal counts
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    // the epsilon keeps 0.1 * 10 from rounding up to 2 users
    auto top = static_cast<std::size_t>(std::ceil(top_fraction * static_cast<double>(ranked.size()) - 1e-9));
    top = std::clamp<std::size_t>(top, 1, ranked.size());
    std::size_t covered = 0;
    for (std::size_t i = 0; i < top; ++i) {
        covered += ranked[i].second;
    }
    return static_cast<double>(covered) / static_cast<double>(all_rumors);
}

std::vector<UserRumorStats> user_rumor_ratio_ranking(std::span<const Tweet> tweets, const DetectionSet& detections,
                                                     std::size_t top_n, std::optional<Group> group)
{
    std::vector<UserRumorStats> out;
    for (const auto& [id, c] : count_users(tweets, detections, group)) {
        out.push_back(UserRumorStats{id, c.rumors, c.total,
                                     static_cast<double>(c.rumors) / static_cast<double>(c.total)});
    }
    std::sort(out.begin(), out.end(), [](const UserRumorStats& a, const UserRumorStats& b) {
        if (a.ratio != b.ratio) return a.ratio > b.ratio;
        if (a.rumor_count != b.rumor_count) return a.rumor_count > b.rumor_count;
        return a.user_id < b.user_id;
    });
    if (out.size() > top_n) {
        out.resize(top_n);
    }
    return out;
}

std::vector<KeywordCount> keyword_breakdown(std::span<const Tweet> tweets, const DetectionSet& detections,
                                            std::span<const std::string> keywords, const TokenizerConfig& tokenizer)
{
    TokenizerConfig loose = tokenizer;
    loose.stopwords.clear();
    loose.min_token_len = 1;

    std::vector<TokenSeq> phrases;
    std::vector<KeywordCount> out;
    for (const auto& k : keywords) {
        phrases.push_back(tokenize(k, loose));
        out.push_back(KeywordCount{k, 0, 0});
    }
    for (const auto& t : tweets) {
        const bool rumor = detections.is_rumor(t.id);
        const TokenSeq tokens = tokenize(t.text, loose);
        for (std::size_t i = 0; i < phrases.size(); ++i) {
            const auto& phrase = phrases[i];
            if (phrase.empty()) {
                continue;
            }
            bool hit = std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
            if (hit) {
                ++(rumor ? out[i].rumor_count : out[i].nonrumor_count);
            }
        }
    }
    return out;
}

std::vector<SubjectValue> content_attribution(std::span<const Tweet> tweets, const DetectionSet& detections,
                                              std::span<const RumorArticle> articles, Group group,
                                              std::span<const Subject> subjects)
{
    std::unordered_map<std::string_view, const RumorArticle*> by_id;
    std::map<Subject, std::size_t> article_counts;
    for (const auto& a : articles) {
        by_id.emplace(a.id, &a);
        for (auto s : a.subjects) {
            ++article_counts[s];
        }
    }
    std::map<Subject, std::size_t> tweet_counts;
    for (const auto& t : tweets) {
        if (t.group != group) {
            continue;
        }
        const auto& d = detections.at(t.id);
        if (!d.is_rumor) {
            continue;
        }
        auto it = by_id.find(*d.article_id);
        if (it == by_id.end()) {
            throw Error(ErrorCode::DanglingArticleRef, *d.article_id);
        }
        for (auto s : it->second->subjects) {
            ++tweet_counts[s];
        }
    }
    std::vector<SubjectValue> out;
    for (auto s : subjects) {
        auto n_articles = article_counts[s];
        if (n_articles == 0) {
            throw Error(ErrorCode::ZeroArticlesForSubject, std::string(to_string(s)));
        }
        out.push_back(SubjectValue{s, static_cast<double>(tweet_counts[s]) / static_cast<double>(n_articles)});
    }
    return out;
}

std::vector<TimelineBin> timeline(std::span<const Tweet> tweets, const DetectionSet& detections,
                                  std::int64_t bin_width, TimeWindow window, std::optional<Group> group)
{
    if (bin_width <= 0) {
        throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
    }
    if (!window.valid()) {
        return {};
    }
    const std::int64_t span = window.end - window.start;
    const std::int64_t n_bins = span / bin_width + (span % bin_width != 0 ? 1 : 0);
    std::vector<TimelineBin> bins(static_cast<std::size_t>(n_bins));
    for (std::int64_t i = 0; i < n_bins; ++i) {
        bins[static_cast<std::size_t>(i)].bin_start = window.start + i * bin_width;
    }
    for (const auto& t : tweets) {
        if (!in_group(t, group) || !window.contains(t.timestamp)) {
            continue;
        }
        if (detections.is_rumor(t.id)) {
            ++bins[static_cast<std::size_t>((t.timestamp - window.start) / bin_width)].rumor_count;
        }
    }
    return bins;
}

std::vector<std::size_t> detect_peaks(std::span<const std::size_t> series, double k)
{
    if (series.empty()) {
        throw Error(ErrorCode::InvalidArgument, "peak detection needs a nonempty series");
    }
    const auto n = static_cast<double>(series.size());
    double mean = 0.0;
    for (auto c : series) {
        mean += static_cast<double>(c);
    }
    mean /= n;
    double var = 0.0;
    for (auto c : series) {
        var += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
    }
    const double cutoff = mean + k * std::sqrt(var / n);

    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const bool above_left = i == 0 || series[i] > series[i - 1];
        const bool above_right = i + 1 == series.size() || series[i] > series[i + 1];
        if (above_left && above_right && static_cast<double>(series[i]) > cutoff) {
            peaks.push_back(i);
        }
    }
    return peaks;
}

void write_group_ratio(const std::filesystem::path& path, std::span<const GroupRatioRow> rows)
{
    write_csv<GroupRatioRow>(path, "group,window,ratio", rows, [](std::ostream& out, const GroupRatioRow& r) {
        out << to_string(r.group) << ',' << io::csv_field(r.window) << ',' << io::format_double(r.ratio);
    });
}

void write_concentration(const std::filesystem::path& path, std::span<const ConcentrationRow> rows)
{
    write_csv<ConcentrationRow>(path, "fraction,share", rows, [](std::ostream& out, const ConcentrationRow& r) {
        out << io::format_double(r.fraction) << ',' << io::format_double(r.share);
    });
}

void write_user_ranking(const std::filesystem::path& path, std::span<const UserRumorStats> rows)
{
    write_csv<UserRumorStats>(path, "user_id,rumor_count,total_count,ratio", rows,
                              [](std::ostream& out, const UserRumorStats& r) {
                                  out << io::csv_field(r.user_id) << ',' << r.rumor_count << ',' << r.total_count
                                      << ',' << io::format_double(r.ratio);
                              });
}

void write_keywords(const std::filesystem::path& path, std::span<const KeywordCount> rows)
{
    write_csv<KeywordCount>(path, "keyword,rumor_count,nonrumor_count", rows,
                            [](std::ostream& out, const KeywordCount& r) {
                                out << io::csv_field(r.keyword) << ',' << r.rumor_count << ','
                                    << r.nonrumor_count;
                            });
}

void write_attribution(const std::filesystem::path& path, std::span<const AttributionRow> rows)
{
    write_csv<AttributionRow>(path, "group,subject,value", rows, [](std::ostream& out, const AttributionRow& r) {
        out << to_string(r.group) << ',' << to_string(r.subject) << ',' << io::format_double(r.value);
    });
}

void write_timeline(const std::filesystem::path& path, std::span<const TimelineBin> bins,
                    std::span<const std::size_t> peaks)
{
    std::unordered_set<std::size_t> peak_set(peaks.begin(), peaks.end());
    io::AtomicFile file(path);
    file.stream() << "bin_start_iso8601,count,is_peak\n";
    for (std::size_t i = 0; i < bins.size(); ++i) {
        file.stream() << format_iso8601(bins[i].bin_start) << ',' << bins[i].rumor_count << ','
                      << (peak_set.contains(i) ? "true" : "false") << '\n';
    }
    file.commit();
}

std::string format_iso8601(std::int64_t epoch_seconds)
{
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t secs = epoch_seconds % 86400;
    if (secs < 0) {
        secs += 86400;
        --days;
    }
    std::int64_t y = 0;
    unsigned m = 0;
    unsigned d = 0;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<long long>(y), m, d,
                  static_cast<long long>(secs / 3600), static_cast<long long>((secs / 60) % 60),
                  static_cast<long long>(secs % 60));
    return buf;
}

std::optional<std::int64_t> parse_iso8601(std::string_view text)
{
    text = io::trim(text);
    if (text.empty()) {
        return std::nullopt;
    }
    std::int64_t epoch = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), epoch);
    if (ec == std::errc{} && p == text.data() + text.size()) {
        return epoch;
    }

    auto num = [&](std::size_t pos, std::size_t len, int& out) -> bool {
        if (pos + len > text.size()) return false;
        auto r = std::from_chars(text.data() + pos, text.data() + pos + len, out);
        return r.ec == std::errc{} && r.ptr == text.data() + pos + len;
    };
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (text.size() < 10 || !num(0, 4, y) || text[4] != '-' || !num(5, 2, mo) || text[7] != '-' || !num(8, 2, d)) {
        return std::nullopt;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31) {
        return std::nullopt;
    }
    std::size_t pos = 10;
    if (pos < text.size()) {
        if (text[pos] != 'T' || !num(pos + 1, 2, h) || text.size() < pos + 6 || text[pos + 3] != ':' ||
            !num(pos + 4, 2, mi)) {
            return std::nullopt;
        }
        pos += 6;
        if (pos < text.size() && text[pos] == ':') {
            if (!num(pos + 1, 2, s)) return std::nullopt;
            pos += 3;
        }
        if (pos != text.size() - 1 || text[pos] != 'Z') {
            return std::nullopt;
        }
        if (h > 23 || mi > 59 || s > 60) {
            return std::nullopt;
        }
    }
    return days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400 + h * 3600 + mi * 60 + s;
}

}  // namespace rumor
