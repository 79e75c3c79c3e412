#include "rumor/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rumor/error.hpp"
#include "rumor/io.hpp"

namespace rumor {

bool PRPoint::is_fixed() const noexcept
{
    return std::isnan(threshold);
}

PRPoint make_point(double threshold, std::size_t tp, std::size_t fp, std::size_t fn)
{
    PRPoint p;
    p.threshold = threshold;
    p.tp = tp;
    p.fp = fp;
    p.fn = fn;
    p.precision = (tp + fp) == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    p.recall = (tp + fn) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    p.f1 = (p.precision + p.recall) > 0.0 ? 2.0 * p.precision * p.recall / (p.precision + p.recall) : 0.0;
    return p;
}

SweepResult sweep(std::span<const TweetScore> scores, std::span<const LabeledTweet> labels)
{
    std::unordered_map<std::string_view, double> by_id;
    by_id.reserve(scores.size());
    for (const auto& s : scores) {
        by_id.emplace(s.tweet_id, s.score);
    }

    // (score, is_rumor) for every labeled tweet
    std::vector<std::pair<double, bool>> items;
    items.reserve(labels.size());
    std::size_t n_rumor = 0;
    for (const auto& l : labels) {
        auto it = by_id.find(l.tweet_id);
        if (it == by_id.end()) {
            throw Error(ErrorCode::InvalidArgument, "no score for labeled tweet " + l.tweet_id);
        }
        if (std::isnan(it->second)) {
            throw Error(ErrorCode::InvalidArgument, "NaN score for tweet " + l.tweet_id);
        }
        bool rumor = l.label == Label::Rumor;
        n_rumor += rumor ? 1 : 0;
        items.emplace_back(it->second, rumor);
    }
    if (n_rumor == 0 || n_rumor == items.size()) {
        throw Error(ErrorCode::DegenerateLabels, "sweep needs both RUMOR and NONRUMOR labels");
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    SweepResult out;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < items.size()) {
        // Threshold at this distinct score: only strictly higher scores,
        // already accumulated, count as positive.
        const double t = items[i].first;
        out.points.push_back(make_point(t, tp, fp, n_rumor - tp));
        while (i < items.size() && items[i].first == t) {
            (items[i].second ? tp : fp) += 1;
            ++i;
        }
    }
    out.points.push_back(make_point(-std::numeric_limits<double>::infinity(), tp, fp, n_rumor - tp));

    out.max_f1_point = out.points.front();
    for (const auto& p : out.points) {
        if (p.f1 > out.max_f1_point.f1) {
            out.max_f1_point = p;
        }
    }
    return out;
}

PRPoint fixed_point_eval(const std::unordered_map<std::string, bool>& predictions,
                         std::span<const LabeledTweet> labels)
{
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    for (const auto& l : labels) {
        auto it = predictions.find(l.tweet_id);
        if (it == predictions.end()) {
            throw Error(ErrorCode::InvalidArgument, "no prediction for labeled tweet " + l.tweet_id);
        }
        const bool rumor = l.label == Label::Rumor;
        if (it->second && rumor) {
            ++tp;
        } else if (it->second) {
            ++fp;
        } else if (rumor) {
            ++fn;
        }
    }
    return make_point(std::numeric_limits<double>::quiet_NaN(), tp, fp, fn);
}

IdentificationResult identification_accuracy(std::span<const MatchResult> matches,
                                             std::span<const LabeledTweet> labels)
{
    std::unordered_map<std::string_view, const MatchResult*> by_id;
    by_id.reserve(matches.size());
    for (const auto& m : matches) {
        by_id.emplace(m.tweet_id, &m);
    }
    IdentificationResult r;
    for (const auto& l : labels) {
        if (l.label != Label::Rumor) {
            continue;
        }
        auto it = by_id.find(l.tweet_id);
        if (it == by_id.end()) {
            throw Error(ErrorCode::InvalidArgument, "no match result for rumor tweet " + l.tweet_id);
        }
        ++r.n_evaluated;
        if (it->second->best_article_id && it->second->best_article_id == l.article_id) {
            ++r.n_correct;
        }
    }
    if (r.n_evaluated == 0) {
        throw Error(ErrorCode::NoRumorLabels, "identification needs RUMOR-labeled tweets");
    }
    r.accuracy = static_cast<double>(r.n_correct) / static_cast<double>(r.n_evaluated);
    return r;
}

PRPoint operating_point(const SweepResult& sweep, double min_precision)
{
    const PRPoint* best = nullptr;
    for (const auto& p : sweep.points) {
        if (p.tp + p.fp == 0 || p.precision < min_precision) {
            continue;
        }
        if (best == nullptr || p.recall > best->recall ||
            (p.recall == best->recall && p.precision > best->precision)) {
            best = &p;
        }
    }
    if (best == nullptr) {
        throw Error(ErrorCode::UnreachablePrecision,
                    "no threshold reaches precision " + io::format_double(min_precision));
    }
    return *best;
}

std::string pr_curve_csv(std::span<const PRPoint> points)
{
    std::ostringstream out;
    out << "threshold,precision,recall,f1\n";
    for (const auto& p : points) {
        out << (p.is_fixed() ? std::string("fixed") : io::format_double(p.threshold)) << ','
            << io::format_double(p.precision) << ',' << io::format_double(p.recall) << ','
            << io::format_double(p.f1) << '\n';
    }
    return out.str();
}

void write_pr_curve(const std::filesystem::path& path, std::span<const PRPoint> points)
{
    io::AtomicFile file(path);
    file.stream() << pr_curve_csv(points);
    file.commit();
}

void write_identification(const std::filesystem::path& path, std::span<const IdentificationRow> rows)
{
    io::AtomicFile file(path);
    file.stream() << "matcher,accuracy,n_evaluated\n";
    for (const auto& row : rows) {
        file.stream() << io::csv_field(row.matcher) << ',' << io::format_double(row.result.accuracy) << ','
                      << row.result.n_evaluated << '\n';
    }
    file.commit();
}

}  // namespace rumor
