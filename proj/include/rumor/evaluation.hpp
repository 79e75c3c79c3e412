#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rumor/corpus.hpp"
#include "rumor/matchers.hpp"

namespace rumor {

/// One operating point. `threshold` is NaN for a fixed (non-swept) point.
struct PRPoint {
    double threshold = std::numeric_limits<double>::quiet_NaN();
    double precision = 1.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    bool is_fixed() const noexcept;
};

struct SweepResult {
    std::vector<PRPoint> points;  // descending threshold
    PRPoint max_f1_point;
};

struct TweetScore {
    std::string tweet_id;
    double score = 0.0;
};

/// Precision/recall/F1 from confusion counts. Precision is 1 when nothing
/// was predicted positive; F1 is 0 when precision + recall is 0.
PRPoint make_point(double threshold, std::size_t tp, std::size_t fp, std::size_t fn);

/// Threshold sweep over the labeled tweets. Candidate thresholds are the
/// distinct scores in descending order (tweet is positive iff score > t),
/// followed by a final -inf point where every tweet is positive.
/// Throws DegenerateLabels unless both classes occur, InvalidArgument when a
/// labeled tweet has no score.
SweepResult sweep(std::span<const TweetScore> scores, std::span<const LabeledTweet> labels);

/// Single operating point for a yes/no predictor (the lexicon matcher).
/// `predictions` maps tweet id to the predicted rumor flag.
PRPoint fixed_point_eval(const std::unordered_map<std::string, bool>& predictions,
                         std::span<const LabeledTweet> labels);

struct IdentificationResult {
    double accuracy = 0.0;
    std::size_t n_evaluated = 0;
    std::size_t n_correct = 0;
};

/// Share of RUMOR-labeled tweets whose best article equals the labeled one.
/// Throws NoRumorLabels when there is none.
IdentificationResult identification_accuracy(std::span<const MatchResult> matches,
                                             std::span<const LabeledTweet> labels);

/// Highest-recall point whose precision is at least `min_precision`; among
/// equal recall the higher precision, then the earlier point, wins. Points
/// that predict no tweet positive never qualify.
/// Throws UnreachablePrecision when no point qualifies.
PRPoint operating_point(const SweepResult& sweep, double min_precision);

/// "threshold,precision,recall,f1" CSV, one row per point in the given order;
/// fixed points print the literal `fixed` as threshold.
std::string pr_curve_csv(std::span<const PRPoint> points);
void write_pr_curve(const std::filesystem::path& path, std::span<const PRPoint> points);

struct IdentificationRow {
    std::string matcher;
    IdentificationResult result;
};

/// "matcher,accuracy,n_evaluated" CSV.
void write_identification(const std::filesystem::path& path, std::span<const IdentificationRow> rows);

}  // namespace rumor
