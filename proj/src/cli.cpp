#include "rumor/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "rumor/analysis.hpp"
#include "rumor/config.hpp"
#include "rumor/corpus.hpp"
#include "rumor/error.hpp"
#include "rumor/evaluation.hpp"
#include "rumor/index.hpp"
#include "rumor/io.hpp"
#include "rumor/matchers.hpp"

namespace rumor::cli {

namespace {

constexpr std::size_t kProgressChunk = 1'000'000;

enum class Task { Classify, Identify, Both };

class Log {
public:
    Log(std::ostream& err, bool quiet) : err_(err), quiet_(quiet) {}

    void info(const std::string& msg) const
    {
        if (!quiet_) {
            err_ << "rumormatch: " << msg << '\n';
        }
    }

private:
    std::ostream& err_;
    bool quiet_;
};

const std::filesystem::path& require(const std::filesystem::path& p, std::string_view key)
{
    if (p.empty()) {
        throw Error(ErrorCode::InvalidConfig, std::string(key) + " is not set");
    }
    return p;
}

void ensure_parent(const std::filesystem::path& p)
{
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
}

/// Loads the saved index if there is one built with the same tokenizer
/// settings, else builds it from the articles.
ArticleIndex obtain_index(const RunConfig& cfg, const Log& log)
{
    const auto path = cfg.resolved_index_path();
    if (std::filesystem::exists(path)) {
        log.info("loading index " + path.string());
        auto saved = load_index(path);
        if (saved.tokenizer() == cfg.tokenizer()) {
            return saved;
        }
        log.info("saved index used other tokenizer settings; rebuilding");
    }
    auto articles = load_articles(require(cfg.articles_path, "articles_path"));
    auto index = build_index(articles, cfg.tokenizer());
    for (const auto& w : index.warnings()) {
        log.info("warning: " + w);
    }
    return index;
}

/// Tables a matcher borrows; kept alive alongside it.
struct Resources {
    std::optional<EmbeddingTable> words;
    std::optional<EmbeddingTable> docs;
    std::optional<LexiconPatternSet> lexicon;

    MatcherResources view(const RunConfig& cfg) const
    {
        MatcherResources r;
        r.bm25 = cfg.bm25;
        r.word_vectors = words ? &*words : nullptr;
        r.doc_vectors = docs ? &*docs : nullptr;
        r.lexicon = lexicon ? &*lexicon : nullptr;
        return r;
    }
};

void load_resources(Resources& res, MatcherKind kind, const RunConfig& cfg)
{
    switch (kind) {
    case MatcherKind::Embedding:
        if (!res.words) res.words = EmbeddingTable::load_word2vec(require(cfg.embeddings_path, "embeddings_path"));
        break;
    case MatcherKind::DocVec:
        if (!res.docs) res.docs = EmbeddingTable::load_word2vec(require(cfg.docvecs_path, "docvecs_path"));
        break;
    case MatcherKind::Lexicon:
        if (!res.lexicon) {
            res.lexicon = cfg.lexicon_path.empty() ? LexiconPatternSet::defaults()
                                                   : LexiconPatternSet::load(cfg.lexicon_path);
        }
        break;
    default:
        break;
    }
}

std::vector<Tweet> load_nonempty_tweets(const RunConfig& cfg)
{
    auto tweets = load_tweets(require(cfg.tweets_path, "tweets_path"));
    if (tweets.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no tweets in " + cfg.tweets_path.string());
    }
    return tweets;
}

void cmd_index(const RunConfig& cfg, const Log& log)
{
    auto articles = load_articles(require(cfg.articles_path, "articles_path"));
    auto index = build_index(articles, cfg.tokenizer());
    for (const auto& w : index.warnings()) {
        log.info("warning: " + w);
    }
    const auto path = cfg.resolved_index_path();
    ensure_parent(path);
    save_index(path, index);
    log.info("indexed " + std::to_string(index.size()) + " articles, " +
             std::to_string(index.vocabulary().size()) + " terms -> " + path.string());
}

void cmd_match(const RunConfig& cfg, const Log& log)
{
    if (cfg.all_matchers) {
        throw Error(ErrorCode::InvalidConfig, "matcher = all is only valid for eval");
    }
    auto tweets = load_nonempty_tweets(cfg);
    auto index = obtain_index(cfg, log);
    Resources res;
    load_resources(res, cfg.matcher, cfg);
    auto matcher = make_matcher(cfg.matcher, index, res.view(cfg));

    const auto path = cfg.resolved_matches_path();
    ensure_parent(path);
    io::AtomicFile file(path);
    const std::span<const Tweet> all(tweets);
    std::size_t undefined = 0;
    for (std::size_t start = 0; start < all.size(); start += kProgressChunk) {
        auto chunk = all.subspan(start, std::min(kProgressChunk, all.size() - start));
        auto results = match_batch(*matcher, chunk, cfg.resolved_jobs());
        for (const auto& r : results) {
            undefined += r.undefined_representation ? 1 : 0;
            file.stream() << to_json_line(to_record(*matcher, r, cfg.threshold)) << '\n';
        }
        log.info("matched " + std::to_string(start + chunk.size()) + " / " + std::to_string(all.size()) +
                 " tweets");
    }
    if (undefined > 0) {
        log.info(std::to_string(undefined) + " tweets had no usable vector and were scored 0");
    }
    file.commit();
}

struct MaxF1Row {
    std::string matcher;
    PRPoint point;
};

void write_point_table(const std::filesystem::path& path, std::span<const MaxF1Row> rows)
{
    io::AtomicFile file(path);
    file.stream() << "matcher,threshold,precision,recall,f1\n";
    for (const auto& row : rows) {
        const auto& p = row.point;
        file.stream() << io::csv_field(row.matcher) << ','
                      << (p.is_fixed() ? std::string("fixed") : io::format_double(p.threshold)) << ','
                      << io::format_double(p.precision) << ',' << io::format_double(p.recall) << ','
                      << io::format_double(p.f1) << '\n';
    }
    file.commit();
}

void cmd_eval(const RunConfig& cfg, Task task, const Log& log)
{
    CorpusHandle corpus;
    corpus.tweets = load_nonempty_tweets(cfg);
    corpus.articles = load_articles(require(cfg.articles_path, "articles_path"));
    auto labels = load_labels(require(cfg.labels_path, "labels_path"), corpus);

    // labeled tweets in tweet-file order
    std::unordered_map<std::string_view, bool> labeled;
    for (const auto& l : labels) {
        labeled.emplace(l.tweet_id, true);
    }
    std::vector<Tweet> subset;
    for (const auto& t : corpus.tweets) {
        if (labeled.contains(t.id)) {
            subset.push_back(t);
        }
    }

    std::vector<MatcherKind> kinds;
    if (cfg.all_matchers) {
        kinds = {MatcherKind::Tfidf, MatcherKind::Bm25};
        if (!cfg.embeddings_path.empty()) kinds.push_back(MatcherKind::Embedding);
        if (!cfg.docvecs_path.empty()) kinds.push_back(MatcherKind::DocVec);
        kinds.push_back(MatcherKind::Lexicon);
    } else {
        kinds = {cfg.matcher};
        if (cfg.matcher == MatcherKind::Lexicon && task == Task::Identify) {
            throw Error(ErrorCode::InvalidArgument, "the lexicon matcher does not name articles");
        }
    }

    auto index = obtain_index(cfg, log);
    Resources res;
    std::vector<MaxF1Row> max_rows;
    std::vector<MaxF1Row> op_rows;
    std::vector<IdentificationRow> id_rows;
    std::vector<std::pair<std::filesystem::path, std::vector<PRPoint>>> curves;

    for (auto kind : kinds) {
        load_resources(res, kind, cfg);
        auto matcher = make_matcher(kind, index, res.view(cfg));
        auto results = match_batch(*matcher, subset, cfg.resolved_jobs());
        const std::string name(to_string(kind));
        log.info("evaluated " + name + " on " + std::to_string(results.size()) + " labeled tweets");

        if (task != Task::Identify) {
            const auto curve_path =
                cfg.out_dir / (cfg.all_matchers ? "pr_curve_" + name + ".csv" : std::string("pr_curve.csv"));
            if (matcher->thresholded()) {
                std::vector<TweetScore> scores;
                scores.reserve(results.size());
                for (const auto& r : results) {
                    scores.push_back({r.tweet_id, r.best_score});
                }
                auto swept = sweep(scores, labels);
                max_rows.push_back({name, swept.max_f1_point});
                if (cfg.min_precision) {
                    op_rows.push_back({name, operating_point(swept, *cfg.min_precision)});
                }
                curves.emplace_back(curve_path, std::move(swept.points));
            } else {
                std::unordered_map<std::string, bool> predictions;
                for (const auto& r : results) {
                    predictions.emplace(r.tweet_id, matcher->decide(r, cfg.threshold) == Label::Rumor);
                }
                auto point = fixed_point_eval(predictions, labels);
                max_rows.push_back({name, point});
                curves.emplace_back(curve_path, std::vector<PRPoint>{point});
            }
        }
        if (task != Task::Classify && matcher->thresholded()) {
            id_rows.push_back({name, identification_accuracy(results, labels)});
        }
    }

    // every computation succeeded; only now touch the output directory
    std::filesystem::create_directories(cfg.out_dir);
    for (const auto& [path, points] : curves) {
        write_pr_curve(path, points);
    }
    if (task != Task::Identify) {
        write_point_table(cfg.out_dir / "max_f1.csv", max_rows);
        if (cfg.min_precision) {
            write_point_table(cfg.out_dir / "operating_point.csv", op_rows);
        }
    }
    if (task != Task::Classify) {
        write_identification(cfg.out_dir / "identification.csv", id_rows);
    }
}

const std::vector<std::string>& analysis_names()
{
    static const std::vector<std::string> names{"ratio", "users", "keywords", "attribution", "timeline"};
    return names;
}

/// Case-study user: the configured one, else the user with the most rumor
/// tweets in scope (ties to the smaller id).
std::string pick_case_user(const RunConfig& cfg, std::span<const Tweet> tweets, const DetectionSet& det)
{
    if (!cfg.case_user.empty()) {
        return cfg.case_user;
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& t : tweets) {
        if ((!cfg.analysis_group || t.group == *cfg.analysis_group) && det.is_rumor(t.id)) {
            ++counts[t.user_id];
        }
    }
    if (counts.empty()) {
        throw Error(ErrorCode::NoRumors, "no rumor tweets to pick a case-study user from");
    }
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        if (it->second > best->second) {
            best = it;
        }
    }
    return best->first;
}

void cmd_analyze(const RunConfig& cfg, const std::set<std::string>& which, const Log& log)
{
    const auto matches_path = cfg.resolved_matches_path();
    if (!std::filesystem::exists(matches_path)) {
        throw Error(ErrorCode::MissingFile, matches_path.string());
    }
    auto tweets = load_nonempty_tweets(cfg);
    auto articles = load_articles(require(cfg.articles_path, "articles_path"));
    auto records = load_matches(matches_path);
    auto det = DetectionSet::from_matches(records, articles);

    // Compute everything first so a failing analysis leaves no partial set.
    std::vector<std::function<void()>> writes;
    const auto& out = cfg.out_dir;
    constexpr Group kGroups[] = {Group::ClintonFollower, Group::TrumpFollower};

    if (which.contains("ratio")) {
        std::vector<GroupRatioRow> rows;
        for (auto g : kGroups) {
            rows.push_back({g, "entire", group_rumor_ratio(tweets, det, g)});
            rows.push_back({g, "election", group_rumor_ratio(tweets, det, g, cfg.election_window)});
        }
        writes.emplace_back([rows, out] { write_group_ratio(out / "group_ratio.csv", rows); });
    }
    if (which.contains("users")) {
        std::vector<ConcentrationRow> conc;
        for (double f : cfg.concentration_fractions) {
            conc.push_back({f, user_concentration(tweets, det, f, cfg.analysis_group)});
        }
        auto ranking = user_rumor_ratio_ranking(tweets, det, cfg.top_n, cfg.analysis_group);
        writes.emplace_back([conc, ranking, out] {
            write_concentration(out / "concentration.csv", conc);
            write_user_ranking(out / "user_ranking.csv", ranking);
        });
    }
    if (which.contains("keywords")) {
        const auto user = pick_case_user(cfg, tweets, det);
        std::vector<Tweet> own;
        std::copy_if(tweets.begin(), tweets.end(), std::back_inserter(own),
                     [&](const Tweet& t) { return t.user_id == user; });
        auto rows = keyword_breakdown(own, det, cfg.keywords, cfg.tokenizer());
        log.info("keyword breakdown for user " + user);
        writes.emplace_back([rows, out] { write_keywords(out / "keywords.csv", rows); });
    }
    if (which.contains("attribution")) {
        std::vector<AttributionRow> rows;
        for (auto g : kGroups) {
            for (const auto& sv : content_attribution(tweets, det, articles, g, cfg.attribution_subjects)) {
                rows.push_back({g, sv.subject, sv.value});
            }
        }
        writes.emplace_back([rows, out] { write_attribution(out / "attribution.csv", rows); });
    }
    if (which.contains("timeline")) {
        auto bins = timeline(tweets, det, cfg.bin_width, cfg.election_window, cfg.analysis_group);
        std::vector<std::size_t> counts;
        counts.reserve(bins.size());
        for (const auto& b : bins) {
            counts.push_back(b.rumor_count);
        }
        auto peaks = detect_peaks(counts, cfg.peak_k);
        writes.emplace_back([bins, peaks, out] { write_timeline(out / "timeline.csv", bins, peaks); });
    }

    std::filesystem::create_directories(out);
    for (auto& w : writes) {
        w();
    }
}

Task parse_task(const std::string& s)
{
    if (s == "classify") return Task::Classify;
    if (s == "identify") return Task::Identify;
    return Task::Both;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Match tweets against a reference set of debunked rumor articles.", "rumormatch"};
    app.require_subcommand(1);

    std::string config_path;
    std::string matcher;
    std::optional<double> threshold;
    std::optional<std::size_t> jobs;
    std::string out_dir;
    bool quiet = false;
    app.add_option("--config", config_path, "key = value run configuration");
    app.add_option("--matcher", matcher, "tfidf, bm25, embedding, docvec, lexicon (or all for eval)");
    app.add_option("--threshold", threshold, "rumor decision threshold h");
    app.add_option("--jobs", jobs, "matching worker threads");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--quiet", quiet, "no progress on stderr");

    auto* index_cmd = app.add_subcommand("index", "build and save the article index");
    auto* match_cmd = app.add_subcommand("match", "score every tweet and write matches.jsonl");
    auto* eval_cmd = app.add_subcommand("eval", "precision/recall and identification against labels");
    std::string task = "both";
    eval_cmd->add_option("--task", task, "classify, identify or both")
        ->check(CLI::IsMember({"classify", "identify", "both"}));
    auto* analyze_cmd = app.add_subcommand("analyze", "group, user, keyword, attribution and timeline analyses");
    std::vector<std::string> which;
    analyze_cmd->add_option("--which", which, "subset of ratio,users,keywords,attribution,timeline")
        ->delimiter(',')
        ->check(CLI::IsMember(analysis_names()));
    auto* all_cmd = app.add_subcommand("all", "index, match, eval (when labels are configured) and analyze");
    for (auto* sub : {index_cmd, match_cmd, eval_cmd, analyze_cmd, all_cmd}) {
        sub->fallthrough();
    }

    std::vector<const char*> argv{"rumormatch"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "rumormatch: " << e.what() << '\n';
        return exit_code_for(ErrorCode::InvalidArgument);
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!matcher.empty()) cfg.set("matcher", matcher);
        if (threshold) cfg.set("threshold", io::format_double(*threshold));
        if (jobs) cfg.jobs = *jobs;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (quiet) cfg.quiet = true;
        cfg.validate();
        const Log log(err, cfg.quiet);

        std::set<std::string> selected(which.begin(), which.end());
        if (selected.empty()) {
            selected.insert(analysis_names().begin(), analysis_names().end());
        }

        if (index_cmd->parsed()) {
            cmd_index(cfg, log);
        } else if (match_cmd->parsed()) {
            cmd_match(cfg, log);
        } else if (eval_cmd->parsed()) {
            cmd_eval(cfg, parse_task(task), log);
        } else if (analyze_cmd->parsed()) {
            cmd_analyze(cfg, selected, log);
        } else if (all_cmd->parsed()) {
            cmd_index(cfg, log);
            cmd_match(cfg, log);
            if (!cfg.labels_path.empty()) {
                cmd_eval(cfg, Task::Both, log);
            }
            cmd_analyze(cfg, selected, log);
        }
        return 0;
    } catch (const Error& e) {
        err << "rumormatch: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "rumormatch: INTERNAL: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rumor::cli
