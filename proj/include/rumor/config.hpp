#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumor/analysis.hpp"
#include "rumor/corpus.hpp"
#include "rumor/matchers.hpp"
#include "rumor/textpipe.hpp"

namespace rumor {

/// Every tunable of a run. Loaded from a flat `key = value` file; command
/// line flags override individual keys.
struct RunConfig {
    // inputs
    std::filesystem::path tweets_path;
    std::filesystem::path articles_path;
    std::filesystem::path labels_path;
    std::filesystem::path embeddings_path;
    std::filesystem::path docvecs_path;
    std::filesystem::path lexicon_path;
    std::filesystem::path stopwords_path;  // empty: bundled list
    bool no_stopwords = false;             // stopwords_path = none

    // outputs
    std::filesystem::path out_dir = "out";
    std::filesystem::path index_path;    // empty: <out_dir>/index.bin
    std::filesystem::path matches_path;  // empty: <out_dir>/matches.jsonl

    // tokenizer
    std::size_t min_token_len = 2;
    bool strip_urls = true;
    bool strip_mentions = true;
    bool stemming = false;

    // matching
    MatcherKind matcher = MatcherKind::Bm25;
    bool all_matchers = false;  // matcher = all (evaluation only)
    BM25Params bm25;
    double threshold = 30.5;
    std::size_t jobs = 0;  // 0: hardware concurrency
    bool quiet = false;

    // evaluation
    std::optional<double> min_precision;

    // analysis
    TimeWindow election_window = default_election_window();
    double peak_k = 2.0;
    std::int64_t bin_width = 86400;
    std::size_t top_n = 1000;
    std::vector<double> concentration_fractions{0.1, 0.2};
    std::vector<std::string> keywords{"clinton", "sanders", "trump", "election", "democratic", "fbi"};
    std::string case_user;  // empty: the user with the most rumor tweets
    std::optional<Group> analysis_group;
    std::vector<Subject> attribution_subjects{Subject::Clinton, Subject::Trump};

    /// Sets one key from its textual value. Throws InvalidConfig for an
    /// unknown key or a value that does not parse. Relative paths are
    /// resolved against `base_dir`.
    void set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir = {});

    std::filesystem::path resolved_index_path() const;
    std::filesystem::path resolved_matches_path() const;
    std::size_t resolved_jobs() const;

    /// Builds the tokenizer settings, reading the stopword file if one is set.
    TokenizerConfig tokenizer() const;

    /// Checks that every configured input path exists (MissingFile) and that
    /// numeric settings are in range (InvalidConfig).
    void validate() const;
};

/// Parses `key = value` lines; '#' starts a comment line.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace rumor
