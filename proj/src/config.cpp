#include "rumor/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "rumor/error.hpp"
#include "rumor/io.hpp"

namespace rumor {

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value)
{
    throw Error(ErrorCode::InvalidConfig, "bad value '" + std::string(value) + "' for key " + std::string(key));
}

double parse_real(std::string_view key, std::string_view value)
{
    double v = 0.0;
    auto r = std::from_chars(value.data(), value.data() + value.size(), v);
    if (r.ec != std::errc{} || r.ptr != value.data() + value.size() || !std::isfinite(v)) {
        bad_value(key, value);
    }
    return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view value)
{
    Int v = 0;
    auto r = std::from_chars(value.data(), value.data() + value.size(), v);
    if (r.ec != std::errc{} || r.ptr != value.data() + value.size()) {
        bad_value(key, value);
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view value)
{
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    bad_value(key, value);
}

std::vector<std::string_view> split_list(std::string_view value)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto comma = value.find(',', start);
        auto piece = io::trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                  : comma - start));
        if (!piece.empty()) {
            out.push_back(piece);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::filesystem::path resolve(std::string_view value, const std::filesystem::path& base_dir)
{
    std::filesystem::path p{std::string(value)};
    if (p.is_relative() && !base_dir.empty()) {
        return base_dir / p;
    }
    return p;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view raw, const std::filesystem::path& base_dir)
{
    const auto value = io::trim(raw);
    if (key == "tweets_path") tweets_path = resolve(value, base_dir);
    else if (key == "articles_path") articles_path = resolve(value, base_dir);
    else if (key == "labels_path") labels_path = resolve(value, base_dir);
    else if (key == "embeddings_path") embeddings_path = resolve(value, base_dir);
    else if (key == "docvecs_path") docvecs_path = resolve(value, base_dir);
    else if (key == "lexicon_path") lexicon_path = resolve(value, base_dir);
    else if (key == "stopwords_path") {
        no_stopwords = value == "none";
        stopwords_path = no_stopwords ? std::filesystem::path{} : resolve(value, base_dir);
    }
    else if (key == "out_dir") out_dir = resolve(value, base_dir);
    else if (key == "index_path") index_path = resolve(value, base_dir);
    else if (key == "matches_path") matches_path = resolve(value, base_dir);
    else if (key == "min_token_len") min_token_len = parse_int<std::size_t>(key, value);
    else if (key == "strip_urls") strip_urls = parse_bool(key, value);
    else if (key == "strip_mentions") strip_mentions = parse_bool(key, value);
    else if (key == "stemming") stemming = parse_bool(key, value);
    else if (key == "matcher") {
        if (value == "all" || value == "ALL") {
            all_matchers = true;
        } else {
            auto kind = parse_matcher_kind(value);
            if (!kind) bad_value(key, value);
            matcher = *kind;
            all_matchers = false;
        }
    }
    else if (key == "bm25_k1") bm25.k1 = parse_real(key, value);
    else if (key == "bm25_b") bm25.b = parse_real(key, value);
    else if (key == "threshold") threshold = parse_real(key, value);
    else if (key == "jobs") jobs = parse_int<std::size_t>(key, value);
    else if (key == "quiet") quiet = parse_bool(key, value);
    else if (key == "min_precision") min_precision = parse_real(key, value);
    else if (key == "election_start" || key == "election_end") {
        auto t = parse_iso8601(value);
        if (!t) bad_value(key, value);
        (key == "election_start" ? election_window.start : election_window.end) = *t;
    }
    else if (key == "peak_k") peak_k = parse_real(key, value);
    else if (key == "bin_width") bin_width = parse_int<std::int64_t>(key, value);
    else if (key == "top_n") top_n = parse_int<std::size_t>(key, value);
    else if (key == "concentration_fractions") {
        concentration_fractions.clear();
        for (auto piece : split_list(value)) {
            concentration_fractions.push_back(parse_real(key, piece));
        }
    }
    else if (key == "keywords") {
        keywords.clear();
        for (auto piece : split_list(value)) {
            keywords.emplace_back(piece);
        }
    }
    else if (key == "case_user") case_user = std::string(value);
    else if (key == "analysis_group") {
        if (value == "ALL" || value == "all" || value.empty()) {
            analysis_group.reset();
        } else {
            auto g = parse_group(value);
            if (!g) bad_value(key, value);
            analysis_group = *g;
        }
    }
    else if (key == "attribution_subjects") {
        attribution_subjects.clear();
        for (auto piece : split_list(value)) {
            auto s = parse_subject(piece);
            if (!s) bad_value(key, piece);
            attribution_subjects.push_back(*s);
        }
    }
    else {
        throw Error(ErrorCode::InvalidConfig, "unknown key " + std::string(key));
    }
}

std::filesystem::path RunConfig::resolved_index_path() const
{
    return index_path.empty() ? out_dir / "index.bin" : index_path;
}

std::filesystem::path RunConfig::resolved_matches_path() const
{
    return matches_path.empty() ? out_dir / "matches.jsonl" : matches_path;
}

std::size_t RunConfig::resolved_jobs() const
{
    if (jobs > 0) {
        return jobs;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

TokenizerConfig RunConfig::tokenizer() const
{
    TokenizerConfig cfg = TokenizerConfig::defaults();
    if (no_stopwords) {
        cfg.stopwords.clear();
    } else if (!stopwords_path.empty()) {
        cfg.stopwords = load_stopwords(stopwords_path);
    }
    cfg.min_token_len = min_token_len;
    cfg.strip_urls = strip_urls;
    cfg.strip_mentions = strip_mentions;
    cfg.stemming = stemming;
    return cfg;
}

void RunConfig::validate() const
{
    for (const auto* p : {&tweets_path, &articles_path, &labels_path, &embeddings_path, &docvecs_path,
                          &lexicon_path, &stopwords_path}) {
        if (!p->empty() && !std::filesystem::exists(*p)) {
            throw Error(ErrorCode::MissingFile, p->string());
        }
    }
    if (!std::isfinite(threshold)) {
        throw Error(ErrorCode::InvalidConfig, "threshold must be finite");
    }
    try {
        bm25.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidConfig, e.detail());
    }
    if (!election_window.valid()) {
        throw Error(ErrorCode::InvalidConfig, "election_start must precede election_end");
    }
    if (bin_width <= 0) {
        throw Error(ErrorCode::InvalidConfig, "bin_width must be positive");
    }
    for (double f : concentration_fractions) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw Error(ErrorCode::InvalidConfig, "concentration fractions must lie in (0, 1]");
        }
    }
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir)
{
    RunConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto body = io::trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": expected key = value");
        }
        cfg.set(io::trim(body.substr(0, eq)), body.substr(eq + 1), base_dir);
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::MissingFile, path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

}  // namespace rumor
