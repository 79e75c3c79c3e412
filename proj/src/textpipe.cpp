#include "rumor/textpipe.hpp"

#include <fstream>
#include <sstream>

#include "default_data.hpp"
#include "rumor/error.hpp"
#include "rumor/io.hpp"

namespace rumor {

namespace {

// Decodes one UTF-8 sequence starting at s[i]. Invalid bytes decode as
// themselves with length 1 so that malformed input never stalls the scanner.
char32_t decode_utf8(std::string_view s, std::size_t i, std::size_t& len)
{
    auto b0 = static_cast<unsigned char>(s[i]);
    auto cont = [&](std::size_t k) -> bool {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if (b0 < 0x80) {
        len = 1;
        return b0;
    }
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        len = 2;
        return (char32_t(b0 & 0x1F) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3F);
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        len = 3;
        return (char32_t(b0 & 0x0F) << 12) | (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6) |
               (static_cast<unsigned char>(s[i + 2]) & 0x3F);
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        len = 4;
        return (char32_t(b0 & 0x07) << 18) | (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12) |
               (char32_t(static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6) |
               (static_cast<unsigned char>(s[i + 3]) & 0x3F);
    }
    len = 1;
    return b0;
}

void append_utf8(std::string& out, char32_t cp)
{
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool is_space(char32_t cp)
{
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' ||
           cp == 0x00A0 || (cp >= 0x2000 && cp <= 0x200B) || cp == 0x3000;
}

bool is_apostrophe(char32_t cp)
{
    return cp == '\'' || cp == 0x2018 || cp == 0x2019;
}

// Word characters: ASCII alphanumerics and letters outside the punctuation,
// symbol and emoji ranges.
bool is_word_char(char32_t cp)
{
    if (cp < 0x80) {
        return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
    }
    if (cp <= 0x00BF) return false;                    // Latin-1 punctuation
    if (cp == 0x00D7 || cp == 0x00F7) return false;    // multiplication, division signs
    if (cp >= 0x2000 && cp <= 0x2BFF) return false;    // punctuation, arrows, symbols
    if (cp >= 0x3000 && cp <= 0x303F) return false;    // CJK punctuation
    if (cp >= 0xFE00 && cp <= 0xFE0F) return false;    // variation selectors
    if (cp >= 0x1F000) return false;                   // emoji and pictographs
    return true;
}

char32_t to_lower(char32_t cp)
{
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
    return cp;
}

std::size_t count_code_points(std::string_view s)
{
    std::size_t n = 0;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++n;
        }
    }
    return n;
}

bool starts_with_ci(std::string_view s, std::string_view prefix)
{
    if (s.size() < prefix.size()) {
        return false;
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        char c = s[i];
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c + 32);
        }
        if (c != prefix[i]) {
            return false;
        }
    }
    return true;
}

// Lowercases and splits one whitespace-free chunk into raw word pieces.
template <typename Emit>
void split_chunk(std::string_view chunk, Emit&& emit)
{
    std::string current;
    std::size_t i = 0;
    while (i < chunk.size()) {
        std::size_t len = 1;
        char32_t cp = decode_utf8(chunk, i, len);
        if (is_apostrophe(cp)) {
            // deleted, not a separator: "don't" -> "dont"
        } else if (is_word_char(cp)) {
            append_utf8(current, to_lower(cp));
        } else if (!current.empty()) {
            emit(std::move(current));
            current.clear();
        }
        i += len;
    }
    if (!current.empty()) {
        emit(std::move(current));
    }
}

template <typename Emit>
void for_each_chunk(std::string_view text, Emit&& emit)
{
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t len = 1;
        char32_t cp = decode_utf8(text, i, len);
        if (is_space(cp)) {
            if (i > start) {
                emit(text.substr(start, i - start));
            }
            start = i + len;
        }
        i += len;
    }
    if (start < text.size()) {
        emit(text.substr(start));
    }
}

}  // namespace

TokenizerConfig TokenizerConfig::defaults()
{
    TokenizerConfig cfg;
    cfg.stopwords = parse_stopwords(detail::default_stopwords_text());
    return cfg;
}

std::set<std::string, std::less<>> parse_stopwords(std::string_view text)
{
    std::set<std::string, std::less<>> words;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto word = io::trim(line);
        if (word.empty() || word.front() == '#') {
            continue;
        }
        split_chunk(word, [&](std::string piece) { words.insert(std::move(piece)); });
    }
    return words;
}

std::set<std::string, std::less<>> load_stopwords(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::MissingFile, path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_stopwords(buf.str());
}

TokenSeq tokenize(std::string_view text, const TokenizerConfig& config)
{
    TokenSeq out;
    auto keep = [&](std::string token) {
        if (config.stopwords.contains(token)) {
            return;
        }
        if (count_code_points(token) < config.min_token_len) {
            return;
        }
        if (config.stemming) {
            token = porter_stem(token);
        }
        out.push_back(std::move(token));
    };
    for_each_chunk(text, [&](std::string_view chunk) {
        if (config.strip_urls &&
            (starts_with_ci(chunk, "http://") || starts_with_ci(chunk, "https://") ||
             starts_with_ci(chunk, "www."))) {
            return;
        }
        if (config.strip_mentions && chunk.front() == '@') {
            return;
        }
        while (!chunk.empty() && chunk.front() == '#') {
            chunk.remove_prefix(1);
        }
        split_chunk(chunk, keep);
    });
    return out;
}

Vocabulary Vocabulary::from_parts(std::vector<std::string> terms, std::vector<std::uint32_t> doc_freq,
                                  std::size_t n_docs, double avgdl)
{
    if (terms.size() != doc_freq.size()) {
        throw Error(ErrorCode::InvalidArgument, "vocabulary terms/doc_freq length mismatch");
    }
    Vocabulary v;
    v.terms_ = std::move(terms);
    v.doc_freq_ = std::move(doc_freq);
    v.ids_.reserve(v.terms_.size());
    for (TermId id = 0; id < v.terms_.size(); ++id) {
        if (!v.ids_.emplace(v.terms_[id], id).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate vocabulary term " + v.terms_[id]);
        }
    }
    v.n_docs_ = n_docs;
    v.avgdl_ = avgdl;
    return v;
}

std::optional<TermId> Vocabulary::find(std::string_view term) const
{
    auto it = ids_.find(std::string(term));
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::uint32_t Vocabulary::doc_freq(std::string_view term) const
{
    auto id = find(term);
    return id ? doc_freq_[*id] : 0;
}

TermId Vocabulary::intern(const std::string& term)
{
    auto [it, inserted] = ids_.emplace(term, static_cast<TermId>(terms_.size()));
    if (inserted) {
        terms_.push_back(term);
        doc_freq_.push_back(0);
    }
    return it->second;
}

Vocabulary build_vocabulary(std::span<const TokenSeq> docs)
{
    if (docs.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no documents");
    }
    Vocabulary v;
    std::size_t total_tokens = 0;
    std::vector<std::size_t> last_seen;  // doc ordinal + 1 of the last doc counting each term
    for (std::size_t d = 0; d < docs.size(); ++d) {
        total_tokens += docs[d].size();
        for (const auto& token : docs[d]) {
            TermId id = v.intern(token);
            if (id >= last_seen.size()) {
                last_seen.resize(id + 1, 0);
            }
            if (last_seen[id] != d + 1) {
                last_seen[id] = d + 1;
                ++v.doc_freq_[id];
            }
        }
    }
    if (total_tokens == 0) {
        throw Error(ErrorCode::AllEmptyAfterTokenize, std::to_string(docs.size()) + " documents, 0 tokens");
    }
    v.n_docs_ = docs.size();
    v.avgdl_ = static_cast<double>(total_tokens) / static_cast<double>(docs.size());
    return v;
}

std::map<std::string, std::uint32_t> term_counts(const TokenSeq& doc)
{
    std::map<std::string, std::uint32_t> counts;
    for (const auto& token : doc) {
        ++counts[token];
    }
    return counts;
}

}  // namespace rumor
