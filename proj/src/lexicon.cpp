#include "rumor/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "default_data.hpp"
#include "rumor/error.hpp"
#include "rumor/io.hpp"

namespace rumor {

namespace {

std::string fold_ascii(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c + 32);
        }
    }
    return out;
}

}  // namespace

LexiconPatternSet LexiconPatternSet::parse(std::string_view text)
{
    LexiconPatternSet set;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        auto pattern = io::trim(line);
        if (pattern.empty() || pattern.front() == '#') {
            continue;
        }
        try {
            set.compiled_.emplace_back(std::string(pattern), std::regex::ECMAScript | std::regex::icase |
                                                                 std::regex::optimize);
        } catch (const std::regex_error& e) {
            throw Error(ErrorCode::InvalidPattern,
                        "line " + std::to_string(line_no) + " '" + std::string(pattern) + "': " + e.what());
        }
        set.sources_.emplace_back(pattern);
    }
    return set;
}

LexiconPatternSet LexiconPatternSet::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::MissingFile, path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

LexiconPatternSet LexiconPatternSet::defaults()
{
    return parse(detail::default_lexicon_text());
}

bool LexiconPatternSet::matches(std::string_view raw_text) const
{
    const std::string folded = fold_ascii(raw_text);
    for (const auto& re : compiled_) {
        if (std::regex_search(folded, re)) {
            return true;
        }
    }
    return false;
}

bool match_lexicon(std::string_view raw_text, const LexiconPatternSet& patterns)
{
    return patterns.matches(raw_text);
}

}  // namespace rumor
