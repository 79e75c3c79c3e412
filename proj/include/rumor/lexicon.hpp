#pragma once

#include <filesystem>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace rumor {

/// Ordered set of case-insensitive signal patterns. Matching is a plain
/// yes/no: the lexicon method classifies but never names an article.
class LexiconPatternSet {
public:
    /// One ECMAScript regular expression per line; blank lines and lines
    /// starting with '#' are skipped. Throws InvalidPattern naming the line.
    static LexiconPatternSet parse(std::string_view text);
    static LexiconPatternSet load(const std::filesystem::path& path);
    /// The bundled default pattern file.
    static LexiconPatternSet defaults();

    bool matches(std::string_view raw_text) const;

    const std::vector<std::string>& patterns() const noexcept { return sources_; }

private:
    std::vector<std::string> sources_;
    std::vector<std::regex> compiled_;
};

/// True iff any pattern matches the case-folded raw tweet text.
bool match_lexicon(std::string_view raw_text, const LexiconPatternSet& patterns);

}  // namespace rumor
