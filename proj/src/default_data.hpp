#pragma once

#include <string_view>

namespace rumor::detail {

// Contents of data/stopwords_en.txt and data/lexicon_default.txt, compiled in.
std::string_view default_stopwords_text();
std::string_view default_lexicon_text();

}  // namespace rumor::detail
