#include <gtest/gtest.h>

#include "rumor/error.hpp"
#include "rumor/lexicon.hpp"
#include "support.hpp"

using namespace rumor;

TEST(Lexicon, DefaultExamples)
{
    const auto lex = LexiconPatternSet::defaults();
    EXPECT_EQ(lex.patterns().size(), 5u);
    EXPECT_TRUE(match_lexicon("is it true that she is sick?", lex));
    EXPECT_FALSE(match_lexicon("lovely weather today", lex));
    EXPECT_TRUE(match_lexicon("this rumor is spreading", lex));
    EXPECT_TRUE(match_lexicon("IS THIS TRUE", lex));
    EXPECT_TRUE(match_lexicon("Rumours everywhere", lex));
}

TEST(Lexicon, ParseSkipsCommentsAndNamesBadLine)
{
    auto lex = LexiconPatternSet::parse("# comment\n\nfoo+\n  \nbar\n");
    EXPECT_EQ(lex.patterns(), (std::vector<std::string>{"foo+", "bar"}));
    EXPECT_TRUE(lex.matches("FOOOO"));
    EXPECT_FALSE(lex.matches("fo"));
    try {
        LexiconPatternSet::parse("ok\n(unclosed\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidPattern);
        EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    }
}

TEST(Lexicon, LoadFromFile)
{
    testing_support::TempDir dir;
    testing_support::write_file(dir / "lex.txt", "hoax\n");
    auto lex = LexiconPatternSet::load(dir / "lex.txt");
    EXPECT_TRUE(lex.matches("Total HOAX"));
    EXPECT_THROW(LexiconPatternSet::load(dir / "missing.txt"), Error);
}

TEST(Lexicon, EmptySetNeverMatches)
{
    auto lex = LexiconPatternSet::parse("");
    EXPECT_FALSE(lex.matches("is it true"));
}
