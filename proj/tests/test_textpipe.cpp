#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "rumor/error.hpp"
#include "rumor/textpipe.hpp"
#include "support.hpp"

using namespace rumor;

namespace {

TokenSeq tok(std::string_view s)
{
    return tokenize(s, TokenizerConfig::defaults());
}

}  // namespace

TEST(Tokenize, DocumentedExamples)
{
    EXPECT_EQ(tok("Hillary collapse at Ground Zero!"), (TokenSeq{"hillary", "collapse", "ground", "zero"}));
    EXPECT_EQ(tok("Check https://t.co/xyz @user #Parkinsons"), (TokenSeq{"check", "parkinsons"}));
    EXPECT_EQ(tok(""), TokenSeq{});
}

TEST(Tokenize, Rules)
{
    EXPECT_EQ(tok("www.example.com Trump"), TokenSeq{"trump"});
    EXPECT_EQ(tok("don't doesn't Clinton's"), TokenSeq{"clintons"});
    EXPECT_EQ(tok("e-mail server"), (TokenSeq{"mail", "server"}));
    EXPECT_EQ(tok("I a x 42"), TokenSeq{"42"});
    EXPECT_EQ(tok("CAF\xc3\x89 \xc3\x9c" "BER"), (TokenSeq{"caf\xc3\xa9", "\xc3\xbc" "ber"}));
    EXPECT_EQ(tok("  \t\n "), TokenSeq{});

    TokenizerConfig keep = TokenizerConfig::defaults();
    keep.strip_urls = false;
    keep.strip_mentions = false;
    EXPECT_EQ(tokenize("@bob https://t.co", keep), (TokenSeq{"bob", "https", "co"}));

    TokenizerConfig none = TokenizerConfig::defaults();
    none.stopwords.clear();
    none.min_token_len = 1;
    EXPECT_EQ(tokenize("I am at a b", none), (TokenSeq{"i", "am", "at", "a", "b"}));
}

TEST(Tokenize, StemmingToggle)
{
    TokenizerConfig cfg = TokenizerConfig::defaults();
    cfg.stemming = true;
    EXPECT_EQ(tokenize("running elections generalizations", cfg), (TokenSeq{"run", "elect", "gener"}));
}

// Classic Porter reference pairs.
TEST(PorterStem, ReferencePairs)
{
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"caresses", "caress"}, {"ponies", "poni"},     {"ties", "ti"},         {"caress", "caress"},
        {"cats", "cat"},        {"feed", "feed"},       {"agreed", "agre"},     {"plastered", "plaster"},
        {"bled", "bled"},       {"motoring", "motor"},  {"sing", "sing"},       {"conflated", "conflat"},
        {"troubled", "troubl"}, {"sized", "size"},      {"hopping", "hop"},     {"tanned", "tan"},
        {"falling", "fall"},    {"hissing", "hiss"},    {"fizzed", "fizz"},     {"failing", "fail"},
        {"filing", "file"},     {"happy", "happi"},     {"sky", "sky"},         {"relational", "relat"},
        {"conditional", "condit"}, {"rational", "ration"}, {"digitizer", "digit"}, {"operator", "oper"},
        {"triplicate", "triplic"}, {"formative", "form"}, {"formalize", "formal"}, {"electrical", "electr"},
        {"hopeful", "hope"},    {"goodness", "good"},   {"revival", "reviv"},   {"allowance", "allow"},
        {"inference", "infer"}, {"airliner", "airlin"}, {"adjustable", "adjust"}, {"defensible", "defens"},
        {"irritant", "irrit"},  {"replacement", "replac"}, {"adjustment", "adjust"}, {"dependent", "depend"},
        {"adoption", "adopt"},  {"homologou", "homolog"}, {"communism", "commun"}, {"activate", "activ"},
        {"angulariti", "angular"}, {"homologous", "homolog"}, {"effective", "effect"}, {"bowdlerize", "bowdler"},
        {"probate", "probat"},  {"rate", "rate"},       {"cease", "ceas"},      {"controll", "control"},
        {"roll", "roll"},       {"generalizations", "gener"}, {"oscillators", "oscil"},
    };
    for (const auto& [in, out] : pairs) {
        EXPECT_EQ(porter_stem(in), out) << in;
    }
}

TEST(Stopwords, ParseIgnoresCommentsAndBlankLines)
{
    auto set = parse_stopwords("# header\nthe\n\n  A  \nDon't\n");
    EXPECT_TRUE(set.contains("the"));
    EXPECT_TRUE(set.contains("a"));
    EXPECT_TRUE(set.contains("dont"));
    EXPECT_FALSE(set.contains("# header"));
    EXPECT_GT(TokenizerConfig::defaults().stopwords.size(), 150u);
}

TEST(Vocabulary, HandCountedExamples)
{
    {
        std::vector<TokenSeq> docs{{"a", "b"}, {"b", "c"}};
        auto v = build_vocabulary(docs);
        EXPECT_EQ(v.size(), 3u);
        EXPECT_EQ(v.doc_freq("a"), 1u);
        EXPECT_EQ(v.doc_freq("b"), 2u);
        EXPECT_EQ(v.doc_freq("c"), 1u);
        EXPECT_EQ(v.n_docs(), 2u);
        EXPECT_DOUBLE_EQ(v.avgdl(), 2.0);
        EXPECT_EQ(*v.find("a"), 0u);
        EXPECT_EQ(*v.find("b"), 1u);
        EXPECT_EQ(*v.find("c"), 2u);
    }
    {
        std::vector<TokenSeq> docs{{"a", "a", "a"}};
        auto v = build_vocabulary(docs);
        EXPECT_EQ(v.size(), 1u);
        EXPECT_EQ(v.doc_freq("a"), 1u);
        EXPECT_DOUBLE_EQ(v.avgdl(), 3.0);
    }
    {
        std::vector<TokenSeq> docs{{}, {"a"}};
        auto v = build_vocabulary(docs);
        EXPECT_EQ(v.size(), 1u);
        EXPECT_DOUBLE_EQ(v.avgdl(), 0.5);
    }
}

TEST(Vocabulary, Errors)
{
    try {
        build_vocabulary(std::vector<TokenSeq>{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyCorpus);
    }
    try {
        build_vocabulary(std::vector<TokenSeq>{{}, {}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AllEmptyAfterTokenize);
    }
}

TEST(TermCounts, Examples)
{
    EXPECT_EQ(term_counts({"a", "b", "a"}), (std::map<std::string, std::uint32_t>{{"a", 2}, {"b", 1}}));
    EXPECT_TRUE(term_counts({}).empty());
    EXPECT_EQ(term_counts({"x", "x", "x", "x"}), (std::map<std::string, std::uint32_t>{{"x", 4}}));
}

namespace {

std::vector<TokenSeq> random_docs(std::mt19937_64& rng, std::size_t max_docs, std::size_t vocab)
{
    const auto terms = testing_support::make_terms(vocab, "term");
    std::vector<TokenSeq> docs(1 + rng() % max_docs);
    for (auto& d : docs) {
        const std::size_t len = rng() % 12;
        for (std::size_t i = 0; i < len; ++i) {
            d.push_back(terms[rng() % terms.size()]);
        }
    }
    docs.front().push_back(terms.front());  // never all empty
    return docs;
}

}  // namespace

TEST(TextpipeProperty, TokenizeIsIdempotentOnItsOutput)
{
    std::mt19937_64 rng(3);
    const std::vector<std::string> words{"Hillary", "#Trump", "@cnn", "http://t.co/x", "it's", "e-mail",
                                         "ZERO!", "the", "a", "\xc3\x89lection", "42", "x"};
    for (int round = 0; round < 500; ++round) {
        std::string text;
        for (int i = 0, n = static_cast<int>(rng() % 10); i < n; ++i) {
            text += words[rng() % words.size()] + " ";
        }
        const auto once = tok(text);
        std::string joined;
        for (const auto& t : once) {
            joined += t + " ";
        }
        ASSERT_EQ(tok(joined), once) << text;
        for (const auto& t : once) {
            ASSERT_FALSE(t.empty());
            ASSERT_EQ(t.find_first_of(" \t\n"), std::string::npos);
        }
    }
}

TEST(TextpipeProperty, DocFreqSumsMatchUniqueTermCounts)
{
    std::mt19937_64 rng(5);
    for (int round = 0; round < 300; ++round) {
        auto docs = random_docs(rng, 20, 15);
        auto v = build_vocabulary(docs);
        std::size_t unique_sum = 0;
        std::size_t total = 0;
        for (const auto& d : docs) {
            unique_sum += std::set<std::string>(d.begin(), d.end()).size();
            total += d.size();
        }
        std::size_t df_sum = 0;
        for (const auto& t : v.terms()) {
            const auto df = v.doc_freq(t);
            ASSERT_GE(df, 1u);
            ASSERT_LE(df, v.n_docs());
            df_sum += df;
        }
        ASSERT_EQ(df_sum, unique_sum);
        ASSERT_DOUBLE_EQ(v.avgdl(), static_cast<double>(total) / static_cast<double>(docs.size()));
        ASSERT_GT(v.avgdl(), 0.0);

        // statistics do not depend on document order
        auto shuffled = docs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto w = build_vocabulary(shuffled);
        ASSERT_EQ(w.size(), v.size());
        ASSERT_DOUBLE_EQ(w.avgdl(), v.avgdl());
        for (const auto& t : v.terms()) {
            ASSERT_EQ(w.doc_freq(t), v.doc_freq(t));
        }
        // ids are deterministic for a fixed order
        auto again = build_vocabulary(docs);
        ASSERT_EQ(again.terms(), v.terms());
    }
}
