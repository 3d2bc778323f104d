#include "hece/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace hece {
namespace {

Vocab fixture_vocab() { return build_vocab(testing::read_lines(HECE_TEST_DATA_DIR "/fixture_tr.txt")); }

TEST(Density, TwoWords) {
    const std::vector<std::string> corpus{"atasözleri geçmişten"};
    const DensityStats s = density(corpus, build_vocab(corpus));
    EXPECT_EQ(s.word_count, 2u);
    EXPECT_EQ(s.token_count, 8u);
    EXPECT_EQ(s.syllable_count, 8u);
    EXPECT_EQ(s.char_count, 19u);
    EXPECT_DOUBLE_EQ(s.tokens_per_word(), 4.0);
    EXPECT_DOUBLE_EQ(s.syllables_per_word(), 4.0);
    EXPECT_DOUBLE_EQ(s.tokens_per_char(), 8.0 / 19.0);
}

TEST(Density, SingleLetter) {
    const std::vector<std::string> corpus{"a"};
    const DensityStats s = density(corpus, build_vocab(corpus));
    EXPECT_DOUBLE_EQ(s.tokens_per_word(), 1.0);
    EXPECT_DOUBLE_EQ(s.tokens_per_char(), 1.0);
}

TEST(Density, PunctuationAndDigitsCountAsTokensNotWords) {
    const std::vector<std::string> corpus{"Ankara'da 1923."};
    const DensityStats s = density(corpus, build_vocab(corpus));
    EXPECT_EQ(s.word_count, 2u);       // ankara, da
    EXPECT_EQ(s.syllable_count, 4u);   // an ka ra da
    EXPECT_EQ(s.token_count, 10u);     // + ' 1 9 2 3 .
    EXPECT_EQ(s.char_count, 14u);
}

TEST(Density, EmptyCorpusFails) {
    const Vocab v = fixture_vocab();
    EXPECT_THROW(density(std::vector<std::string>{}, v), StatsError);
    EXPECT_THROW(density(std::vector<std::string>{"", "  "}, v), StatsError);
}

TEST(Density, NoWordsGivesNaNRatios) {
    const std::vector<std::string> corpus{"1923"};
    const DensityStats s = density(corpus, build_vocab(corpus));
    EXPECT_TRUE(std::isnan(s.tokens_per_word()));
    EXPECT_DOUBLE_EQ(s.tokens_per_char(), 1.0);
    EXPECT_NE(to_json(s).find("\"tokens_per_word\":null"), std::string::npos);
}

TEST(Density, StreamingEqualsBatchAndInvariantsHold) {
    const auto corpus = testing::read_lines(HECE_TEST_DATA_DIR "/fixture_tr.txt");
    const Vocab v = build_vocab(corpus);
    DensityStats running;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        running += document_density(corpus[i], v);
        const std::vector<std::string> prefix(corpus.begin(), corpus.begin() + static_cast<std::ptrdiff_t>(i + 1));
        const DensityStats batch = density(prefix, v);
        ASSERT_EQ(running, batch);
        ASSERT_GE(batch.tokens_per_word(), 1.0);
        ASSERT_LE(batch.syllables_per_word(), batch.tokens_per_word());
    }
}

}  // namespace
}  // namespace hece
