#include "hece/codec.hpp"

#include <gtest/gtest.h>

#include <random>

#include "hece/pretokenizer.hpp"
#include "hece/utf8.hpp"
#include "test_support.hpp"

namespace hece {
namespace {

using Texts = std::vector<std::string>;

class CodecTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        vocab_ = new Vocab(build_vocab(testing::read_lines(HECE_TEST_DATA_DIR "/fixture_tr.txt")));
    }
    static void TearDownTestSuite() { delete vocab_; }

    static const Vocab& v() { return *vocab_; }

    static Texts texts(const Encoding& e) { return token_texts(e.ids, v()); }

    static Vocab* vocab_;
};

Vocab* CodecTest::vocab_ = nullptr;

TEST_F(CodecTest, FlatEncoding) {
    const Encoding e = encode("atasözleri geçmişten", v(), EncodeMode::Flat);
    EXPECT_EQ(texts(e), (Texts{"a", "ta", "söz", "le", "ri", "geç", "miş", "ten"}));
    EXPECT_EQ(e.mode, EncodeMode::Flat);
    ASSERT_EQ(e.offsets.size(), e.ids.size());
    EXPECT_EQ(e.offsets[0], (TokenSource{0, 0}));
    EXPECT_EQ(e.offsets[4], (TokenSource{0, 4}));
    EXPECT_EQ(e.offsets[5], (TokenSource{1, 0}));
}

TEST_F(CodecTest, LosslessEncodingMarksWordBoundaries) {
    const Encoding e = encode("atasözleri geçmişten", v(), EncodeMode::Lossless);
    EXPECT_EQ(texts(e), (Texts{"a", "ta", "söz", "le", "ri", "[WB]", "geç", "miş", "ten"}));
    EXPECT_EQ(e.offsets[5], (TokenSource{1, TokenSource::kNoPiece}));
}

TEST_F(CodecTest, EmptyInput) {
    EXPECT_TRUE(encode("", v(), EncodeMode::Flat).ids.empty());
    EXPECT_TRUE(encode("  \t ", v(), EncodeMode::Lossless).ids.empty());
}

TEST_F(CodecTest, UnknownTokensBecomeUnk) {
    const Encoding e = encode("xq", v());
    EXPECT_EQ(e.ids, (std::vector<TokenId>{special::kUnk, special::kUnk}));
    EXPECT_EQ(decode(e.ids, v(), EncodeMode::Lossless), "[UNK][UNK]");
}

TEST_F(CodecTest, Decode) {
    const Encoding lossless = encode("atasözleri geçmişten", v(), EncodeMode::Lossless);
    EXPECT_EQ(decode(lossless.ids, v(), EncodeMode::Lossless), "atasözleri geçmişten");
    const Encoding flat = encode("atasözleri geçmişten", v(), EncodeMode::Flat);
    EXPECT_EQ(decode(flat.ids, v(), EncodeMode::Flat), "atasözlerigeçmişten");
    EXPECT_EQ(decode(lossless.ids, v(), EncodeMode::Flat), "atasözlerigeçmişten");
}

TEST_F(CodecTest, DecodeSkipsControlTokens) {
    const TokenId ka = *v().find("ka"), dar = *v().find("dar");
    const std::vector<TokenId> ids{special::kCls, ka, special::kPad, dar, special::kMask, special::kSep};
    EXPECT_EQ(decode(ids, v(), EncodeMode::Lossless), "kadar");
    EXPECT_EQ(decode(ids, v(), EncodeMode::Flat), "kadar");
}

TEST_F(CodecTest, DecodeRejectsOutOfRangeIds) {
    const std::vector<TokenId> ids{6, static_cast<TokenId>(v().size())};
    EXPECT_THROW(decode(ids, v()), DecodeError);
}

TEST_F(CodecTest, EncodeForModel) {
    const Encoding e = encode_for_model("kadar", v());
    EXPECT_EQ(texts(e), (Texts{"[CLS]", "ka", "dar", "[SEP]"}));
    EXPECT_EQ(encode_for_model("", v()).ids, (std::vector<TokenId>{special::kCls, special::kSep}));
    EXPECT_THROW(encode_for_model("kadar", v(), 1), std::invalid_argument);
}

TEST_F(CodecTest, EncodeForModelTruncates) {
    // 600 syllables: "ka" repeated as 300 two-syllable words.
    std::string text;
    for (int i = 0; i < 300; ++i) text += "kadar ";
    ASSERT_EQ(encode(text, v()).ids.size(), 600u);
    const Encoding e = encode_for_model(text, v(), 512);
    ASSERT_EQ(e.ids.size(), 512u);
    EXPECT_EQ(e.ids.front(), special::kCls);
    EXPECT_EQ(e.ids.back(), special::kSep);
    EXPECT_EQ(e.ids[510], *v().find("dar"));
    EXPECT_EQ(encode_for_model(text, v(), 2).ids, (std::vector<TokenId>{special::kCls, special::kSep}));
}

TEST_F(CodecTest, LosslessRoundTripProperty) {
    // Use a vocab built from the random texts themselves so no UNK appears.
    const std::u32string alphabet = U"aeıioöuübcçdfgğhjklmnprsştvyzAEIİOÖUÜ0123456789.,'!?-  \t";
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(0, 80);
    std::vector<std::string> docs;
    for (int i = 0; i < 500; ++i) {
        std::u32string raw;
        for (std::size_t n = len(rng); n > 0; --n) raw.push_back(alphabet[pick(rng)]);
        docs.push_back(utf8::encode(raw));
    }
    const Vocab local = build_vocab(docs);
    for (const auto& d : docs) {
        const Encoding lossless = encode(d, local, EncodeMode::Lossless);
        ASSERT_EQ(decode(lossless.ids, local, EncodeMode::Lossless), normalize(d)) << d;

        // WB never leads, trails or repeats.
        if (!lossless.ids.empty()) {
            ASSERT_NE(lossless.ids.front(), special::kWordBoundary);
            ASSERT_NE(lossless.ids.back(), special::kWordBoundary);
        }
        for (std::size_t i = 1; i < lossless.ids.size(); ++i) {
            ASSERT_FALSE(lossless.ids[i] == special::kWordBoundary && lossless.ids[i - 1] == special::kWordBoundary);
        }

        // Flat equals Lossless minus WB.
        std::vector<TokenId> stripped;
        for (TokenId id : lossless.ids) {
            if (id != special::kWordBoundary) stripped.push_back(id);
        }
        ASSERT_EQ(encode(d, local, EncodeMode::Flat).ids, stripped);
        for (TokenId id : lossless.ids) ASSERT_LT(id, local.size());
        ASSERT_EQ(std::count(lossless.ids.begin(), lossless.ids.end(), special::kUnk), 0);
    }
}

}  // namespace
}  // namespace hece
