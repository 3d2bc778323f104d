#include "hece/pretokenizer.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <stdexcept>

#include "hece/syllabifier.hpp"
#include "hece/utf8.hpp"

namespace hece {

namespace {

const icu::Normalizer2& nfc() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
        throw std::runtime_error(std::string("ICU NFC unavailable: ") + u_errorName(status));
    }
    return *n;
}

const icu::Locale& turkish() {
    static const icu::Locale locale("tr");
    return locale;
}

bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool is_letter(char32_t c) { return classify_char(c) != LetterClass::Other; }

}  // namespace

std::string normalize(std::string_view text) {
    const auto& normalizer = nfc();
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString s = icu::UnicodeString::fromUTF8(
        icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
    icu::UnicodeString composed = normalizer.normalize(s, status);
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("NFC normalization failed: ") + u_errorName(status));
    }
    composed.toLower(turkish());
    // Lowercasing can leave decomposed sequences behind (e.g. I + U+0307).
    composed = normalizer.normalize(composed, status);
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("NFC normalization failed: ") + u_errorName(status));
    }

    std::string lowered;
    composed.toUTF8String(lowered);

    std::string out;
    out.reserve(lowered.size());
    bool pending_space = false;
    for (char32_t c : utf8::decode(lowered)) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        utf8::append(out, c);
    }
    return out;
}

std::vector<TextUnit> split_units(std::string_view normalized) {
    const std::u32string chars = utf8::decode(normalized);
    std::vector<TextUnit> units;
    bool space_before = false;
    std::size_t i = 0;
    while (i < chars.size()) {
        const char32_t c = chars[i];
        if (is_space(c)) {
            space_before = !units.empty();
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        UnitKind kind = UnitKind::PunctChar;
        if (is_letter(c)) {
            kind = UnitKind::Word;
            while (j < chars.size() && is_letter(chars[j])) ++j;
        } else if (is_digit(c)) {
            kind = UnitKind::DigitRun;
            while (j < chars.size() && is_digit(chars[j])) ++j;
        }
        units.push_back({kind, utf8::encode(std::u32string_view(chars).substr(i, j - i)), i, space_before});
        space_before = false;
        i = j;
    }
    return units;
}

std::string join_units(const std::vector<TextUnit>& units) {
    std::string out;
    for (const auto& u : units) {
        if (u.space_before) out.push_back(' ');
        out += u.text;
    }
    return out;
}

}  // namespace hece
