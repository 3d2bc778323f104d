#ifndef HECE_PRETOKENIZER_HPP
#define HECE_PRETOKENIZER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hece {

enum class UnitKind { Word, DigitRun, PunctChar };

struct TextUnit {
    UnitKind kind;
    std::string text;
    std::size_t char_offset;  // codepoint index into the normalized text
    bool space_before;        // a space separates this unit from the previous one

    friend bool operator==(const TextUnit&, const TextUnit&) = default;
};

/// NFC composition, Turkish lowercasing (İ -> i, I -> ı), then whitespace
/// runs collapsed to one space and both ends trimmed.
std::string normalize(std::string_view text);

/// Splits normalized text into maximal letter runs, maximal ASCII digit
/// runs and single-codepoint punctuation units. Apostrophes are ordinary
/// punctuation, so "ankara'da" gives ankara / ' / da.
std::vector<TextUnit> split_units(std::string_view normalized);

/// Inverse of split_units on normalized input.
std::string join_units(const std::vector<TextUnit>& units);

}  // namespace hece

#endif  // HECE_PRETOKENIZER_HPP
