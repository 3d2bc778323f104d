#ifndef HECE_SEGMENT_HPP
#define HECE_SEGMENT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hece/pretokenizer.hpp"

namespace hece {

enum class PieceKind { Syllable, Digit, Punct };

/// One vocabulary-level token before id lookup.
struct Piece {
    PieceKind kind;
    std::string text;
    std::uint32_t unit;   // index of the TextUnit it came from
    std::uint32_t index;  // position within that unit
    bool starts_spaced_unit;  // first piece of a unit preceded by whitespace
};

/// Normalizes, splits into units, syllabifies words and splits digit runs
/// into single digits. Every tokenizer path goes through here so that the
/// vocabulary builder and the encoder see identical pieces.
std::vector<Piece> segment(std::string_view text);

/// Same, for text that is already normalized.
std::vector<Piece> segment_normalized(std::string_view normalized);

/// Display form: syllables joined by '-', units separated by a space
/// where the text had whitespace ("a-ta-söz-le-ri geç-miş-ten"). With
/// `words_only`, digit and punctuation units are left out.
std::string hyphenate(std::string_view text, bool words_only = false);

}  // namespace hece

#endif  // HECE_SEGMENT_HPP
