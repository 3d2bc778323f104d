#ifndef HECE_SYLLABIFIER_HPP
#define HECE_SYLLABIFIER_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hece {

enum class LetterClass { Vowel, Consonant, Other };

/// Syllable templates. The first six are the Turkish canonical shapes;
/// LoneC is a consonant left over when nothing else matches (loanword
/// clusters such as the "t" in "tren").
enum class PatternTag { V, CV, VC, CVC, VCC, CVCC, LoneC };

struct Syllable {
    std::string text;  // UTF-8
    PatternTag pattern;

    friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Thrown for inputs outside the syllabifier's domain.
class SyllabifyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vowels: a e ı i o ö u ü. Consonants: the 21 Turkish consonants plus
/// q w x. Everything else, including uppercase, is Other.
LetterClass classify_char(char32_t c) noexcept;

/// Number of letters a pattern spans.
constexpr std::size_t pattern_length(PatternTag tag) noexcept {
    switch (tag) {
        case PatternTag::V:
        case PatternTag::LoneC: return 1;
        case PatternTag::CV:
        case PatternTag::VC: return 2;
        case PatternTag::CVC:
        case PatternTag::VCC: return 3;
        case PatternTag::CVCC: return 4;
    }
    return 0;
}

std::string_view to_string(PatternTag tag) noexcept;

/// Pattern whose class sequence equals that of `s` (UTF-8). A single
/// consonant yields LoneC; anything else unmatched yields nullopt.
std::optional<PatternTag> match_pattern(std::string_view s);

/// Right-to-left greedy decomposition. At each position the window is
/// tested as CVCC, VCC, CVC, VC, CV, V in that order; an unmatched
/// consonant becomes LoneC. Concatenating the result reproduces `word`.
///
/// Throws SyllabifyError on empty input or on any Other-class codepoint.
std::vector<Syllable> syllabify_word(std::string_view word);

/// Same as syllabify_word but returns only the texts.
std::vector<std::string> syllabify_word_texts(std::string_view word);

}  // namespace hece

#endif  // HECE_SYLLABIFIER_HPP
