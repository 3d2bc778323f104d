#include "hece/syllabifier.hpp"

#include <algorithm>
#include <array>

#include "hece/utf8.hpp"

namespace hece {

namespace {

constexpr std::u32string_view kVowels = U"aeıioöuü";
constexpr std::u32string_view kConsonants = U"bcçdfgğhjklmnprsştvyzqwx";

// Class-sequence signatures, in the order the matcher tries them.
struct Template {
    PatternTag tag;
    std::string_view shape;
};
constexpr std::array<Template, 6> kTemplates{{
    {PatternTag::CVCC, "CVCC"},
    {PatternTag::VCC, "VCC"},
    {PatternTag::CVC, "CVC"},
    {PatternTag::VC, "VC"},
    {PatternTag::CV, "CV"},
    {PatternTag::V, "V"},
}};

char class_code(LetterClass c) {
    switch (c) {
        case LetterClass::Vowel: return 'V';
        case LetterClass::Consonant: return 'C';
        case LetterClass::Other: return 'O';
    }
    return 'O';
}

std::string class_string(std::u32string_view s) {
    std::string out(s.size(), 'O');
    std::transform(s.begin(), s.end(), out.begin(),
                   [](char32_t c) { return class_code(classify_char(c)); });
    return out;
}

}  // namespace

LetterClass classify_char(char32_t c) noexcept {
    if (kVowels.find(c) != std::u32string_view::npos) return LetterClass::Vowel;
    if (kConsonants.find(c) != std::u32string_view::npos) return LetterClass::Consonant;
    return LetterClass::Other;
}

std::string_view to_string(PatternTag tag) noexcept {
    switch (tag) {
        case PatternTag::V: return "V";
        case PatternTag::CV: return "CV";
        case PatternTag::VC: return "VC";
        case PatternTag::CVC: return "CVC";
        case PatternTag::VCC: return "VCC";
        case PatternTag::CVCC: return "CVCC";
        case PatternTag::LoneC: return "LoneC";
    }
    return "?";
}

std::optional<PatternTag> match_pattern(std::string_view s) {
    const std::string shape = class_string(utf8::decode(s));
    for (const auto& t : kTemplates) {
        if (shape == t.shape) return t.tag;
    }
    if (shape == "C") return PatternTag::LoneC;
    return std::nullopt;
}

std::vector<Syllable> syllabify_word(std::string_view word) {
    if (word.empty()) throw SyllabifyError("syllabify_word: empty word");
    const std::u32string letters = utf8::decode(word);
    const std::string shape = class_string(letters);
    if (shape.find('O') != std::string::npos) {
        throw SyllabifyError("syllabify_word: non-letter codepoint in \"" + std::string(word) + "\"");
    }

    std::vector<Syllable> out;
    // `end` is one past the rightmost unconsumed letter.
    std::size_t end = letters.size();
    while (end > 0) {
        PatternTag tag = PatternTag::LoneC;
        for (const auto& t : kTemplates) {
            const std::size_t n = t.shape.size();
            if (n <= end && std::string_view(shape).substr(end - n, n) == t.shape) {
                tag = t.tag;
                break;
            }
        }
        const std::size_t n = pattern_length(tag);
        out.push_back({utf8::encode(std::u32string_view(letters).substr(end - n, n)), tag});
        end -= n;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<std::string> syllabify_word_texts(std::string_view word) {
    std::vector<std::string> out;
    for (auto& s : syllabify_word(word)) out.push_back(std::move(s.text));
    return out;
}

}  // namespace hece
