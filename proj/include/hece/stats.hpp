#ifndef HECE_STATS_HPP
#define HECE_STATS_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hece/vocab.hpp"

namespace hece {

/// Token density over a corpus. Counts are additive; the ratios are
/// derived and are NaN when their denominator is zero.
///
/// Characters are the non-whitespace codepoints of the normalized text.
/// Tokens are everything the flat encoder emits (syllables, digits and
/// punctuation); syllables are only the tokens coming from words.
struct DensityStats {
    std::uint64_t word_count = 0;
    std::uint64_t token_count = 0;
    std::uint64_t syllable_count = 0;
    std::uint64_t char_count = 0;

    double tokens_per_word() const;
    double tokens_per_char() const;
    double syllables_per_word() const;

    DensityStats& operator+=(const DensityStats& other);
    friend bool operator==(const DensityStats&, const DensityStats&) = default;
};

class StatsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Counts for a single document.
DensityStats document_density(std::string_view document, const Vocab& vocab);

/// Sum over `corpus`. Throws StatsError if the corpus has no characters.
DensityStats density(std::span<const std::string> corpus, const Vocab& vocab);

std::string to_json(const DensityStats& stats);

}  // namespace hece

#endif  // HECE_STATS_HPP
