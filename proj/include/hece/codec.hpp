#ifndef HECE_CODEC_HPP
#define HECE_CODEC_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hece/vocab.hpp"

namespace hece {

/// Flat: tokens back to back, word boundaries are lost.
/// Lossless: a WB token marks every whitespace gap between units.
enum class EncodeMode { Flat, Lossless };

/// Where a token came from. Special tokens use kNoPiece as `piece`; a WB
/// token points at the unit that follows it.
struct TokenSource {
    static constexpr std::uint32_t kNoPiece = std::numeric_limits<std::uint32_t>::max();

    std::uint32_t unit;
    std::uint32_t piece;

    friend bool operator==(const TokenSource&, const TokenSource&) = default;
};

struct Encoding {
    std::vector<TokenId> ids;
    EncodeMode mode = EncodeMode::Flat;
    std::vector<TokenSource> offsets;  // parallel to ids
};

class DecodeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

inline constexpr std::size_t kDefaultMaxModelLength = 512;

/// Unknown tokens map to [UNK]; never throws on valid UTF-8.
Encoding encode(std::string_view text, const Vocab& vocab, EncodeMode mode = EncodeMode::Flat);

/// Lossless: WB becomes a space. Both modes drop PAD/CLS/SEP/MASK, and
/// Flat also drops WB. UNK renders as "[UNK]". Throws DecodeError on
/// ids >= vocab.size().
std::string decode(std::span<const TokenId> ids, const Vocab& vocab, EncodeMode mode = EncodeMode::Flat);

/// [CLS] + flat ids + [SEP], cut to `max_length` (>= 2) by dropping body
/// tokens from the end; the final [SEP] is always kept.
Encoding encode_for_model(std::string_view text, const Vocab& vocab,
                          std::size_t max_length = kDefaultMaxModelLength);

std::vector<std::string> token_texts(std::span<const TokenId> ids, const Vocab& vocab);

}  // namespace hece

#endif  // HECE_CODEC_HPP
