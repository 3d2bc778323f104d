#ifndef HECE_CHUNKER_HPP
#define HECE_CHUNKER_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "hece/vocab.hpp"

namespace hece {

struct ChunkSpec {
    std::size_t size;
    std::size_t stride;

    /// size >= 1 and 1 <= stride <= size; throws std::invalid_argument.
    void validate() const;

    /// Pretraining windows: 256 tokens advanced by 128.
    static constexpr ChunkSpec training() { return {256, 128}; }
};

struct Chunk {
    std::size_t passage;
    std::size_t start;
    std::vector<TokenId> ids;

    friend bool operator==(const Chunk&, const Chunk&) = default;
};

/// Retrieval stride: half the window, at least 1.
constexpr std::size_t default_retrieval_stride(std::size_t size) noexcept {
    return size / 2 > 0 ? size / 2 : 1;
}

/// Windows start at 0, stride, 2*stride, ... while they fit. If the last
/// of those stops short of the end, one more window [len - size, len) is
/// added. Sequences no longer than `size` give a single window; empty
/// input gives none.
std::vector<Chunk> chunk_tokens(std::span<const TokenId> ids, const ChunkSpec& spec, std::size_t passage = 0);

/// Window count chunk_tokens would produce, without materializing them.
std::size_t chunk_count(std::size_t length, const ChunkSpec& spec);

}  // namespace hece

#endif  // HECE_CHUNKER_HPP
