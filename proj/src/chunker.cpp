#include "hece/chunker.hpp"

#include <string>

namespace hece {

void ChunkSpec::validate() const {
    if (size < 1) throw std::invalid_argument("chunk size must be at least 1");
    if (stride < 1 || stride > size) {
        throw std::invalid_argument("chunk stride must be in [1, " + std::to_string(size) + "], got " +
                                    std::to_string(stride));
    }
}

namespace {

template <typename Emit>
void for_each_window(std::size_t length, const ChunkSpec& spec, Emit&& emit) {
    spec.validate();
    if (length == 0) return;
    if (length <= spec.size) {
        emit(std::size_t{0}, length);
        return;
    }
    std::size_t start = 0;
    std::size_t covered = 0;
    for (; start + spec.size <= length; start += spec.stride) {
        emit(start, spec.size);
        covered = start + spec.size;
    }
    if (covered < length) emit(length - spec.size, spec.size);
}

}  // namespace

std::vector<Chunk> chunk_tokens(std::span<const TokenId> ids, const ChunkSpec& spec, std::size_t passage) {
    std::vector<Chunk> out;
    for_each_window(ids.size(), spec, [&](std::size_t start, std::size_t len) {
        auto window = ids.subspan(start, len);
        out.push_back({passage, start, {window.begin(), window.end()}});
    });
    return out;
}

std::size_t chunk_count(std::size_t length, const ChunkSpec& spec) {
    std::size_t n = 0;
    for_each_window(length, spec, [&](std::size_t, std::size_t) { ++n; });
    return n;
}

}  // namespace hece
