#ifndef HECE_VOCAB_HPP
#define HECE_VOCAB_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hece {

using TokenId = std::uint32_t;

namespace special {
inline constexpr TokenId kPad = 0;
inline constexpr TokenId kUnk = 1;
inline constexpr TokenId kCls = 2;
inline constexpr TokenId kSep = 3;
inline constexpr TokenId kMask = 4;
inline constexpr TokenId kWordBoundary = 5;
inline constexpr TokenId kCount = 6;

inline constexpr std::array<std::string_view, kCount> kTexts{
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "[WB]"};
}  // namespace special

class VocabError : public std::runtime_error {
public:
    enum class Kind { EmptyCorpus, Io, Malformed, Version, Duplicate };

    VocabError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Immutable bijection between token texts and ids. Ids 0-5 are the
/// special tokens; regular tokens (syllables, single digits, punctuation
/// codepoints) start at 6.
class Vocab {
public:
    struct Entry {
        std::string text;
        std::uint64_t count = 0;

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    /// Assigns ids 6, 7, ... to `tokens` in the given order. Throws
    /// VocabError::Duplicate on repeated or special-colliding texts.
    static Vocab from_entries(std::vector<Entry> tokens);

    std::size_t size() const noexcept { return entries_.size(); }

    std::optional<TokenId> find(std::string_view text) const;
    TokenId id_or_unk(std::string_view text) const { return find(text).value_or(special::kUnk); }

    /// Throws std::out_of_range for ids >= size().
    const std::string& token(TokenId id) const { return entries_.at(id).text; }
    std::uint64_t count(TokenId id) const { return entries_.at(id).count; }

    std::span<const Entry> entries() const noexcept { return entries_; }

    /// Regular tokens made only of Turkish letters.
    std::size_t syllable_types() const;

    friend bool operator==(const Vocab& a, const Vocab& b) { return a.entries_ == b.entries_; }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
    };

    Vocab() = default;

    std::vector<Entry> entries_;
    std::unordered_map<std::string, TokenId, Hash, std::equal_to<>> ids_;
};

/// Streaming token counter. Documents may be added in any order and
/// builders merged; the resulting vocabulary depends only on the multiset
/// of documents.
class VocabBuilder {
public:
    void add(std::string_view document);
    void merge(const VocabBuilder& other);

    std::uint64_t total_tokens() const noexcept { return total_; }

    /// Ids by descending count, ties by ascending codepoint order.
    /// Throws VocabError::EmptyCorpus when nothing was counted.
    Vocab build() const;

private:
    std::unordered_map<std::string, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Counts `documents` on up to `threads` workers and builds the vocabulary.
Vocab build_vocab(std::span<const std::string> documents, unsigned threads = 1);

/// Versioned JSON document:
///   {"format": "hece-vocab", "version": 1,
///    "specials": ["[PAD]", ...],
///    "tokens": [{"text": "a", "id": 6, "count": 12}, ...]}
std::string vocab_to_json(const Vocab& vocab);
Vocab vocab_from_json(std::string_view json);

void save_vocab(const Vocab& vocab, const std::filesystem::path& path);
Vocab load_vocab(const std::filesystem::path& path);

}  // namespace hece

#endif  // HECE_VOCAB_HPP
