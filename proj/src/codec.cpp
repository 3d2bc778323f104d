#include "hece/codec.hpp"

#include "hece/segment.hpp"

namespace hece {

Encoding encode(std::string_view text, const Vocab& vocab, EncodeMode mode) {
    Encoding enc;
    enc.mode = mode;
    const auto pieces = segment(text);
    enc.ids.reserve(pieces.size() * 2);
    enc.offsets.reserve(pieces.size() * 2);
    for (const auto& p : pieces) {
        if (mode == EncodeMode::Lossless && p.starts_spaced_unit) {
            enc.ids.push_back(special::kWordBoundary);
            enc.offsets.push_back({p.unit, TokenSource::kNoPiece});
        }
        enc.ids.push_back(vocab.id_or_unk(p.text));
        enc.offsets.push_back({p.unit, p.index});
    }
    return enc;
}

std::string decode(std::span<const TokenId> ids, const Vocab& vocab, EncodeMode mode) {
    std::string out;
    for (TokenId id : ids) {
        if (id >= vocab.size()) {
            throw DecodeError("token id " + std::to_string(id) + " out of range for vocab of size " +
                              std::to_string(vocab.size()));
        }
        switch (id) {
            case special::kPad:
            case special::kCls:
            case special::kSep:
            case special::kMask:
                break;
            case special::kWordBoundary:
                if (mode == EncodeMode::Lossless) out.push_back(' ');
                break;
            default:
                out += vocab.token(id);
        }
    }
    return out;
}

Encoding encode_for_model(std::string_view text, const Vocab& vocab, std::size_t max_length) {
    if (max_length < 2) throw std::invalid_argument("encode_for_model: max_length must be at least 2");
    Encoding body = encode(text, vocab, EncodeMode::Flat);
    const std::size_t keep = std::min(body.ids.size(), max_length - 2);

    Encoding enc;
    enc.mode = EncodeMode::Flat;
    enc.ids.reserve(keep + 2);
    enc.offsets.reserve(keep + 2);
    enc.ids.push_back(special::kCls);
    enc.offsets.push_back({0, TokenSource::kNoPiece});
    enc.ids.insert(enc.ids.end(), body.ids.begin(), body.ids.begin() + static_cast<std::ptrdiff_t>(keep));
    enc.offsets.insert(enc.offsets.end(), body.offsets.begin(),
                       body.offsets.begin() + static_cast<std::ptrdiff_t>(keep));
    enc.ids.push_back(special::kSep);
    enc.offsets.push_back({keep ? enc.offsets.back().unit : 0, TokenSource::kNoPiece});
    return enc;
}

std::vector<std::string> token_texts(std::span<const TokenId> ids, const Vocab& vocab) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (TokenId id : ids) {
        if (id >= vocab.size()) throw DecodeError("token id " + std::to_string(id) + " out of range");
        out.push_back(vocab.token(id));
    }
    return out;
}

}  // namespace hece
