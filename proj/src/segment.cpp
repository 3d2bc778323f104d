#include "hece/segment.hpp"

#include "hece/syllabifier.hpp"
#include "hece/utf8.hpp"

namespace hece {

std::vector<Piece> segment_normalized(std::string_view normalized) {
    const auto units = split_units(normalized);
    std::vector<Piece> pieces;
    pieces.reserve(normalized.size() / 2);
    for (std::uint32_t u = 0; u < units.size(); ++u) {
        const TextUnit& unit = units[u];
        const std::size_t first = pieces.size();
        switch (unit.kind) {
            case UnitKind::Word: {
                std::uint32_t k = 0;
                for (auto& s : syllabify_word(unit.text)) {
                    pieces.push_back({PieceKind::Syllable, std::move(s.text), u, k++, false});
                }
                break;
            }
            case UnitKind::DigitRun: {
                std::uint32_t k = 0;
                for (char d : unit.text) pieces.push_back({PieceKind::Digit, std::string(1, d), u, k++, false});
                break;
            }
            case UnitKind::PunctChar:
                pieces.push_back({PieceKind::Punct, unit.text, u, 0, false});
                break;
        }
        pieces[first].starts_spaced_unit = unit.space_before;
    }
    return pieces;
}

std::vector<Piece> segment(std::string_view text) { return segment_normalized(normalize(text)); }

std::string hyphenate(std::string_view text, bool words_only) {
    std::string out;
    bool have_unit = false;
    std::uint32_t unit = 0;
    bool pending_space = false;
    for (const auto& p : segment(text)) {
        const bool same_unit = have_unit && p.unit == unit;
        if (!same_unit) pending_space = pending_space || p.starts_spaced_unit;
        if (words_only && p.kind != PieceKind::Syllable) {
            // A dropped unit still separates the words around it.
            pending_space = true;
            have_unit = false;
            continue;
        }
        if (same_unit) {
            if (p.kind == PieceKind::Syllable) out.push_back('-');
        } else if (pending_space && !out.empty()) {
            out.push_back(' ');
        }
        pending_space = false;
        have_unit = true;
        unit = p.unit;
        out += p.text;
    }
    return out;
}

}  // namespace hece
