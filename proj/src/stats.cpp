#include "hece/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hece/codec.hpp"
#include "hece/pretokenizer.hpp"
#include "hece/segment.hpp"
#include "hece/utf8.hpp"
#include "json.hpp"

namespace hece {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double DensityStats::tokens_per_word() const { return ratio(token_count, word_count); }
double DensityStats::tokens_per_char() const { return ratio(token_count, char_count); }
double DensityStats::syllables_per_word() const { return ratio(syllable_count, word_count); }

DensityStats& DensityStats::operator+=(const DensityStats& o) {
    word_count += o.word_count;
    token_count += o.token_count;
    syllable_count += o.syllable_count;
    char_count += o.char_count;
    return *this;
}

DensityStats document_density(std::string_view document, const Vocab& vocab) {
    const std::string normalized = normalize(document);
    DensityStats s;
    for (const auto& u : split_units(normalized)) {
        if (u.kind == UnitKind::Word) ++s.word_count;
    }
    for (const auto& p : segment_normalized(normalized)) {
        if (p.kind == PieceKind::Syllable) ++s.syllable_count;
    }
    s.token_count = encode(normalized, vocab, EncodeMode::Flat).ids.size();
    const std::size_t spaces = static_cast<std::size_t>(std::count(normalized.begin(), normalized.end(), ' '));
    s.char_count = utf8::length(normalized) - spaces;
    return s;
}

DensityStats density(std::span<const std::string> corpus, const Vocab& vocab) {
    DensityStats total;
    for (const auto& doc : corpus) total += document_density(doc, vocab);
    if (total.char_count == 0) throw StatsError("density: corpus is empty");
    return total;
}

std::string to_json(const DensityStats& s) {
    auto finite_or_null = [](double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); };
    nlohmann::json j = {
        {"tokens_per_word", finite_or_null(s.tokens_per_word())},
        {"tokens_per_char", finite_or_null(s.tokens_per_char())},
        {"syllables_per_word", finite_or_null(s.syllables_per_word())},
        {"word_count", s.word_count},
        {"token_count", s.token_count},
        {"syllable_count", s.syllable_count},
        {"char_count", s.char_count},
    };
    return j.dump();
}

}  // namespace hece
