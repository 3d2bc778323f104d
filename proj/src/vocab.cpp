#include "hece/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "hece/segment.hpp"
#include "hece/syllabifier.hpp"
#include "hece/utf8.hpp"
#include "json.hpp"

namespace hece {

using nlohmann::json;

namespace {

constexpr std::string_view kFormat = "hece-vocab";
constexpr int kVersion = 1;

}  // namespace

Vocab Vocab::from_entries(std::vector<Entry> tokens) {
    Vocab v;
    v.entries_.reserve(tokens.size() + special::kCount);
    for (auto text : special::kTexts) v.entries_.push_back({std::string(text), 0});
    for (auto& t : tokens) v.entries_.push_back(std::move(t));
    v.ids_.reserve(v.entries_.size());
    for (TokenId id = 0; id < v.entries_.size(); ++id) {
        if (!v.ids_.emplace(v.entries_[id].text, id).second) {
            throw VocabError(VocabError::Kind::Duplicate, "duplicate token \"" + v.entries_[id].text + "\"");
        }
    }
    return v;
}

std::optional<TokenId> Vocab::find(std::string_view text) const {
    if (auto it = ids_.find(text); it != ids_.end()) return it->second;
    return std::nullopt;
}

std::size_t Vocab::syllable_types() const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin() + special::kCount, entries_.end(), [](const Entry& e) {
            const auto cps = utf8::decode(e.text);
            return !cps.empty() && std::all_of(cps.begin(), cps.end(), [](char32_t c) {
                return classify_char(c) != LetterClass::Other;
            });
        }));
}

void VocabBuilder::add(std::string_view document) {
    for (auto& p : segment(document)) {
        ++counts_[std::move(p.text)];
        ++total_;
    }
}

void VocabBuilder::merge(const VocabBuilder& other) {
    for (const auto& [text, n] : other.counts_) counts_[text] += n;
    total_ += other.total_;
}

Vocab VocabBuilder::build() const {
    if (counts_.empty()) throw VocabError(VocabError::Kind::EmptyCorpus, "no tokens found in corpus");
    std::vector<Vocab::Entry> tokens;
    tokens.reserve(counts_.size());
    for (const auto& [text, n] : counts_) tokens.push_back({text, n});
    // std::string compares bytes as unsigned char, and UTF-8 byte order is
    // codepoint order.
    std::sort(tokens.begin(), tokens.end(), [](const Vocab::Entry& a, const Vocab::Entry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.text < b.text;
    });
    return Vocab::from_entries(std::move(tokens));
}

Vocab build_vocab(std::span<const std::string> documents, unsigned threads) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(documents.size())));
    if (threads <= 1) {
        VocabBuilder b;
        for (const auto& d : documents) b.add(d);
        return b.build();
    }
    std::vector<VocabBuilder> partial(threads);
    {
        std::vector<std::jthread> workers;
        const std::size_t per = (documents.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t lo = std::min(documents.size(), t * per);
            const std::size_t hi = std::min(documents.size(), lo + per);
            workers.emplace_back([&, t, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) partial[t].add(documents[i]);
            });
        }
    }
    for (unsigned t = 1; t < threads; ++t) partial[0].merge(partial[t]);
    return partial[0].build();
}

std::string vocab_to_json(const Vocab& vocab) {
    json tokens = json::array();
    const auto entries = vocab.entries();
    for (TokenId id = special::kCount; id < entries.size(); ++id) {
        tokens.push_back({{"text", entries[id].text}, {"id", id}, {"count", entries[id].count}});
    }
    json doc = {{"format", kFormat},
                {"version", kVersion},
                {"specials", special::kTexts},
                {"tokens", std::move(tokens)}};
    // One token record per line keeps diffs readable.
    std::ostringstream out;
    out << "{\n  \"format\": " << doc["format"].dump() << ",\n  \"version\": " << kVersion
        << ",\n  \"specials\": " << doc["specials"].dump() << ",\n  \"tokens\": [";
    for (std::size_t i = 0; i < doc["tokens"].size(); ++i) {
        out << (i ? ",\n    " : "\n    ") << doc["tokens"][i].dump();
    }
    out << "\n  ]\n}\n";
    return out.str();
}

Vocab vocab_from_json(std::string_view text) {
    using Kind = VocabError::Kind;
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) throw VocabError(Kind::Malformed, "vocab file is not a JSON object");

    if (doc.value("format", std::string{}) != kFormat) {
        throw VocabError(Kind::Version, "vocab file has no \"format\": \"hece-vocab\" marker");
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"].get<int>() != kVersion) {
        throw VocabError(Kind::Version, "unsupported vocab version (expected " + std::to_string(kVersion) + ")");
    }
    if (!doc.contains("specials") || !doc["specials"].is_array()) {
        throw VocabError(Kind::Version, "vocab file is missing the specials block");
    }
    const auto& specials = doc["specials"];
    if (specials.size() != special::kCount) throw VocabError(Kind::Version, "unexpected number of special tokens");
    for (std::size_t i = 0; i < special::kCount; ++i) {
        if (!specials[i].is_string() || specials[i].get<std::string>() != special::kTexts[i]) {
            throw VocabError(Kind::Version, "special token " + std::to_string(i) + " does not match this version");
        }
    }
    if (!doc.contains("tokens") || !doc["tokens"].is_array()) {
        throw VocabError(Kind::Malformed, "vocab file is missing the tokens array");
    }

    const auto& records = doc["tokens"];
    std::vector<Vocab::Entry> tokens(records.size());
    std::vector<bool> seen(records.size(), false);
    for (const auto& r : records) {
        if (!r.is_object() || !r.contains("text") || !r["text"].is_string() || !r.contains("id") ||
            !r["id"].is_number_unsigned() || !r.contains("count") || !r["count"].is_number_unsigned()) {
            throw VocabError(Kind::Malformed, "token record needs string text, unsigned id and count: " + r.dump());
        }
        const auto id = r["id"].get<std::uint64_t>();
        if (id < special::kCount || id >= special::kCount + records.size()) {
            throw VocabError(Kind::Malformed, "token id out of range: " + r.dump());
        }
        const std::size_t slot = id - special::kCount;
        if (seen[slot]) throw VocabError(Kind::Duplicate, "duplicate token id " + std::to_string(id));
        seen[slot] = true;
        tokens[slot] = {r["text"].get<std::string>(), r["count"].get<std::uint64_t>()};
    }
    return Vocab::from_entries(std::move(tokens));
}

void save_vocab(const Vocab& vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw VocabError(VocabError::Kind::Io, "cannot open " + path.string() + " for writing");
    out << vocab_to_json(vocab);
    if (!out) throw VocabError(VocabError::Kind::Io, "failed writing " + path.string());
}

Vocab load_vocab(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw VocabError(VocabError::Kind::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return vocab_from_json(buf.str());
}

}  // namespace hece
