// Shared helpers for the unit and acceptance tests: random inputs,
// synthetic datasets, a stub embedding service, and brute-force oracles
// that deliberately avoid the library's own code paths.
#ifndef HECE_TESTS_SUPPORT_HPP
#define HECE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hece/chunker.hpp"
#include "hece/dataset.hpp"
#include "hece/embedder.hpp"
#include "httplib.h"
#include "json.hpp"

namespace hece::testing {

inline const std::vector<std::string>& turkish_letters() {
    static const std::vector<std::string> letters = {
        "a", "e", "ı", "i", "o", "ö", "u", "ü",  // vowels
        "b", "c", "ç", "d", "f", "g", "ğ", "h", "j", "k", "l", "m", "n",
        "p", "r", "s", "ş", "t", "v", "y", "z", "q", "w", "x"};
    return letters;
}

/// Uniform random string over the 8 vowels and 24 consonants.
inline std::string random_word(std::mt19937_64& rng, std::size_t min_len = 1, std::size_t max_len = 30) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, turkish_letters().size() - 1);
    std::string w;
    for (std::size_t n = len(rng); n > 0; --n) w += turkish_letters()[pick(rng)];
    return w;
}

/// Plausible-looking word: 1-5 random CV/CVC syllables.
inline std::string random_syllabic_word(std::mt19937_64& rng) {
    static const std::vector<std::string> vowels = {"a", "e", "ı", "i", "o", "ö", "u", "ü"};
    static const std::vector<std::string> cons = {"b", "c", "ç", "d", "f", "g", "h", "k", "l", "m",
                                                  "n", "p", "r", "s", "ş", "t", "v", "y", "z"};
    std::uniform_int_distribution<int> nsyl(1, 5), coin(0, 2);
    std::uniform_int_distribution<std::size_t> v(0, vowels.size() - 1), c(0, cons.size() - 1);
    std::string w;
    for (int s = nsyl(rng); s > 0; --s) {
        w += cons[c(rng)];
        w += vowels[v(rng)];
        if (coin(rng) == 0) w += cons[c(rng)];
    }
    return w;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    return lines;
}

/// Window set by definition: every stride-aligned window that fits, plus
/// the end-aligned window if some index is left uncovered.
inline std::set<std::pair<std::size_t, std::size_t>> brute_force_windows(std::size_t len, std::size_t size,
                                                                          std::size_t stride) {
    std::set<std::pair<std::size_t, std::size_t>> windows;
    if (len == 0) return windows;
    if (len <= size) {
        windows.emplace(0, len);
        return windows;
    }
    std::vector<bool> covered(len, false);
    for (std::size_t s = 0; s < len; ++s) {
        if (s % stride == 0 && s + size <= len) {
            windows.emplace(s, s + size);
            for (std::size_t i = s; i < s + size; ++i) covered[i] = true;
        }
    }
    if (std::find(covered.begin(), covered.end(), false) != covered.end()) windows.emplace(len - size, len);
    return windows;
}

inline std::vector<std::vector<double>> to_dense_rows(const Embeddings& e) {
    DenseEmbeddings d = std::visit([](const auto& m) { return DenseEmbeddings(m); }, e);
    std::vector<std::vector<double>> out(static_cast<std::size_t>(d.rows()));
    for (Eigen::Index r = 0; r < d.rows(); ++r) out[r].assign(d.row(r).data(), d.row(r).data() + d.cols());
    return out;
}

/// Plain-loop cosine.
inline double loop_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) return 0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

/// Full scan: score every chunk, fully sort by (score desc, position asc),
/// and look for the gold passage among the first k.
inline std::vector<bool> brute_force_hits(const std::vector<std::vector<double>>& chunk_vecs,
                                          const std::vector<std::size_t>& chunk_passage,
                                          const std::vector<std::vector<double>>& query_vecs,
                                          const std::vector<std::size_t>& gold, std::size_t k) {
    std::vector<bool> hits;
    for (std::size_t q = 0; q < query_vecs.size(); ++q) {
        std::vector<std::pair<double, std::size_t>> scored;
        for (std::size_t c = 0; c < chunk_vecs.size(); ++c) {
            scored.emplace_back(loop_cosine(query_vecs[q], chunk_vecs[c]), c);
        }
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        bool hit = false;
        for (std::size_t i = 0; i < std::min(k, scored.size()); ++i) hit |= chunk_passage[scored[i].second] == gold[q];
        hits.push_back(hit);
    }
    return hits;
}

/// Passages of random syllabic words; each question is either a random
/// word salad or a verbatim run of words from its gold passage.
inline EvalDataset synthetic_dataset(std::size_t passages, std::size_t questions_per_passage, std::uint64_t seed,
                                     bool verbatim_questions) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> words_per_passage(20, 60);
    EvalDataset ds;
    std::vector<std::vector<std::string>> words(passages);
    for (std::size_t p = 0; p < passages; ++p) {
        std::string text;
        for (int w = words_per_passage(rng); w > 0; --w) {
            words[p].push_back(random_syllabic_word(rng));
            text += (text.empty() ? "" : " ") + words[p].back();
        }
        ds.passages.push_back({"p" + std::to_string(p), text});
    }
    std::size_t qid = 0;
    for (std::size_t p = 0; p < passages; ++p) {
        for (std::size_t i = 0; i < questions_per_passage; ++i) {
            std::string text;
            if (verbatim_questions) {
                std::uniform_int_distribution<std::size_t> start(0, words[p].size() - 3);
                const std::size_t s = start(rng);
                text = words[p][s] + " " + words[p][s + 1] + " " + words[p][s + 2];
            } else {
                for (int w = 0; w < 4; ++w) text += (w ? " " : "") + random_syllabic_word(rng);
            }
            ds.questions.push_back({"q" + std::to_string(qid++), text, "p" + std::to_string(p)});
        }
    }
    return ds;
}

/// Deterministic 16-dim vector for a token sequence.
inline std::vector<double> stub_vector(const std::vector<std::uint32_t>& ids, std::size_t dim = 16) {
    std::vector<double> v(dim, 0.0);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        v[(ids[i] * 7 + 3) % dim] += 1.0;
        v[(ids[i] * 13 + i) % dim] += 0.25;
    }
    v[0] += 0.125;
    return v;
}

/// Embedding service on 127.0.0.1 backed by cpp-httplib. `respond` maps a
/// parsed request body to a (status, body) pair.
class StubServer {
public:
    using Handler = std::function<std::pair<int, std::string>(const nlohmann::json&)>;

    explicit StubServer(Handler respond) : respond_(std::move(respond)) {
        server_.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
            ++requests_;
            auto [status, body] = respond_(nlohmann::json::parse(req.body));
            res.status = status;
            res.set_content(body, "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~StubServer() {
        server_.stop();
        thread_.join();
    }

    std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
    int requests() const { return requests_; }

    /// Replies with stub_vector for every sequence.
    static Handler deterministic(std::size_t dim = 16) {
        return [dim](const nlohmann::json& req) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& seq : req["ids"]) rows.push_back(stub_vector(seq.get<std::vector<std::uint32_t>>(), dim));
            return std::make_pair(200, nlohmann::json{{"embeddings", rows}}.dump());
        };
    }

private:
    Handler respond_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> requests_{0};
};

}  // namespace hece::testing

#endif  // HECE_TESTS_SUPPORT_HPP
