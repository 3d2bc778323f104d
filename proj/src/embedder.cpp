#include "hece/embedder.hpp"

#include <algorithm>
#include <cmath>

namespace hece {

Eigen::Index rows(const Embeddings& e) {
    return std::visit([](const auto& m) { return m.rows(); }, e);
}

Eigen::Index cols(const Embeddings& e) {
    return std::visit([](const auto& m) { return m.cols(); }, e);
}

void check_embeddings(const Embeddings& e, std::size_t expected_rows, Eigen::Index dim) {
    using Kind = EmbedderError::Kind;
    if (static_cast<std::size_t>(rows(e)) != expected_rows) {
        throw EmbedderError(Kind::CountMismatch, "embedder returned " + std::to_string(rows(e)) + " vectors for " +
                                                     std::to_string(expected_rows) + " inputs");
    }
    if (cols(e) != dim) {
        throw EmbedderError(Kind::DimMismatch, "embedder returned dimension " + std::to_string(cols(e)) +
                                                   ", expected " + std::to_string(dim));
    }
    const bool finite = std::visit(
        [](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, SparseEmbeddings>) {
                const double* v = m.valuePtr();
                return std::all_of(v, v + m.nonZeros(), [](double x) { return std::isfinite(x); });
            } else {
                return m.allFinite();
            }
        },
        e);
    if (!finite) throw EmbedderError(Kind::NonFinite, "embedder returned a non-finite component");
}

TfidfEmbedder::TfidfEmbedder(std::span<const TokenSequence> corpus, const Vocab& vocab)
    : TfidfEmbedder(corpus, vocab.size()) {}

TfidfEmbedder::TfidfEmbedder(std::span<const TokenSequence> corpus, std::size_t vocab_size)
    : documents_(corpus.size()) {
    if (corpus.empty()) throw std::invalid_argument("TfidfEmbedder: empty fitting corpus");
    Eigen::VectorXd df = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vocab_size));
    std::vector<TokenId> seen;
    for (const auto& doc : corpus) {
        seen.assign(doc.begin(), doc.end());
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (TokenId t : seen) {
            if (t >= vocab_size) throw std::out_of_range("TfidfEmbedder: token id " + std::to_string(t));
            df[t] += 1.0;
        }
    }
    const double n = static_cast<double>(documents_);
    idf_ = ((n + 1.0) / (df.array() + 1.0)).log() + 1.0;
}

Embeddings TfidfEmbedder::embed_batch(std::span<const TokenSequence> batch) const {
    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<TokenId> sorted;
    std::vector<std::pair<TokenId, double>> weights;
    for (std::size_t row = 0; row < batch.size(); ++row) {
        sorted.assign(batch[row].begin(), batch[row].end());
        std::sort(sorted.begin(), sorted.end());
        if (!sorted.empty() && sorted.back() >= static_cast<std::size_t>(dim())) {
            throw std::out_of_range("TfidfEmbedder: token id " + std::to_string(sorted.back()));
        }
        weights.clear();
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
            weights.emplace_back(sorted[i], static_cast<double>(j - i) * idf_[sorted[i]]);
            i = j;
        }
        double norm2 = 0.0;
        for (const auto& [t, w] : weights) norm2 += w * w;
        const double inv = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 0.0;
        for (const auto& [t, w] : weights) {
            triplets.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(t), w * inv);
        }
    }
    SparseEmbeddings out(static_cast<Eigen::Index>(batch.size()), dim());
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

}  // namespace hece
