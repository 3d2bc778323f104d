#ifndef HECE_RETRIEVAL_HPP
#define HECE_RETRIEVAL_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "hece/chunker.hpp"
#include "hece/dataset.hpp"
#include "hece/embedder.hpp"
#include "hece/vocab.hpp"

namespace hece {

/// u.v / (|u| |v|), and 0 when either vector is zero.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
    using Scalar = typename DerivedA::Scalar;
    if (u.size() != v.size()) {
        throw std::invalid_argument("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                                    std::to_string(v.size()) + ")");
    }
    const Scalar nu = u.norm();
    const Scalar nv = v.norm();
    if (nu == Scalar(0) || nv == Scalar(0)) return Scalar(0);
    return u.reshaped().dot(v.reshaped()) / (nu * nv);
}

/// Copy of `m` with every nonzero row scaled to unit length.
template <typename Derived>
DenseRows<typename Derived::Scalar> normalized_rows(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    DenseRows<Scalar> out = m;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const Scalar n = out.row(i).norm();
        if (n > Scalar(0)) out.row(i) /= n;
    }
    return out;
}

template <typename Scalar>
SparseRows<Scalar> normalized_rows(const SparseRows<Scalar>& m) {
    SparseRows<Scalar> out = m;
    for (Eigen::Index i = 0; i < out.outerSize(); ++i) {
        Scalar n2(0);
        for (typename SparseRows<Scalar>::InnerIterator it(out, i); it; ++it) n2 += it.value() * it.value();
        if (n2 > Scalar(0)) {
            const Scalar inv = Scalar(1) / std::sqrt(n2);
            for (typename SparseRows<Scalar>::InnerIterator it(out, i); it; ++it) it.valueRef() *= inv;
        }
    }
    return out;
}

namespace detail {

// Sum over pairs i<j of u_i.u_j for unit rows u equals
// (|sum u_i|^2 - sum |u_i|^2) / 2, which avoids the n x n Gram matrix.
template <typename Scalar, typename Matrix>
Scalar mean_pairwise_from_unit_rows(const Matrix& unit) {
    const Eigen::Index n = unit.rows();
    if (n < 2) throw std::invalid_argument("mean_pairwise_cosine: need at least two vectors");
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> total = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>::Zero(unit.cols());
    Scalar self(0);
    for (Eigen::Index i = 0; i < n; ++i) {
        total += unit.row(i);
        self += unit.row(i).squaredNorm();
    }
    const Scalar pairs = Scalar(n) * Scalar(n - 1) / Scalar(2);
    return (total.squaredNorm() - self) / Scalar(2) / pairs;
}

}  // namespace detail

/// Mean cosine over all unordered pairs of rows. Near 1 means the
/// embeddings have collapsed onto one direction.
template <typename Derived>
typename Derived::Scalar mean_pairwise_cosine(const Eigen::MatrixBase<Derived>& vectors) {
    using Scalar = typename Derived::Scalar;
    return detail::mean_pairwise_from_unit_rows<Scalar>(normalized_rows(vectors));
}

template <typename Scalar>
Scalar mean_pairwise_cosine(const SparseRows<Scalar>& vectors) {
    return detail::mean_pairwise_from_unit_rows<Scalar>(DenseRows<Scalar>(normalized_rows(vectors)));
}

double mean_pairwise_cosine(const Embeddings& vectors);

/// Chunks with one embedding each, rows L2-normalized. Immutable.
class ChunkIndex {
public:
    ChunkIndex(std::vector<Chunk> chunks, Embeddings vectors, ChunkSpec spec);

    std::span<const Chunk> chunks() const noexcept { return chunks_; }
    const Embeddings& vectors() const noexcept { return vectors_; }
    const ChunkSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return chunks_.size(); }

    /// For each query row, positions of the k highest-cosine chunks, best
    /// first; equal scores go to the lower chunk position.
    std::vector<std::vector<std::size_t>> search(const Embeddings& queries, std::size_t k) const;

    /// Cosine of every chunk against one query row.
    Eigen::VectorXd scores(const Embeddings& queries, Eigen::Index row) const;

private:
    std::vector<Chunk> chunks_;
    Embeddings vectors_;
    ChunkSpec spec_;
};

struct IndexOptions {
    std::size_t batch_size = 256;
    unsigned threads = 1;
};

/// Flat-encodes and chunks every passage; Chunk::passage is the passage's
/// position in `ds.passages`.
std::vector<Chunk> chunk_passages(const EvalDataset& ds, const Vocab& vocab, const ChunkSpec& spec);

/// Flat encodings of the questions, in order.
std::vector<TokenSequence> encode_questions(const EvalDataset& ds, const Vocab& vocab);

/// Embeds `sequences` in batches (possibly on several threads) and checks
/// the embedder's output contract.
Embeddings embed_all(std::span<const TokenSequence> sequences, const Embedder& embedder,
                     const IndexOptions& options = {});

ChunkIndex build_index(std::vector<Chunk> chunks, const ChunkSpec& spec, const Embedder& embedder,
                       const IndexOptions& options = {});
ChunkIndex build_index(const EvalDataset& ds, const Vocab& vocab, const ChunkSpec& spec, const Embedder& embedder,
                       const IndexOptions& options = {});

struct EvalResult {
    double recall_at_k = 0.0;
    std::size_t k = 0;
    std::size_t chunk_size = 0;
    std::size_t stride = 0;
    std::size_t num_chunks = 0;
    std::vector<bool> per_question_hits;

    friend bool operator==(const EvalResult&, const EvalResult&) = default;
};

struct RecallOptions {
    std::size_t k = 5;
    /// Rank passages by their best chunk instead of ranking raw chunks.
    bool dedup_passages = false;
    IndexOptions embedding;
};

/// A question is a hit when one of its top-k chunks comes from its gold
/// passage. Throws std::invalid_argument for k == 0 or an empty index.
EvalResult recall_at_k(const EvalDataset& ds, const Vocab& vocab, const ChunkIndex& index, const Embedder& embedder,
                       const RecallOptions& options = {});

/// Builds an embedder for a given chunk set (TF-IDF fits on the chunks; a
/// remote encoder ignores them).
using EmbedderFactory = std::function<std::unique_ptr<Embedder>(std::span<const Chunk>)>;

/// One EvalResult per chunk size, stride = default_retrieval_stride(size).
std::vector<EvalResult> evaluate_chunk_sizes(const EvalDataset& ds, const Vocab& vocab,
                                             std::span<const std::size_t> sizes, const EmbedderFactory& make_embedder,
                                             const RecallOptions& options = {});

EmbedderFactory tfidf_factory(const Vocab& vocab);

}  // namespace hece

#endif  // HECE_RETRIEVAL_HPP
