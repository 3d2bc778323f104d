#ifndef HECE_EMBEDDER_HPP
#define HECE_EMBEDDER_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hece/vocab.hpp"

namespace hece {

using TokenSequence = std::vector<TokenId>;

/// One embedding per row.
template <typename Scalar>
using DenseRows = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using SparseRows = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

using DenseEmbeddings = DenseRows<double>;
using SparseEmbeddings = SparseRows<double>;

/// Trained encoders return dense rows; bag-of-tokens embedders return
/// vocabulary-sized sparse rows.
using Embeddings = std::variant<DenseEmbeddings, SparseEmbeddings>;

Eigen::Index rows(const Embeddings& e);
Eigen::Index cols(const Embeddings& e);

class EmbedderError : public std::runtime_error {
public:
    enum class Kind { Transport, Malformed, DimMismatch, NonFinite, CountMismatch };

    EmbedderError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Maps token-id sequences to fixed-dimension vectors. Row i of the
/// result embeds batch[i]. Implementations must be safe to call from
/// several threads at once.
class Embedder {
public:
    virtual ~Embedder() = default;

    virtual Eigen::Index dim() const = 0;
    virtual Embeddings embed_batch(std::span<const TokenSequence> batch) const = 0;
};

/// Throws EmbedderError unless `e` has `expected_rows` rows of width `dim`
/// with finite entries.
void check_embeddings(const Embeddings& e, std::size_t expected_rows, Eigen::Index dim);

/// Deterministic bag-of-tokens reference embedder. With N documents in the
/// fitting corpus and df(t) documents containing t:
///
///   idf(t) = ln((N + 1) / (df(t) + 1)) + 1
///   w(t)   = tf(t) * idf(t), then L2-normalized.
///
/// Tokens never seen while fitting keep df = 0. An empty sequence embeds
/// as the zero vector.
class TfidfEmbedder final : public Embedder {
public:
    TfidfEmbedder(std::span<const TokenSequence> corpus, const Vocab& vocab);
    TfidfEmbedder(std::span<const TokenSequence> corpus, std::size_t vocab_size);

    Eigen::Index dim() const override { return idf_.size(); }
    Embeddings embed_batch(std::span<const TokenSequence> batch) const override;

    const Eigen::VectorXd& idf() const noexcept { return idf_; }
    std::size_t documents() const noexcept { return documents_; }

private:
    Eigen::VectorXd idf_;
    std::size_t documents_ = 0;
};

}  // namespace hece

#endif  // HECE_EMBEDDER_HPP
