#include "hece/retrieval.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "hece/codec.hpp"

namespace hece {

namespace {

constexpr Eigen::Index kQueryBlock = 64;

Embeddings normalize(const Embeddings& e) {
    return std::visit([](const auto& m) -> Embeddings { return normalized_rows(m); }, e);
}

// Cosine scores of query rows [lo, lo + n) against every index row, as an
// n x chunks matrix. Both sides are already unit-normalized.
DenseRows<double> score_block(const Embeddings& index, const Embeddings& queries, Eigen::Index lo, Eigen::Index n) {
    return std::visit(
        [&](const auto& idx, const auto& q) -> DenseRows<double> {
            using I = std::decay_t<decltype(idx)>;
            using Q = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<I, SparseEmbeddings> && std::is_same_v<Q, SparseEmbeddings>) {
                SparseEmbeddings block = q.middleRows(lo, n);
                SparseEmbeddings s = block * idx.transpose();
                return DenseRows<double>(s);
            } else if constexpr (std::is_same_v<I, SparseEmbeddings>) {
                return (idx * q.middleRows(lo, n).transpose()).transpose();
            } else {
                return q.middleRows(lo, n) * idx.transpose();
            }
        },
        index, queries);
}

// Positions ordered by descending score, ties by ascending position; only
// the first `k` are guaranteed sorted.
std::vector<std::size_t> rank(const Eigen::Ref<const Eigen::RowVectorXd>& scores, std::size_t k) {
    std::vector<std::size_t> order(static_cast<std::size_t>(scores.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    k = std::min(k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          const double sa = scores[static_cast<Eigen::Index>(a)];
                          const double sb = scores[static_cast<Eigen::Index>(b)];
                          return sa != sb ? sa > sb : a < b;
                      });
    return order;
}

template <typename Fn>
void run_parallel(std::size_t jobs, unsigned threads, Fn&& fn) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mutex;
    auto worker = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs;) {
            try {
                fn(j);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
                next = jobs;
                return;
            }
        }
    };
    const std::size_t n = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(jobs, 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);
}

Embeddings stack(std::vector<Embeddings>& parts, Eigen::Index dim) {
    Eigen::Index total = 0;
    for (const auto& p : parts) total += rows(p);
    if (parts.empty() || std::holds_alternative<DenseEmbeddings>(parts.front())) {
        DenseEmbeddings out(total, dim);
        Eigen::Index at = 0;
        for (const auto& p : parts) {
            const auto& m = std::get<DenseEmbeddings>(p);
            out.middleRows(at, m.rows()) = m;
            at += m.rows();
        }
        return out;
    }
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::Index at = 0;
    for (const auto& p : parts) {
        const auto& m = std::get<SparseEmbeddings>(p);
        for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
            for (SparseEmbeddings::InnerIterator it(m, r); it; ++it) triplets.emplace_back(at + r, it.col(), it.value());
        }
        at += m.rows();
    }
    SparseEmbeddings out(total, dim);
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

}  // namespace

double mean_pairwise_cosine(const Embeddings& vectors) {
    return std::visit([](const auto& m) { return mean_pairwise_cosine(m); }, vectors);
}

ChunkIndex::ChunkIndex(std::vector<Chunk> chunks, Embeddings vectors, ChunkSpec spec)
    : chunks_(std::move(chunks)), vectors_(normalize(vectors)), spec_(spec) {
    if (static_cast<std::size_t>(rows(vectors_)) != chunks_.size()) {
        throw std::invalid_argument("ChunkIndex: " + std::to_string(rows(vectors_)) + " vectors for " +
                                    std::to_string(chunks_.size()) + " chunks");
    }
}

Eigen::VectorXd ChunkIndex::scores(const Embeddings& queries, Eigen::Index row) const {
    return score_block(vectors_, normalize(queries), row, 1).row(0).transpose();
}

std::vector<std::vector<std::size_t>> ChunkIndex::search(const Embeddings& queries, std::size_t k) const {
    if (k == 0) throw std::invalid_argument("search: k must be at least 1");
    if (chunks_.empty()) throw std::invalid_argument("search: empty index");
    if (cols(queries) != cols(vectors_)) throw std::invalid_argument("search: query dimension mismatch");
    const Embeddings unit = normalize(queries);
    const Eigen::Index n = rows(unit);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index lo = 0; lo < n; lo += kQueryBlock) {
        const Eigen::Index len = std::min(kQueryBlock, n - lo);
        const DenseRows<double> block = score_block(vectors_, unit, lo, len);
        for (Eigen::Index r = 0; r < len; ++r) {
            auto order = rank(block.row(r), k);
            order.resize(std::min(k, order.size()));
            out.push_back(std::move(order));
        }
    }
    return out;
}

std::vector<Chunk> chunk_passages(const EvalDataset& ds, const Vocab& vocab, const ChunkSpec& spec) {
    spec.validate();
    std::vector<Chunk> chunks;
    for (std::size_t p = 0; p < ds.passages.size(); ++p) {
        const Encoding enc = encode(ds.passages[p].text, vocab, EncodeMode::Flat);
        auto part = chunk_tokens(enc.ids, spec, p);
        std::move(part.begin(), part.end(), std::back_inserter(chunks));
    }
    return chunks;
}

std::vector<TokenSequence> encode_questions(const EvalDataset& ds, const Vocab& vocab) {
    std::vector<TokenSequence> out;
    out.reserve(ds.questions.size());
    for (const auto& q : ds.questions) out.push_back(encode(q.text, vocab, EncodeMode::Flat).ids);
    return out;
}

Embeddings embed_all(std::span<const TokenSequence> sequences, const Embedder& embedder, const IndexOptions& options) {
    const std::size_t batch = std::max<std::size_t>(options.batch_size, 1);
    const std::size_t jobs = (sequences.size() + batch - 1) / batch;
    std::vector<Embeddings> parts(jobs);
    run_parallel(jobs, options.threads, [&](std::size_t j) {
        const std::size_t lo = j * batch;
        const auto slice = sequences.subspan(lo, std::min(batch, sequences.size() - lo));
        Embeddings e = embedder.embed_batch(slice);
        check_embeddings(e, slice.size(), embedder.dim());
        parts[j] = std::move(e);
    });
    return stack(parts, embedder.dim());
}

ChunkIndex build_index(std::vector<Chunk> chunks, const ChunkSpec& spec, const Embedder& embedder,
                       const IndexOptions& options) {
    std::vector<TokenSequence> seqs;
    seqs.reserve(chunks.size());
    for (const auto& c : chunks) seqs.push_back(c.ids);
    Embeddings vectors = embed_all(seqs, embedder, options);
    return ChunkIndex(std::move(chunks), std::move(vectors), spec);
}

ChunkIndex build_index(const EvalDataset& ds, const Vocab& vocab, const ChunkSpec& spec, const Embedder& embedder,
                       const IndexOptions& options) {
    return build_index(chunk_passages(ds, vocab, spec), spec, embedder, options);
}

EvalResult recall_at_k(const EvalDataset& ds, const Vocab& vocab, const ChunkIndex& index, const Embedder& embedder,
                       const RecallOptions& options) {
    if (options.k == 0) throw std::invalid_argument("recall_at_k: k must be at least 1");
    if (index.size() == 0) throw std::invalid_argument("recall_at_k: empty index");

    EvalResult result;
    result.k = options.k;
    result.chunk_size = index.spec().size;
    result.stride = index.spec().stride;
    result.num_chunks = index.size();
    if (ds.questions.empty()) return result;

    std::vector<std::size_t> gold;
    gold.reserve(ds.questions.size());
    for (const auto& q : ds.questions) gold.push_back(ds.passage_index(q.passage_id));

    const auto queries = encode_questions(ds, vocab);
    const Embeddings qvec = embed_all(queries, embedder, options.embedding);
    const auto chunks = index.chunks();

    std::size_t hits = 0;
    result.per_question_hits.assign(queries.size(), false);
    if (!options.dedup_passages) {
        const auto top = index.search(qvec, options.k);
        for (std::size_t q = 0; q < top.size(); ++q) {
            result.per_question_hits[q] = std::any_of(top[q].begin(), top[q].end(),
                                                      [&](std::size_t c) { return chunks[c].passage == gold[q]; });
        }
    } else {
        // Walk the full ranking and keep the first k distinct passages.
        const auto all = index.search(qvec, index.size());
        std::vector<bool> taken(ds.passages.size());
        for (std::size_t q = 0; q < all.size(); ++q) {
            std::fill(taken.begin(), taken.end(), false);
            std::size_t picked = 0;
            for (std::size_t c : all[q]) {
                const std::size_t p = chunks[c].passage;
                if (taken[p]) continue;
                taken[p] = true;
                if (p == gold[q]) {
                    result.per_question_hits[q] = true;
                    break;
                }
                if (++picked == options.k) break;
            }
        }
    }
    hits = static_cast<std::size_t>(
        std::count(result.per_question_hits.begin(), result.per_question_hits.end(), true));
    result.recall_at_k = static_cast<double>(hits) / static_cast<double>(queries.size());
    return result;
}

std::vector<EvalResult> evaluate_chunk_sizes(const EvalDataset& ds, const Vocab& vocab,
                                             std::span<const std::size_t> sizes, const EmbedderFactory& make_embedder,
                                             const RecallOptions& options) {
    std::vector<EvalResult> out;
    for (std::size_t size : sizes) {
        const ChunkSpec spec{size, default_retrieval_stride(size)};
        auto chunks = chunk_passages(ds, vocab, spec);
        const auto embedder = make_embedder(chunks);
        const ChunkIndex index = build_index(std::move(chunks), spec, *embedder, options.embedding);
        out.push_back(recall_at_k(ds, vocab, index, *embedder, options));
    }
    return out;
}

EmbedderFactory tfidf_factory(const Vocab& vocab) {
    return [&vocab](std::span<const Chunk> chunks) -> std::unique_ptr<Embedder> {
        std::vector<TokenSequence> docs;
        docs.reserve(chunks.size());
        for (const auto& c : chunks) docs.push_back(c.ids);
        return std::make_unique<TfidfEmbedder>(docs, vocab);
    };
}

}  // namespace hece
