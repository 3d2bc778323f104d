#ifndef HECE_REMOTE_EMBEDDER_HPP
#define HECE_REMOTE_EMBEDDER_HPP

#include <chrono>
#include <string>

#include "hece/embedder.hpp"

namespace hece {

struct RemoteEmbedderOptions {
    std::string endpoint;          // scheme://host:port, e.g. http://127.0.0.1:8080
    std::string path = "/embed";
    Eigen::Index dim = 128;
    std::size_t batch_size = 32;
    std::size_t max_in_flight = 4;
    std::chrono::milliseconds timeout{30000};
};

/// Client for an external encoder service.
///
/// Request:  POST <path>  {"ids": [[int, ...], ...]}
/// Response: 2xx          {"embeddings": [[number, ...], ...]}
///
/// Sequences are sent in batches of `batch_size`, at most `max_in_flight`
/// requests at a time; rows come back in request order. Transport
/// failures, non-2xx replies, schema violations, wrong widths and
/// non-finite numbers all raise EmbedderError.
class RemoteEmbedder final : public Embedder {
public:
    explicit RemoteEmbedder(RemoteEmbedderOptions options);

    Eigen::Index dim() const override { return options_.dim; }
    Embeddings embed_batch(std::span<const TokenSequence> batch) const override;

    const RemoteEmbedderOptions& options() const noexcept { return options_; }

private:
    DenseEmbeddings request(std::span<const TokenSequence> batch) const;

    RemoteEmbedderOptions options_;
};

/// Request body for `batch` in the wire format above.
std::string embed_request_body(std::span<const TokenSequence> batch);

/// Parses a response body; checks row count, width and finiteness.
DenseEmbeddings parse_embed_response(const std::string& body, std::size_t expected_rows, Eigen::Index dim);

}  // namespace hece

#endif  // HECE_REMOTE_EMBEDDER_HPP
