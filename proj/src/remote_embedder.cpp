#include "hece/remote_embedder.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <regex>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace hece {

using nlohmann::json;

RemoteEmbedder::RemoteEmbedder(RemoteEmbedderOptions options) : options_(std::move(options)) {
    if (options_.endpoint.empty()) throw std::invalid_argument("RemoteEmbedder: endpoint is required");
    if (options_.dim < 1) throw std::invalid_argument("RemoteEmbedder: dim must be positive");
    if (options_.batch_size < 1) throw std::invalid_argument("RemoteEmbedder: batch_size must be positive");
    if (options_.max_in_flight < 1) throw std::invalid_argument("RemoteEmbedder: max_in_flight must be positive");
}

std::string embed_request_body(std::span<const TokenSequence> batch) {
    json ids = json::array();
    for (const auto& seq : batch) ids.push_back(seq);
    return json{{"ids", std::move(ids)}}.dump();
}

DenseEmbeddings parse_embed_response(const std::string& body, std::size_t expected_rows, Eigen::Index dim) {
    using Kind = EmbedderError::Kind;
    json doc = json::parse(body, nullptr, false);
    if (doc.is_discarded()) {
        // Python's json module writes NaN/Infinity as bare words; read them
        // as null so they are reported as non-finite instead of malformed.
        static const std::regex non_finite(R"((-?Infinity|NaN)(?=\s*[,\]]))");
        doc = json::parse(std::regex_replace(body, non_finite, "null"), nullptr, false);
    }
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("embeddings") || !doc["embeddings"].is_array()) {
        throw EmbedderError(Kind::Malformed, "response has no \"embeddings\" array");
    }
    const auto& rows = doc["embeddings"];
    if (rows.size() != expected_rows) {
        throw EmbedderError(Kind::CountMismatch, "response has " + std::to_string(rows.size()) +
                                                     " embeddings for " + std::to_string(expected_rows) + " inputs");
    }
    DenseEmbeddings out(static_cast<Eigen::Index>(expected_rows), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (!row.is_array()) throw EmbedderError(Kind::Malformed, "embedding " + std::to_string(r) + " is not an array");
        if (static_cast<Eigen::Index>(row.size()) != dim) {
            throw EmbedderError(Kind::DimMismatch, "embedding " + std::to_string(r) + " has dimension " +
                                                       std::to_string(row.size()) + ", expected " + std::to_string(dim));
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            // JSON cannot spell NaN; nlohmann maps it to null.
            if (row[c].is_null()) throw EmbedderError(Kind::NonFinite, "embedding component is null/NaN");
            if (!row[c].is_number()) throw EmbedderError(Kind::Malformed, "embedding component is not a number");
            const double x = row[c].get<double>();
            if (!std::isfinite(x)) throw EmbedderError(Kind::NonFinite, "embedding component is not finite");
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = x;
        }
    }
    return out;
}

DenseEmbeddings RemoteEmbedder::request(std::span<const TokenSequence> batch) const {
    using Kind = EmbedderError::Kind;
    httplib::Client client(options_.endpoint);
    if (!client.is_valid()) throw EmbedderError(Kind::Transport, "invalid embedder endpoint " + options_.endpoint);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_write_timeout(options_.timeout);

    auto res = client.Post(options_.path, embed_request_body(batch), "application/json");
    if (!res) {
        throw EmbedderError(Kind::Transport, "embedder request to " + options_.endpoint + options_.path +
                                                 " failed: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw EmbedderError(Kind::Transport, "embedder returned HTTP " + std::to_string(res->status));
    }
    return parse_embed_response(res->body, batch.size(), options_.dim);
}

Embeddings RemoteEmbedder::embed_batch(std::span<const TokenSequence> batch) const {
    DenseEmbeddings out(static_cast<Eigen::Index>(batch.size()), options_.dim);
    const std::size_t n_requests = (batch.size() + options_.batch_size - 1) / options_.batch_size;
    if (n_requests == 0) return out;

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t r; (r = next.fetch_add(1)) < n_requests;) {
            {
                std::lock_guard lock(failure_mutex);
                if (failure) return;
            }
            const std::size_t lo = r * options_.batch_size;
            const std::size_t n = std::min(options_.batch_size, batch.size() - lo);
            try {
                DenseEmbeddings part = request(batch.subspan(lo, n));
                out.middleRows(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(n)) = part;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    {
        const std::size_t n_workers = std::min(options_.max_in_flight, n_requests);
        std::vector<std::jthread> workers;
        for (std::size_t i = 1; i < n_workers; ++i) workers.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace hece
