#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hece/codec.hpp"
#include "hece/dataset.hpp"
#include "hece/embedder.hpp"
#include "hece/pretokenizer.hpp"
#include "hece/remote_embedder.hpp"
#include "hece/retrieval.hpp"
#include "hece/segment.hpp"
#include "hece/stats.hpp"
#include "hece/vocab.hpp"
#include "json.hpp"

namespace hece::cli {

namespace {

constexpr const char* kVersion = "hece 0.1.0";

/// Thrown for flag combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown for unreadable inputs and malformed records.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Io {
    std::istream* in;
    std::ostream* out;
    std::unique_ptr<std::ifstream> in_file;
    std::unique_ptr<std::ofstream> out_file;

    Io(std::istream& default_in, std::ostream& default_out, const std::string& in_path, const std::string& out_path)
        : in(&default_in), out(&default_out) {
        if (!in_path.empty() && in_path != "-") {
            in_file = std::make_unique<std::ifstream>(in_path, std::ios::binary);
            if (!*in_file) throw DataError("cannot open input " + in_path);
            in = in_file.get();
        }
        if (!out_path.empty() && out_path != "-") {
            out_file = std::make_unique<std::ofstream>(out_path, std::ios::binary);
            if (!*out_file) throw DataError("cannot open output " + out_path);
            out = out_file.get();
        }
    }
};

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::vector<std::string> lines;
    for (std::string line; read_line(in, line);) lines.push_back(std::move(line));
    return lines;
}

EncodeMode parse_mode(const std::string& s) { return s == "lossless" ? EncodeMode::Lossless : EncodeMode::Flat; }

std::string ids_record(std::span<const TokenId> ids) {
    return nlohmann::json{{"ids", std::vector<TokenId>(ids.begin(), ids.end())}}.dump();
}

std::vector<TokenId> parse_ids_record(const std::string& line, std::size_t lineno) {
    auto j = nlohmann::json::parse(line, nullptr, false);
    const nlohmann::json* arr = nullptr;
    if (j.is_array()) arr = &j;
    else if (j.is_object() && j.contains("ids") && j["ids"].is_array()) arr = &j["ids"];
    if (arr == nullptr) throw DataError("line " + std::to_string(lineno) + ": expected {\"ids\": [...]}");
    std::vector<TokenId> ids;
    for (const auto& v : *arr) {
        if (!v.is_number_unsigned()) throw DataError("line " + std::to_string(lineno) + ": ids must be unsigned integers");
        ids.push_back(v.get<TokenId>());
    }
    return ids;
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(csv);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(item, &pos);
            if (pos != item.size() || v < 1) throw std::invalid_argument(item);
            sizes.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("--chunk-sizes: invalid size \"" + item + "\"");
        }
    }
    if (sizes.empty()) throw UsageError("--chunk-sizes: no sizes given");
    return sizes;
}

}  // namespace

int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Turkish syllable tokenizer and chunked retrieval evaluation", "hece"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool verbose = false;
    app.add_option("--threads", threads, "Worker threads for counting and embedding")->check(CLI::PositiveNumber);
    app.add_flag("-v,--verbose", verbose, "Progress messages on stderr");

    std::string input, output, vocab_path, mode = "flat";
    auto add_io = [&](CLI::App* sub) {
        sub->add_option("-i,--input", input, "Input file (default stdin)");
        sub->add_option("-o,--output", output, "Output file (default stdout)");
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", mode, "flat or lossless")->check(CLI::IsMember({"flat", "lossless"}));
    };

    auto* syllabify = app.add_subcommand("syllabify", "Print each input line as hyphenated syllables");
    add_io(syllabify);

    auto* build = app.add_subcommand("build-vocab", "Count tokens in a corpus and write a vocabulary file");
    build->add_option("-i,--input", input, "Corpus, one document per line")->required();
    build->add_option("-o,--output", output, "Vocabulary file to write")->required();

    bool for_model = false;
    std::size_t max_length = kDefaultMaxModelLength;
    auto* enc = app.add_subcommand("encode", "Text lines to {\"ids\": [...]} records");
    enc->add_option("--vocab", vocab_path, "Vocabulary file")->required();
    add_io(enc);
    add_mode(enc);
    enc->add_flag("--model", for_model, "Wrap as [CLS] ... [SEP] and truncate to --max-length");
    enc->add_option("--max-length", max_length, "Maximum length with --model")->check(CLI::Range(2, 1 << 30));

    auto* dec = app.add_subcommand("decode", "{\"ids\": [...]} records to text lines");
    dec->add_option("--vocab", vocab_path, "Vocabulary file")->required();
    add_io(dec);
    add_mode(dec);

    std::string corpus;
    auto* stats = app.add_subcommand("stats", "Token density of a corpus");
    stats->add_option("--corpus", corpus, "Corpus, one document per line")->required();
    stats->add_option("--vocab", vocab_path, "Vocabulary file (default: built from the corpus)");

    std::size_t size = 0;
    std::optional<std::size_t> stride;
    auto* chunk = app.add_subcommand("chunk", "Split each input line (a passage) into token windows");
    chunk->add_option("--vocab", vocab_path, "Vocabulary file")->required();
    chunk->add_option("--size", size, "Tokens per window")->required()->check(CLI::PositiveNumber);
    chunk->add_option("--stride", stride, "Window step (default size/2)")->check(CLI::PositiveNumber);
    add_io(chunk);

    std::string dataset_path, embedder_kind = "tfidf", endpoint, embed_path = "/embed";
    std::string chunk_sizes = "4,6,8,12,16,32,64,128,512";
    std::size_t k = 5, batch_size = 32, in_flight = 4;
    long long dim = 128;
    bool dedup = false, diagnostics = false;
    auto* eval = app.add_subcommand("eval", "Recall@k over a sweep of chunk sizes");
    eval->add_option("--dataset", dataset_path, "Dataset JSON")->required();
    eval->add_option("--vocab", vocab_path, "Vocabulary file")->required();
    eval->add_option("--embedder", embedder_kind, "tfidf or remote")->check(CLI::IsMember({"tfidf", "remote"}));
    eval->add_option("--endpoint", endpoint, "Embedding service base URL, e.g. http://127.0.0.1:8080");
    eval->add_option("--path", embed_path, "Embedding service request path");
    eval->add_option("--dim", dim, "Embedding dimension of the remote service")->check(CLI::PositiveNumber);
    eval->add_option("--batch-size", batch_size, "Sequences per remote request")->check(CLI::PositiveNumber);
    eval->add_option("--in-flight", in_flight, "Concurrent remote requests")->check(CLI::PositiveNumber);
    eval->add_option("--k", k, "Chunks retrieved per question")->check(CLI::PositiveNumber);
    eval->add_option("--chunk-sizes", chunk_sizes, "Comma-separated chunk sizes");
    eval->add_flag("--dedup-passages", dedup, "Count the top-k distinct passages instead of top-k chunks");
    eval->add_flag("--diagnostics", diagnostics, "Also print mean pairwise cosine of passage embeddings");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << "hece: " << e.what() << "\n";
        return kUsage;
    }

    auto log = [&](const std::string& msg) {
        if (verbose) err << "hece: " << msg << "\n";
    };

    try {
        if (*syllabify) {
            Io io(in, out, input, output);
            for (std::string line; read_line(*io.in, line);) *io.out << hece::hyphenate(line) << '\n';
        } else if (*build) {
            const auto docs = read_lines(input);
            log("counting " + std::to_string(docs.size()) + " documents");
            const Vocab v = build_vocab(docs, threads);
            save_vocab(v, output);
            log("wrote " + std::to_string(v.size()) + " ids to " + output);
        } else if (*enc) {
            const Vocab v = load_vocab(vocab_path);
            Io io(in, out, input, output);
            for (std::string line; read_line(*io.in, line);) {
                const Encoding e = for_model ? encode_for_model(line, v, max_length) : encode(line, v, parse_mode(mode));
                *io.out << ids_record(e.ids) << '\n';
            }
        } else if (*dec) {
            const Vocab v = load_vocab(vocab_path);
            Io io(in, out, input, output);
            std::size_t lineno = 0;
            for (std::string line; read_line(*io.in, line);) {
                ++lineno;
                *io.out << decode(parse_ids_record(line, lineno), v, parse_mode(mode)) << '\n';
            }
        } else if (*stats) {
            const auto docs = read_lines(corpus);
            const Vocab v = vocab_path.empty() ? build_vocab(docs, threads) : load_vocab(vocab_path);
            out << to_json(density(docs, v)) << '\n';
        } else if (*chunk) {
            const ChunkSpec spec{size, stride.value_or(default_retrieval_stride(size))};
            if (spec.stride > spec.size) throw UsageError("--stride must not exceed --size");
            const Vocab v = load_vocab(vocab_path);
            Io io(in, out, input, output);
            std::size_t passage = 0;
            for (std::string line; read_line(*io.in, line); ++passage) {
                for (const auto& c : chunk_tokens(encode(line, v, EncodeMode::Flat).ids, spec, passage)) {
                    *io.out << nlohmann::json{{"passage_id", c.passage}, {"start", c.start}, {"ids", c.ids}}.dump()
                            << '\n';
                }
            }
        } else if (*eval) {
            const auto sizes = parse_sizes(chunk_sizes);
            if (embedder_kind == "remote" && endpoint.empty()) throw UsageError("--embedder remote needs --endpoint");
            const EvalDataset ds = load_dataset(dataset_path);
            const Vocab v = load_vocab(vocab_path);

            RecallOptions opts;
            opts.k = k;
            opts.dedup_passages = dedup;
            opts.embedding.threads = threads;

            EmbedderFactory factory;
            if (embedder_kind == "remote") {
                RemoteEmbedderOptions ro;
                ro.endpoint = endpoint;
                ro.path = embed_path;
                ro.dim = static_cast<Eigen::Index>(dim);
                ro.batch_size = batch_size;
                ro.max_in_flight = in_flight;
                // The client batches and parallelizes requests itself.
                opts.embedding.batch_size = batch_size * in_flight;
                opts.embedding.threads = 1;
                factory = [ro](std::span<const Chunk>) -> std::unique_ptr<Embedder> {
                    return std::make_unique<RemoteEmbedder>(ro);
                };
            } else {
                factory = tfidf_factory(v);
            }

            out << "chunk_size\tstride\tnum_chunks\tk\trecall\thits\tquestions\n";
            for (std::size_t s : sizes) {
                log("evaluating chunk size " + std::to_string(s));
                const std::size_t one[] = {s};
                const EvalResult r = evaluate_chunk_sizes(ds, v, one, factory, opts).front();
                const auto hits = std::count(r.per_question_hits.begin(), r.per_question_hits.end(), true);
                char recall[32];
                std::snprintf(recall, sizeof recall, "%.6f", r.recall_at_k);
                out << r.chunk_size << '\t' << r.stride << '\t' << r.num_chunks << '\t' << r.k << '\t' << recall
                    << '\t' << hits << '\t' << r.per_question_hits.size() << '\n';
            }
            if (diagnostics) {
                std::vector<TokenSequence> passages;
                for (const auto& p : ds.passages) passages.push_back(encode(p.text, v, EncodeMode::Flat).ids);
                std::vector<Chunk> whole;
                for (std::size_t i = 0; i < passages.size(); ++i) whole.push_back({i, 0, passages[i]});
                const auto embedder = factory(whole);
                const double m = mean_pairwise_cosine(embed_all(passages, *embedder, opts.embedding));
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.6f", m);
                out << "# mean_pairwise_cosine\t" << buf << '\n';
            }
        }
        out.flush();
        return kOk;
    } catch (const UsageError& e) {
        err << "hece: " << e.what() << "\n";
        return kUsage;
    } catch (const EmbedderError& e) {
        err << "hece: embedder error: " << e.what() << "\n";
        return kEmbedder;
    } catch (const std::exception& e) {
        err << "hece: " << e.what() << "\n";
        return kData;
    }
}

}  // namespace hece::cli
