#include "hece/dataset.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace hece {

using nlohmann::json;

namespace {

std::string id_field(const json& record, const char* key) {
    if (!record.is_object() || !record.contains(key)) {
        throw DatasetError(std::string("record is missing \"") + key + "\": " + record.dump());
    }
    const auto& v = record[key];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw DatasetError(std::string("\"") + key + "\" must be a string or integer: " + record.dump());
}

std::string text_field(const json& record) {
    if (!record.contains("text") || !record["text"].is_string()) {
        throw DatasetError("record needs a string \"text\": " + record.dump());
    }
    return record["text"].get<std::string>();
}

}  // namespace

void EvalDataset::validate() const {
    std::unordered_set<std::string_view> pids;
    for (const auto& p : passages) {
        if (!pids.insert(p.id).second) throw DatasetError("duplicate passage id " + p.id);
    }
    std::unordered_set<std::string_view> qids;
    for (const auto& q : questions) {
        if (!qids.insert(q.id).second) throw DatasetError("duplicate question id " + q.id);
        if (!pids.contains(q.passage_id)) {
            throw DatasetError("question " + q.id + " links to unknown passage " + q.passage_id);
        }
    }
}

std::size_t EvalDataset::passage_index(std::string_view id) const {
    for (std::size_t i = 0; i < passages.size(); ++i) {
        if (passages[i].id == id) return i;
    }
    throw DatasetError("unknown passage id " + std::string(id));
}

EvalDataset dataset_from_json(std::string_view text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw DatasetError("dataset is not a JSON object");
    if (!doc.contains("passages") || !doc["passages"].is_array()) throw DatasetError("dataset has no passages array");
    if (!doc.contains("questions") || !doc["questions"].is_array()) {
        throw DatasetError("dataset has no questions array");
    }
    EvalDataset ds;
    for (const auto& p : doc["passages"]) ds.passages.push_back({id_field(p, "id"), text_field(p)});
    for (const auto& q : doc["questions"]) {
        ds.questions.push_back({id_field(q, "id"), text_field(q), id_field(q, "passage_id")});
    }
    ds.validate();
    return ds;
}

EvalDataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError("cannot open dataset " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return dataset_from_json(buf.str());
}

std::string dataset_to_json(const EvalDataset& ds) {
    json passages = json::array();
    for (const auto& p : ds.passages) passages.push_back({{"id", p.id}, {"text", p.text}});
    json questions = json::array();
    for (const auto& q : ds.questions) {
        questions.push_back({{"id", q.id}, {"text", q.text}, {"passage_id", q.passage_id}});
    }
    return json{{"passages", passages}, {"questions", questions}}.dump(1);
}

}  // namespace hece
