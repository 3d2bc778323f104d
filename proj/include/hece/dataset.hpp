#ifndef HECE_DATASET_HPP
#define HECE_DATASET_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hece {

struct Passage {
    std::string id;
    std::string text;
};

struct Question {
    std::string id;
    std::string text;
    std::string passage_id;
};

/// Passages plus questions, each question linked to one gold passage.
struct EvalDataset {
    std::vector<Passage> passages;
    std::vector<Question> questions;

    /// Ids unique and every gold link resolves; throws DatasetError.
    void validate() const;

    /// Index of the passage with `id`; throws DatasetError if absent.
    std::size_t passage_index(std::string_view id) const;
};

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"passages": [{"id", "text"}...], "questions": [{"id", "text", "passage_id"}...]}.
/// Ids may be strings or integers.
EvalDataset dataset_from_json(std::string_view json);
EvalDataset load_dataset(const std::filesystem::path& path);
std::string dataset_to_json(const EvalDataset& ds);

}  // namespace hece

#endif  // HECE_DATASET_HPP
