#ifndef CONTRA_STUDY_DATA_HPP_
#define CONTRA_STUDY_DATA_HPP_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "contra/posterior.hpp"

namespace contra {

// One row of a study table: a control arm (X) and an experiment arm (Y)
// plus descriptive metadata.
struct StudyRecord {
  int id = 0;
  std::string study;
  int year = 0;
  std::string group_x_label;
  GroupSummary control;
  std::string group_y_label;
  GroupSummary experiment;
  std::string units;
  double alpha_dm = 0.05;
  // The alpha cell as written, e.g. "0.05/3".
  std::string alpha_text;
  std::string species;
  std::string pmid;
  std::string location;
  int reported_sign = 0;

  friend bool operator==(const StudyRecord&, const StudyRecord&) = default;
};

struct Dataset {
  std::string name;
  std::string measured_phenomenon;
  std::vector<StudyRecord> records;
  // Provenance notes about corrections applied to the source table.
  std::vector<std::string> notes;

  const StudyRecord* find(int id) const;
};

// Column order of the CSV schema.
inline constexpr std::array<std::string_view, 17> kCsvColumns{
    "id",     "study", "year", "group_x", "x_mean",   "x_sd",    "x_n",
    "group_y", "y_mean", "y_sd", "y_n",   "units",    "alpha_dm", "species",
    "pmid",   "location", "reported_sign"};

struct RowError {
  // 1-based line of the CSV text (the header is line 1), or the 1-based index
  // of an inline record.
  std::size_t row = 0;
  std::string field;
  std::string message;
};

// Every problem found while reading a table, not just the first one.
class CsvParseError : public std::runtime_error {
 public:
  explicit CsvParseError(std::vector<RowError> errors);

  const std::vector<RowError>& errors() const { return errors_; }

 private:
  std::vector<RowError> errors_;
};

// Evaluates a decimal or "a/b" alpha cell; returns nullopt when malformed.
std::optional<double> evaluate_alpha(std::string_view text);

// Builds one record from named cells, appending any problems to `errors`.
std::optional<StudyRecord> parse_record_fields(const std::map<std::string, std::string>& cells,
                                               std::size_t row, std::vector<RowError>& errors);

// Parses a UTF-8 CSV table with a header row. Throws CsvParseError carrying
// all row-level errors.
Dataset parse_csv(std::string_view text, std::string name = {},
                  std::string measured_phenomenon = {});

std::string serialize_csv(const Dataset& ds);

struct DatasetWarning {
  enum class Kind { mixed_units, instability };
  Kind kind;
  std::optional<int> id;
  std::string message;
};

// Non-fatal observations about a parsed dataset.
std::vector<DatasetWarning> validate_dataset(const Dataset& ds);

// The two atherosclerosis tables shipped with the library: "tpc" (total plasma
// cholesterol, 35 studies) and "plaque" (plaque size, 28 studies).
Dataset bundled_dataset(std::string_view name);
std::vector<std::string> bundled_dataset_names();

// Text of a metadata column for display ("id", "study", "species", ...).
std::string metadata_value(const StudyRecord& record, std::string_view column);

// Shortest decimal text that reads back as the same double.
std::string format_real(double v);

}  // namespace contra

#endif  // CONTRA_STUDY_DATA_HPP_
