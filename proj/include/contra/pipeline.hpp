#ifndef CONTRA_PIPELINE_HPP_
#define CONTRA_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "contra/interval.hpp"
#include "contra/posterior.hpp"
#include "contra/study_data.hpp"

namespace contra {

// Smallest draw count accepted by the command line and the service.
inline constexpr std::size_t kMinSamples = 1000;
inline constexpr std::size_t kDefaultSamples = 100000;

// Which effects a contra plot shows. Null results (delta_L = 0) belong to
// both sign views.
enum class SignView { all, decrease, increase };

std::string_view to_string(SignView v);
SignView parse_sign_view(std::string_view text);

struct ContraEntry {
  StudyRecord record;
  CredibleInterval interval;
  double median = 0.0;
  double delta_l = 0.0;
  int rank = 0;
  std::size_t nonpositive_control = 0;
};

struct AnalysisOptions {
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  Execution exec = Execution::parallel;
};

struct AnalysisResult {
  std::string dataset;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  SignView view = SignView::all;
  // Sorted by rank.
  std::vector<ContraEntry> entries;
  std::vector<std::string> warnings;
};

// Scores one study at its own alpha_dm. The study's draws use
// study_seed(options.seed, record.id).
ContraEntry analyze_record(const StudyRecord& record, const AnalysisOptions& options);

// parse -> draw -> interval -> score -> rank for every record. Per-study
// seeding makes the result independent of evaluation order and threads.
AnalysisResult analyze(const Dataset& ds, const AnalysisOptions& options);

// Entries of one sign view, re-ranked 1..N within the view.
AnalysisResult select_view(const AnalysisResult& result, SignView view);

// Ids whose delta_L passes the threshold, in rank order.
std::vector<const ContraEntry*> passing_entries(const AnalysisResult& result,
                                                const ThresholdSpec& threshold);

struct JsonOptions {
  // Round numbers to 6 significant digits unless set.
  bool full_precision = false;
};

nlohmann::json entry_to_json(const ContraEntry& entry, const JsonOptions& opts = {});
// {dataset, seed, samples, entries: [...]} plus sign_view and warnings.
nlohmann::json result_to_json(const AnalysisResult& result, const JsonOptions& opts = {});

// Fresh seed for runs where the caller gave none; callers report it.
std::uint64_t random_seed();

// Rounds to `digits` significant decimal digits.
double round_significant(double v, int digits);

// Per-study CSV of analysis entries.
std::string result_to_csv(const AnalysisResult& result, const JsonOptions& opts = {});

}  // namespace contra

#endif  // CONTRA_PIPELINE_HPP_
