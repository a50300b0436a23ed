#include "contra/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <unordered_map>

#include "contra/errors.hpp"

namespace contra {

std::string_view to_string(SignView v) {
  switch (v) {
    case SignView::all: return "all";
    case SignView::decrease: return "decrease";
    case SignView::increase: return "increase";
  }
  return "all";
}

SignView parse_sign_view(std::string_view text) {
  if (text == "all") return SignView::all;
  if (text == "decrease") return SignView::decrease;
  if (text == "increase") return SignView::increase;
  throw ArgumentError("unknown sign view '" + std::string(text) +
                      "' (expected decrease, increase or all)");
}

ContraEntry analyze_record(const StudyRecord& record, const AnalysisOptions& options) {
  const auto draws = draw_relative_dm(record.control, record.experiment, options.samples,
                                      study_seed(options.seed, record.id), options.exec);
  const auto summary = summarize_draws(draws, record.alpha_dm);
  ContraEntry entry;
  entry.record = record;
  entry.interval = summary.interval;
  entry.median = summary.median;
  entry.delta_l = score_delta_l(summary.interval);
  entry.nonpositive_control = draws.nonpositive_control;
  return entry;
}

namespace {

void assign_ranks(std::vector<ContraEntry>& entries) {
  std::vector<ScoredStudy> scores;
  scores.reserve(entries.size());
  for (const auto& e : entries) scores.push_back({e.record.id, e.delta_l, e.median});
  const auto ranked = rank_entries(std::move(scores));
  std::unordered_map<int, int> rank_of;
  for (std::size_t i = 0; i < ranked.size(); ++i) rank_of[ranked[i].id] = static_cast<int>(i) + 1;
  for (auto& e : entries) e.rank = rank_of.at(e.record.id);
  std::sort(entries.begin(), entries.end(),
            [](const ContraEntry& a, const ContraEntry& b) { return a.rank < b.rank; });
}

bool in_view(const ContraEntry& e, SignView view) {
  switch (view) {
    case SignView::all: return true;
    case SignView::decrease: return e.delta_l <= 0.0;
    case SignView::increase: return e.delta_l >= 0.0;
  }
  return true;
}

}  // namespace

AnalysisResult analyze(const Dataset& ds, const AnalysisOptions& options) {
  if (ds.records.empty()) throw ValidationError("dataset has no records");
  AnalysisResult result;
  result.dataset = ds.name;
  result.seed = options.seed;
  result.samples = options.samples;
  result.entries.reserve(ds.records.size());
  for (const auto& record : ds.records) {
    result.entries.push_back(analyze_record(record, options));
  }
  for (const auto& e : result.entries) {
    if (e.nonpositive_control > 0 &&
        static_cast<double>(e.nonpositive_control) >
            kNonpositiveControlWarnFraction * static_cast<double>(e.interval.k)) {
      char pct[32];
      std::snprintf(pct, sizeof(pct), "%.2f%%",
                    100.0 * static_cast<double>(e.nonpositive_control) /
                        static_cast<double>(e.interval.k));
      result.warnings.push_back("study " + std::to_string(e.record.id) + ": " + pct +
                                " of control-mean draws are <= 0; the relative difference "
                                "is unstable for this study");
    }
  }
  assign_ranks(result.entries);
  return result;
}

AnalysisResult select_view(const AnalysisResult& result, SignView view) {
  AnalysisResult out = result;
  out.view = view;
  std::erase_if(out.entries, [view](const ContraEntry& e) { return !in_view(e, view); });
  assign_ranks(out.entries);
  return out;
}

std::vector<const ContraEntry*> passing_entries(const AnalysisResult& result,
                                                const ThresholdSpec& threshold) {
  threshold.validate();
  std::vector<const ContraEntry*> out;
  for (const auto& e : result.entries) {
    if (test_meaningful(e.delta_l, threshold).reject_null) out.push_back(&e);
  }
  return out;
}

std::uint64_t random_seed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

double round_significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

nlohmann::json entry_to_json(const ContraEntry& e, const JsonOptions& opts) {
  auto num = [&](double v) { return opts.full_precision ? v : round_significant(v, 6); };
  nlohmann::json metadata = nlohmann::json::object();
  for (auto column : {"study", "year", "group_x", "group_y", "units", "species", "pmid",
                      "location", "reported_sign"}) {
    metadata[column] = metadata_value(e.record, column);
  }
  metadata["year"] = e.record.year;
  metadata["reported_sign"] = e.record.reported_sign;
  metadata["alpha_text"] = metadata_value(e.record, "alpha_dm");
  metadata["x_mean"] = e.record.control.mean;
  metadata["x_sd"] = e.record.control.sd;
  metadata["x_n"] = e.record.control.n;
  metadata["y_mean"] = e.record.experiment.mean;
  metadata["y_sd"] = e.record.experiment.sd;
  metadata["y_n"] = e.record.experiment.n;
  return {
      {"id", e.record.id},
      {"lo", num(e.interval.lo)},
      {"hi", num(e.interval.hi)},
      {"median", num(e.median)},
      {"delta_l", num(e.delta_l)},
      {"rank", e.rank},
      {"alpha_dm", e.record.alpha_dm},
      {"metadata", std::move(metadata)},
  };
}

nlohmann::json result_to_json(const AnalysisResult& result, const JsonOptions& opts) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : result.entries) entries.push_back(entry_to_json(e, opts));
  return {
      {"dataset", result.dataset},
      {"seed", result.seed},
      {"samples", result.samples},
      {"sign_view", std::string(to_string(result.view))},
      {"entries", std::move(entries)},
      {"warnings", result.warnings},
  };
}

std::string result_to_csv(const AnalysisResult& result, const JsonOptions& opts) {
  auto num = [&](double v) {
    return format_real(opts.full_precision ? v : round_significant(v, 6));
  };
  std::ostringstream os;
  os << "rank,id,study,lo,hi,median,delta_l,alpha_dm\n";
  for (const auto& e : result.entries) {
    os << e.rank << ',' << e.record.id << ',';
    const auto& study = e.record.study;
    if (study.find_first_of(",\"\n") != std::string::npos) {
      os << '"';
      for (char c : study) os << (c == '"' ? "\"\"" : std::string(1, c));
      os << '"';
    } else {
      os << study;
    }
    os << ',' << num(e.interval.lo) << ',' << num(e.interval.hi) << ',' << num(e.median) << ','
       << num(e.delta_l) << ',' << metadata_value(e.record, "alpha_dm") << '\n';
  }
  return os.str();
}

}  // namespace contra
