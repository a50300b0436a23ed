#include "contra/study_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "contra/errors.hpp"

namespace contra {

namespace detail {
extern const std::string_view k_tpc_csv;
extern const std::string_view k_plaque_csv;
}  // namespace detail

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<int> parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

// RFC 4180 reader: quoted cells may hold commas, doubled quotes and newlines.
std::vector<CsvRow> split_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<CsvRow> rows;
  CsvRow row{1, {}};
  std::string cell;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1;
  auto end_row = [&] {
    row.cells.push_back(std::move(cell));
    cell.clear();
    const bool blank = row.cells.size() == 1 && trim(row.cells[0]).empty();
    if (!blank) rows.push_back(std::move(row));
    row = CsvRow{line + 1, {}};
    any = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        cell.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"': quoted = true; any = true; break;
      case ',': row.cells.push_back(std::move(cell)); cell.clear(); any = true; break;
      case '\r': break;
      case '\n': end_row(); ++line; break;
      default: cell.push_back(c); any = true; break;
    }
  }
  if (any || !cell.empty()) end_row();
  return rows;
}

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void write_cell(std::ostream& os, std::string_view s) {
  if (!needs_quotes(s)) {
    os << s;
    return;
  }
  os << '"';
  for (char c : s) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

CsvParseError::CsvParseError(std::vector<RowError> errors)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << errors.size() << " error(s) in study table";
        if (!errors.empty()) {
          os << "; first: row " << errors.front().row << ", " << errors.front().field << ": "
             << errors.front().message;
        }
        return os.str();
      }()),
      errors_(std::move(errors)) {}

const StudyRecord* Dataset::find(int id) const {
  auto it = std::find_if(records.begin(), records.end(),
                         [id](const StudyRecord& r) { return r.id == id; });
  return it == records.end() ? nullptr : &*it;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::optional<double> evaluate_alpha(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_real(text);
  const auto num = parse_real(text.substr(0, slash));
  const auto den = parse_real(text.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

std::optional<StudyRecord> parse_record_fields(const std::map<std::string, std::string>& cells,
                                               std::size_t row, std::vector<RowError>& errors) {
  const std::size_t before = errors.size();
  auto fail = [&](std::string_view field, std::string message) {
    errors.push_back({row, std::string(field), std::move(message)});
  };
  auto text = [&](std::string_view field) -> std::string {
    auto it = cells.find(std::string(field));
    if (it == cells.end()) {
      fail(field, "missing column");
      return {};
    }
    return std::string(trim(it->second));
  };
  auto integer = [&](std::string_view field) -> int {
    const auto raw = text(field);
    if (errors.size() > before && errors.back().field == field) return 0;
    if (auto v = parse_int(raw)) return *v;
    fail(field, "not an integer: '" + raw + "'");
    return 0;
  };
  auto real = [&](std::string_view field) -> double {
    const auto raw = text(field);
    if (errors.size() > before && errors.back().field == field) return 0.0;
    if (auto v = parse_real(raw)) return *v;
    fail(field, "not a number: '" + raw + "'");
    return 0.0;
  };

  StudyRecord r;
  r.id = integer("id");
  r.study = text("study");
  r.year = integer("year");
  r.group_x_label = text("group_x");
  r.group_y_label = text("group_y");
  r.units = text("units");
  r.species = text("species");
  r.pmid = text("pmid");
  r.location = text("location");

  auto arm = [&](char prefix, GroupSummary& g) {
    const std::string p(1, prefix);
    const std::size_t mark = errors.size();
    g.mean = real(p + "_mean");
    g.sd = real(p + "_sd");
    g.n = integer(p + "_n");
    auto already = [&](const std::string& field) {
      return std::any_of(errors.begin() + static_cast<std::ptrdiff_t>(mark), errors.end(),
                         [&](const RowError& e) { return e.field == field; });
    };
    if (!already(p + "_mean") && !(g.mean > 0.0)) fail(p + "_mean", "mean must be positive");
    if (!already(p + "_sd") && !(g.sd > 0.0)) fail(p + "_sd", "standard deviation must be positive");
    if (!already(p + "_n") && g.n < 2) fail(p + "_n", "sample size below 2");
  };
  arm('x', r.control);
  arm('y', r.experiment);

  r.alpha_text = text("alpha_dm");
  if (!(errors.size() > before && errors.back().field == "alpha_dm")) {
    const auto alpha = evaluate_alpha(r.alpha_text);
    if (!alpha) {
      fail("alpha_dm", "not a decimal or a/b fraction: '" + r.alpha_text + "'");
    } else if (!(*alpha > 0.0 && *alpha < 1.0)) {
      fail("alpha_dm", "alpha_dm must lie in (0, 1), got '" + r.alpha_text +
                           "'; enter the per-study level, e.g. 0.05 or a Bonferroni "
                           "fraction such as 0.05/3");
    } else {
      r.alpha_dm = *alpha;
    }
  }

  const std::size_t sign_mark = errors.size();
  r.reported_sign = integer("reported_sign");
  if (errors.size() == sign_mark && (r.reported_sign < -1 || r.reported_sign > 1)) {
    fail("reported_sign", "reported_sign must be -1, 0 or 1");
  }

  if (errors.size() > before) return std::nullopt;
  return r;
}

Dataset parse_csv(std::string_view text, std::string name, std::string measured_phenomenon) {
  std::vector<RowError> errors;
  const auto rows = split_csv(text);
  if (rows.empty()) throw CsvParseError({{1, "", "empty input; a header row is required"}});

  const auto& header = rows.front().cells;
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < header.size(); ++i) position[std::string(trim(header[i]))] = i;
  for (auto column : kCsvColumns) {
    if (!position.contains(std::string(column))) {
      errors.push_back({rows.front().line, std::string(column), "missing column"});
    }
  }
  if (!errors.empty()) throw CsvParseError(std::move(errors));

  Dataset ds;
  ds.name = std::move(name);
  ds.measured_phenomenon = std::move(measured_phenomenon);
  std::set<int> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != header.size()) {
      errors.push_back({row.line, "", "expected " + std::to_string(header.size()) +
                                          " cells, found " + std::to_string(row.cells.size())});
      continue;
    }
    std::map<std::string, std::string> cells;
    for (const auto& [column, index] : position) cells[column] = row.cells[index];
    auto record = parse_record_fields(cells, row.line, errors);
    if (!record) continue;
    if (!seen.insert(record->id).second) {
      errors.push_back({row.line, "id", "duplicate id " + std::to_string(record->id)});
      continue;
    }
    ds.records.push_back(std::move(*record));
  }
  if (errors.empty() && ds.records.empty()) {
    errors.push_back({1, "", "table has no records"});
  }
  if (!errors.empty()) throw CsvParseError(std::move(errors));
  return ds;
}

std::string serialize_csv(const Dataset& ds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) os << ',';
    os << kCsvColumns[i];
  }
  os << '\n';
  for (const auto& r : ds.records) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
      if (i) os << ',';
      write_cell(os, metadata_value(r, kCsvColumns[i]));
    }
    os << '\n';
  }
  return os.str();
}

std::string metadata_value(const StudyRecord& r, std::string_view column) {
  if (column == "id") return std::to_string(r.id);
  if (column == "study") return r.study;
  if (column == "year") return std::to_string(r.year);
  if (column == "group_x") return r.group_x_label;
  if (column == "x_mean") return format_real(r.control.mean);
  if (column == "x_sd") return format_real(r.control.sd);
  if (column == "x_n") return std::to_string(r.control.n);
  if (column == "group_y") return r.group_y_label;
  if (column == "y_mean") return format_real(r.experiment.mean);
  if (column == "y_sd") return format_real(r.experiment.sd);
  if (column == "y_n") return std::to_string(r.experiment.n);
  if (column == "units") return r.units;
  if (column == "alpha_dm") {
    const auto evaluated = evaluate_alpha(r.alpha_text);
    return evaluated && *evaluated == r.alpha_dm ? r.alpha_text : format_real(r.alpha_dm);
  }
  if (column == "species") return r.species;
  if (column == "pmid") return r.pmid;
  if (column == "location") return r.location;
  if (column == "reported_sign") return std::to_string(r.reported_sign);
  throw ArgumentError("unknown metadata column '" + std::string(column) + "'");
}

std::vector<DatasetWarning> validate_dataset(const Dataset& ds) {
  std::vector<DatasetWarning> out;
  std::set<std::string> units;
  for (const auto& r : ds.records) units.insert(lower(trim(r.units)));
  if (units.size() > 1) {
    std::string list;
    for (const auto& u : units) list += (list.empty() ? "" : ", ") + u;
    out.push_back({DatasetWarning::Kind::mixed_units, std::nullopt,
                   "records use different units (" + list +
                       "); the relative difference is unit-free, so this is informational"});
  }
  for (const auto& r : ds.records) {
    if (r.control.mean < 2.0 * r.control.sd) {
      out.push_back({DatasetWarning::Kind::instability, r.id,
                     "study " + std::to_string(r.id) +
                         ": control mean is within 2 SDs of zero; the relative "
                         "difference may be unstable"});
    }
  }
  return out;
}

std::vector<std::string> bundled_dataset_names() { return {"tpc", "plaque"}; }

Dataset bundled_dataset(std::string_view name) {
  if (name == "tpc") {
    return parse_csv(detail::k_tpc_csv, "tpc", "total plasma cholesterol");
  }
  if (name == "plaque") {
    auto ds = parse_csv(detail::k_plaque_csv, "plaque", "plaque size");
    ds.notes.push_back(
        "study 24: the source table lists alpha_dm = 0, which defines no interval; "
        "shipped as 0.05, the table's uncorrected level");
    return ds;
  }
  throw UnknownDatasetError(std::string(name));
}

}  // namespace contra
