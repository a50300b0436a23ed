// contra: command-line front end.
//
//   contra analyze  --dataset tpc --samples 100000 --seed 42 --format json
//   contra test     --dataset tpc --sign decrease --threshold -0.10
//   contra plot     --dataset plaque --sign decrease --threshold -0.20 -o fig.svg
//   contra validate --input studies.csv
//   contra serve    --port 8080
//
// Exit codes: 0 success, 1 I/O failure, 2 validation failure, 3 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"

#include "contra/errors.hpp"
#include "contra/pipeline.hpp"
#include "contra/render.hpp"
#include "contra/service.hpp"
#include "contra/study_data.hpp"

namespace {

enum ExitCode { kOk = 0, kIo = 1, kValidation = 2, kInternal = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string dataset;
  std::string input;
  std::size_t samples = contra::kDefaultSamples;
  std::optional<std::uint64_t> seed;
  std::string sign;
  std::optional<double> threshold;
  std::string format = "json";
  std::string output;
  bool full_precision = false;
  int threads = 0;
  std::vector<std::string> columns;
  std::string supplement;
  std::string title;
};

void add_source_options(CLI::App* cmd, RunConfig& cfg) {
  auto* ds = cmd->add_option("--dataset", cfg.dataset, "Bundled dataset (tpc, plaque)");
  auto* in = cmd->add_option("--input", cfg.input, "Study table CSV");
  ds->excludes(in);
  in->excludes(ds);
}

void add_run_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--samples", cfg.samples, "Monte Carlo draws per study")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Run seed; drawn and printed when omitted");
  cmd->add_option("--threads", cfg.threads, "Worker threads (0 = OpenMP default)");
}

contra::Dataset load_dataset(const RunConfig& cfg) {
  if (cfg.dataset.empty() == cfg.input.empty()) {
    throw contra::ArgumentError("give exactly one of --dataset or --input");
  }
  if (!cfg.dataset.empty()) return contra::bundled_dataset(cfg.dataset);
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw IoError("cannot read " + cfg.input);
  std::ostringstream text;
  text << in.rdbuf();
  return contra::parse_csv(text.str(), std::filesystem::path(cfg.input).stem().string());
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + cfg.output);
}

contra::AnalysisOptions analysis_options(const RunConfig& cfg) {
  if (cfg.samples < contra::kMinSamples) {
    throw contra::ArgumentError("K below minimum: --samples must be at least " +
                                std::to_string(contra::kMinSamples));
  }
  if (cfg.threads < 0) throw contra::ArgumentError("--threads must be >= 0");
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  contra::AnalysisOptions opts;
  opts.samples = cfg.samples;
  if (cfg.seed) {
    opts.seed = *cfg.seed;
  } else {
    opts.seed = contra::random_seed();
    std::cerr << "seed: " << opts.seed << '\n';
  }
  return opts;
}

contra::AnalysisResult run_analysis(const RunConfig& cfg, const contra::Dataset& ds) {
  auto result = contra::analyze(ds, analysis_options(cfg));
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  return result;
}

contra::PlotOptions plot_options(const RunConfig& cfg, const contra::Dataset& ds,
                                 contra::SignView view) {
  contra::PlotOptions opts;
  opts.sign_view = view;
  opts.threshold = cfg.threshold;
  if (!cfg.columns.empty()) opts.columns = cfg.columns;
  opts.title = cfg.title.empty() ? ds.measured_phenomenon : cfg.title;
  return opts;
}

int cmd_analyze(const RunConfig& cfg) {
  const auto ds = load_dataset(cfg);
  auto result = run_analysis(cfg, ds);
  const auto view = cfg.sign.empty() ? contra::SignView::all : contra::parse_sign_view(cfg.sign);
  if (view != contra::SignView::all) result = contra::select_view(result, view);
  const contra::JsonOptions json_opts{cfg.full_precision};
  if (cfg.format == "json") {
    write_output(cfg, contra::result_to_json(result, json_opts).dump(2) + "\n");
  } else if (cfg.format == "csv") {
    write_output(cfg, contra::result_to_csv(result, json_opts));
  } else if (cfg.format == "svg") {
    if (view == contra::SignView::all) {
      throw contra::ArgumentError("--format svg needs --sign decrease or --sign increase");
    }
    write_output(cfg, contra::render_contra_plot(result.entries, plot_options(cfg, ds, view)));
  } else {
    throw contra::ArgumentError("unknown format '" + cfg.format + "'");
  }
  return kOk;
}

int cmd_test(const RunConfig& cfg) {
  if (!cfg.threshold) throw contra::ArgumentError("--threshold is required");
  const auto direction = contra::parse_direction(cfg.sign);
  const contra::ThresholdSpec threshold{*cfg.threshold, direction};
  threshold.validate();
  const auto ds = load_dataset(cfg);
  auto result = run_analysis(cfg, ds);
  if (direction != contra::Direction::two_sided) {
    result = contra::select_view(result, direction == contra::Direction::decrease
                                             ? contra::SignView::decrease
                                             : contra::SignView::increase);
  }
  const auto passing = contra::passing_entries(result, threshold);
  std::ostringstream os;
  os << "# " << result.dataset << ' ' << contra::to_string(direction) << " threshold "
     << contra::format_real(threshold.value) << ": " << passing.size() << " of "
     << ds.records.size() << " studies meaningful\n";
  os << "# id\tdelta_l\trank\n";
  for (const auto* e : passing) {
    os << e->record.id << '\t' << contra::format_real(contra::round_significant(e->delta_l, 6))
       << '\t' << e->rank << '\n';
  }
  write_output(cfg, os.str());
  return kOk;
}

int cmd_plot(const RunConfig& cfg) {
  const auto view = contra::parse_sign_view(cfg.sign.empty() ? "decrease" : cfg.sign);
  if (view == contra::SignView::all) {
    throw contra::ArgumentError("plot needs --sign decrease or --sign increase");
  }
  const auto ds = load_dataset(cfg);
  const auto result = contra::select_view(run_analysis(cfg, ds), view);
  write_output(cfg, contra::render_contra_plot(result.entries, plot_options(cfg, ds, view)));
  if (!cfg.supplement.empty()) {
    const bool html = std::filesystem::path(cfg.supplement).extension() == ".html";
    std::ofstream out(cfg.supplement, std::ios::binary);
    out << (html ? contra::render_supplement_html(result.entries)
                 : contra::render_supplement_csv(result.entries));
    if (!out) throw IoError("cannot write " + cfg.supplement);
  }
  return kOk;
}

int cmd_validate(const RunConfig& cfg) {
  const auto ds = load_dataset(cfg);
  const auto warnings = contra::validate_dataset(ds);
  std::ostringstream os;
  os << ds.name << ": " << ds.records.size() << " records, 0 errors, " << warnings.size()
     << " warning(s)\n";
  for (const auto& w : warnings) os << "warning: " << w.message << '\n';
  for (const auto& n : ds.notes) os << "note: " << n << '\n';
  write_output(cfg, os.str());
  return kOk;
}

int cmd_serve(const contra::ServiceOptions& opts) {
  contra::ContraService service(contra::ContraService::default_registry(), opts);
  std::cerr << "listening on http://" << opts.host << ':' << opts.port << '\n';
  if (!service.listen()) throw IoError("cannot listen on " + opts.host + ":" + std::to_string(opts.port));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Credible intervals of the relative difference in means, contra plots and "
               "threshold tests"};
  app.require_subcommand(1);
  RunConfig cfg;
  contra::ServiceOptions serve_opts;

  auto* analyze = app.add_subcommand("analyze", "Score and rank every study");
  add_source_options(analyze, cfg);
  add_run_options(analyze, cfg);
  analyze->add_option("--sign", cfg.sign, "Restrict to a sign view (decrease, increase)");
  analyze->add_option("--format", cfg.format, "json, csv or svg")->capture_default_str();
  analyze->add_option("--threshold", cfg.threshold, "Threshold line for svg output");
  analyze->add_option("-o,--output", cfg.output, "Output path (default stdout)");
  analyze->add_flag("--full-precision", cfg.full_precision, "Emit full double precision");

  auto* test = app.add_subcommand("test", "List studies whose effect passes a threshold");
  add_source_options(test, cfg);
  add_run_options(test, cfg);
  test->add_option("--sign", cfg.sign, "decrease, increase or two-sided")->required();
  test->add_option("--threshold", cfg.threshold, "Meaningful-effect threshold")->required();
  test->add_option("-o,--output", cfg.output, "Output path (default stdout)");

  auto* plot = app.add_subcommand("plot", "Render a contra plot as SVG");
  add_source_options(plot, cfg);
  add_run_options(plot, cfg);
  plot->add_option("--sign", cfg.sign, "decrease or increase")->capture_default_str();
  plot->add_option("--threshold", cfg.threshold, "Draw a threshold line");
  plot->add_option("--columns", cfg.columns, "Metadata columns")->delimiter(',');
  plot->add_option("--title", cfg.title, "Plot title");
  plot->add_option("--supplement", cfg.supplement, "Also write the supplement table (.csv/.html)");
  plot->add_option("-o,--output", cfg.output, "Output path (default stdout)");

  auto* validate = app.add_subcommand("validate", "Check a study table");
  add_source_options(validate, cfg);
  validate->add_option("-o,--output", cfg.output, "Output path (default stdout)");

  auto* serve = app.add_subcommand("serve", "Run the HTTP JSON service");
  serve->add_option("--host", serve_opts.host)->capture_default_str();
  serve->add_option("--port", serve_opts.port)->capture_default_str();
  serve->add_option("--cors-origin", serve_opts.cors_origin)->capture_default_str();
  serve->add_option("--static-dir", serve_opts.static_dir, "UI assets to serve at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*analyze) return cmd_analyze(cfg);
    if (*test) return cmd_test(cfg);
    if (*plot) return cmd_plot(cfg);
    if (*validate) return cmd_validate(cfg);
    if (*serve) return cmd_serve(serve_opts);
  } catch (const contra::CsvParseError& e) {
    for (const auto& err : e.errors()) {
      std::cerr << "error: row " << err.row << (err.field.empty() ? "" : ", " + err.field) << ": "
                << err.message << '\n';
    }
    return kValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const contra::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const contra::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const contra::UnknownDatasetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const contra::DegenerateDrawError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
