#include "contra/service.hpp"

#include <chrono>

#include "httplib.h"
#include "json.hpp"

#include "contra/errors.hpp"
#include "contra/pipeline.hpp"

namespace contra {

namespace {

using nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json error_body(const std::string& message) { return {{"error", message}}; }

json row_errors_body(const std::vector<RowError>& errors) {
  json list = json::array();
  for (const auto& e : errors) {
    list.push_back({{"row", e.row}, {"field", e.field}, {"message", e.message}});
  }
  return {{"error", "invalid records"}, {"errors", std::move(list)}};
}

std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return {};
  return v.dump();
}

// Thrown for request parameters that are well-formed JSON but unusable.
struct BadParameter {
  std::string message;
};

struct BadRecords {
  std::vector<RowError> errors;
};

Dataset inline_dataset(const json& records) {
  if (!records.is_array() || records.empty()) {
    throw BadParameter{"'records' must be a non-empty array"};
  }
  std::vector<RowError> errors;
  Dataset ds;
  ds.name = "inline";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& obj = records[i];
    if (!obj.is_object()) {
      errors.push_back({i + 1, "", "record must be a JSON object"});
      continue;
    }
    std::map<std::string, std::string> cells;
    for (const auto& [key, value] : obj.items()) cells[key] = cell_text(value);
    if (auto record = parse_record_fields(cells, i + 1, errors)) {
      if (ds.find(record->id)) {
        errors.push_back({i + 1, "id", "duplicate id " + std::to_string(record->id)});
      } else {
        ds.records.push_back(std::move(*record));
      }
    }
  }
  if (!errors.empty()) throw BadRecords{std::move(errors)};
  return ds;
}

}  // namespace

ContraService::ContraService(std::vector<Dataset> registry, ServiceOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  for (auto& ds : registry) {
    order_.push_back(ds.name);
    registry_.emplace(ds.name, std::move(ds));
  }
  register_routes();
}

ContraService::~ContraService() { stop(); }

std::vector<Dataset> ContraService::default_registry() {
  std::vector<Dataset> out;
  for (const auto& name : bundled_dataset_names()) out.push_back(bundled_dataset(name));
  return out;
}

httplib::Server& ContraService::server() { return *server_; }

void ContraService::register_routes() {
  auto& srv = *server_;
  srv.set_default_headers({
      {"Access-Control-Allow-Origin", options_.cors_origin},
      {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });

  srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  srv.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"status", "ok"}, {"version", CONTRA_VERSION}});
  });

  srv.Get("/api/datasets", [this](const httplib::Request&, httplib::Response& res) {
    json list = json::array();
    for (const auto& name : order_) {
      const auto& ds = registry_.at(name);
      list.push_back({{"name", ds.name},
                      {"records", ds.records.size()},
                      {"measured_phenomenon", ds.measured_phenomenon}});
    }
    send_json(res, 200, list);
  });

  srv.Post("/api/analyze", [this](const httplib::Request& req, httplib::Response& res) {
    const auto started = std::chrono::steady_clock::now();
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::parse_error& e) {
      send_json(res, 400, error_body(std::string("request body is not JSON: ") + e.what()));
      return;
    }
    try {
      if (!body.is_object()) throw BadParameter{"request body must be a JSON object"};

      AnalysisOptions options;
      if (body.contains("samples")) {
        const auto& s = body["samples"];
        if (!s.is_number_integer() || s.get<long long>() < static_cast<long long>(kMinSamples)) {
          throw BadParameter{"samples must be an integer >= " + std::to_string(kMinSamples) +
                             " (K below minimum)"};
        }
        options.samples = s.get<std::size_t>();
      }
      if (body.contains("seed")) {
        const auto& s = body["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
          throw BadParameter{"seed must be a non-negative integer"};
        }
        options.seed = s.get<std::uint64_t>();
      } else {
        options.seed = random_seed();
      }
      SignView view = SignView::all;
      if (body.contains("sign_view")) {
        if (!body["sign_view"].is_string()) throw BadParameter{"sign_view must be a string"};
        try {
          view = parse_sign_view(body["sign_view"].get<std::string>());
        } catch (const ArgumentError& e) {
          throw BadParameter{e.what()};
        }
      }

      const bool has_name = body.contains("dataset");
      const bool has_records = body.contains("records");
      if (has_name == has_records) {
        throw BadParameter{"give exactly one of 'dataset' or 'records'"};
      }
      Dataset inline_ds;
      const Dataset* ds = nullptr;
      if (has_name) {
        if (!body["dataset"].is_string()) throw BadParameter{"dataset must be a string"};
        auto it = registry_.find(body["dataset"].get<std::string>());
        if (it == registry_.end()) {
          throw BadParameter{"unknown dataset '" + body["dataset"].get<std::string>() + "'"};
        }
        ds = &it->second;
      } else {
        inline_ds = inline_dataset(body["records"]);
        ds = &inline_ds;
      }

      auto result = analyze(*ds, options);
      if (view != SignView::all) result = select_view(result, view);
      json out = result_to_json(result);
      for (const auto& w : validate_dataset(*ds)) out["warnings"].push_back(w.message);
      const auto elapsed = std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - started);
      out["timing"] = {{"ms", elapsed.count()}};
      send_json(res, 200, out);
    } catch (const BadParameter& e) {
      send_json(res, 422, error_body(e.message));
    } catch (const BadRecords& e) {
      send_json(res, 400, row_errors_body(e.errors));
    } catch (const DegenerateDrawError& e) {
      send_json(res, 422, error_body(e.what()));
    } catch (const std::exception& e) {
      send_json(res, 500, error_body(e.what()));
    }
  });

  if (!options_.static_dir.empty()) srv.set_mount_point("/", options_.static_dir);
}

bool ContraService::listen() { return server_->listen(options_.host, options_.port); }

int ContraService::bind_any_port() { return server_->bind_to_any_port(options_.host); }

bool ContraService::listen_after_bind() { return server_->listen_after_bind(); }

void ContraService::stop() {
  if (server_) server_->stop();
}

bool ContraService::is_running() const { return server_->is_running(); }

}  // namespace contra
