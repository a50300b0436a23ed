#ifndef CONTRA_SERVICE_HPP_
#define CONTRA_SERVICE_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "contra/study_data.hpp"

namespace httplib {
class Server;
}

namespace contra {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  // Value of Access-Control-Allow-Origin.
  std::string cors_origin = "*";
  // Optional directory of static UI assets mounted at "/".
  std::string static_dir;
};

// HTTP front end over the analysis pipeline. Threshold tests are left to the
// client: intervals never need recomputing for a new threshold.
//
//   GET  /health        -> {"status":"ok","version":...}
//   GET  /api/datasets  -> [{"name":..., "records":N}, ...]
//   POST /api/analyze   -> analysis JSON (same entries as `contra analyze`)
class ContraService {
 public:
  explicit ContraService(std::vector<Dataset> registry, ServiceOptions options = {});
  ~ContraService();

  ContraService(const ContraService&) = delete;
  ContraService& operator=(const ContraService&) = delete;

  // The bundled tables.
  static std::vector<Dataset> default_registry();

  // Binds and serves until stop(). Returns false if the port cannot be bound.
  bool listen();
  // Binds to the configured host on a free port and returns it, or -1.
  int bind_any_port();
  // Serves on a socket bound by bind_any_port().
  bool listen_after_bind();
  void stop();
  bool is_running() const;

  httplib::Server& server();

 private:
  void register_routes();

  std::map<std::string, Dataset> registry_;
  std::vector<std::string> order_;
  ServiceOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace contra

#endif  // CONTRA_SERVICE_HPP_
