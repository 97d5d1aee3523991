#pragma once

// Local HTTP API over the catalogs and the geometry kernel. Requests are
// independent and the catalogs are read-only once the Workbench is built.

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "cgw/catalog.hpp"

namespace httplib {
class Server;
}

namespace cgw {

inline constexpr int kDefaultPort = 8437;

// Catalogs for every supported ground set size. When a fixture root is
// given, configurations under <root>/n<k>/ are attached to catalog k.
class Workbench {
 public:
  explicit Workbench(const std::optional<std::filesystem::path>& fixture_root = std::nullopt);

  // Throws InputError for n outside 1..5.
  const Catalog& catalog(int n) const;
  // Looks the id up in the catalog its prefix names. Throws InputError or
  // NotFoundError.
  const CatalogRecord& record(const std::string& id) const;

 private:
  std::array<Catalog, kMaxElements + 1> catalogs_;
};

struct ApiRequest {
  std::string method;  // "GET" or "POST"
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Routes:
//   GET  /api/geometries?n=N&<search filters>
//   GET  /api/geometries/{id}
//   POST /api/induce  {circles, hull_subsets?}
//   POST /api/verify  {geometry_id | family_mask, circles, by_propositions?}
//   POST /api/hull    {circles, subset}
//   POST /api/tikz    {circles, width?}
// Errors are {"error", "detail"} with 400 (malformed), 404 (unknown id or
// route) or 422 (precondition failed).
ApiResponse handle_request(const Workbench& bench, const ApiRequest& request);

class HttpServer {
 public:
  explicit HttpServer(const Workbench& bench);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws
  // std::runtime_error if the port cannot be bound.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void listen();
  void stop();

 private:
  const Workbench& bench_;
  std::unique_ptr<httplib::Server> server_;
};

// Binds 127.0.0.1:port and serves until the process ends.
void serve(const Workbench& bench, int port);

}  // namespace cgw
