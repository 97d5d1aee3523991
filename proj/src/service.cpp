#include "cgw/service.hpp"

#include <httplib.h>

#include <sstream>

#include "cgw/errors.hpp"
#include "cgw/tikz.hpp"

namespace cgw {

using nlohmann::json;

Workbench::Workbench(const std::optional<std::filesystem::path>& fixture_root) {
  for (int n = 1; n <= kMaxElements; ++n) {
    catalogs_[n] = build_catalog(n);
    if (fixture_root) {
      const auto dir = *fixture_root / ("n" + std::to_string(n));
      if (std::filesystem::is_directory(dir)) attach_fixture_dir(catalogs_[n], dir);
    }
  }
}

const Catalog& Workbench::catalog(int n) const {
  static_cast<void>(GroundSet(n));
  return catalogs_[n];
}

const CatalogRecord& Workbench::record(const std::string& id) const {
  return find_record(catalog(parse_record_id(id)), id);
}

namespace {

ApiResponse json_response(int status, const json& body) {
  return {status, "application/json", body.dump()};
}

ApiResponse error_response(int status, const std::string& error, const std::string& detail) {
  return json_response(status, {{"error", error}, {"detail", detail}});
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw InputError(std::string("request body is not valid JSON: ") + e.what());
  }
}

Configuration body_configuration(const json& body) {
  if (!body.is_object() || !body.contains("circles")) {
    throw InputError("request needs a 'circles' array");
  }
  return configuration_from_json(body);
}

ApiResponse list_geometries(const Workbench& bench, std::map<std::string, std::string> params) {
  int n = kMaxElements;
  if (auto it = params.find("n"); it != params.end()) {
    try {
      std::size_t used = 0;
      n = std::stoi(it->second, &used);
      if (used != it->second.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("bad value for 'n': " + it->second);
    }
    params.erase(it);
  }
  const Catalog& catalog = bench.catalog(n);
  json out = json::array();
  for (const std::string& id : search(catalog, parse_query(params))) {
    out.push_back(record_to_json(find_record(catalog, id)));
  }
  return json_response(200, out);
}

ApiResponse induce(const json& body) {
  const Configuration conf = body_configuration(body);
  const InducedAlignment induced = induced_alignment(conf);
  json marginal = json::array();
  for (const MarginalPair& m : induced.marginal) {
    marginal.push_back({{"element", std::string(1, GroundSet::label(m.element))},
                        {"subset", subset_decode(m.subset)},
                        {"margin", m.margin}});
  }
  json hulls = json::array();
  if (body.contains("hull_subsets")) {
    for (const json& s : body.at("hull_subsets")) {
      if (!s.is_string()) throw InputError("'hull_subsets' holds label strings");
      const SubsetMask subset = subset_encode(s.get<std::string>(), conf.ground());
      if (subset.empty()) throw InputError("hull of the empty subset");
      json h = hull_to_json(hull_boundary(conf.select(subset)), subset.elements());
      h["subset"] = subset_decode(subset);
      hulls.push_back(h);
    }
  }
  return json_response(200, {{"family_mask", induced.family.bits()},
                             {"marginal_pairs", marginal},
                             {"hulls", hulls}});
}

ApiResponse verify(const Workbench& bench, const json& body) {
  const Configuration conf = body_configuration(body);
  std::optional<ConvexGeometry> geometry;
  if (body.contains("geometry_id")) {
    if (!body["geometry_id"].is_string()) throw InputError("'geometry_id' must be a string");
    geometry = bench.record(body["geometry_id"].get<std::string>()).geometry();
  } else if (body.contains("family_mask")) {
    if (!body["family_mask"].is_number_unsigned()) {
      throw InputError("'family_mask' must be a non-negative integer");
    }
    const FamilyMask f(body["family_mask"].get<std::uint32_t>());
    if (!is_convex_geometry(f, conf.ground())) {
      throw PreconditionError("family mask is not a convex geometry on " +
                              std::to_string(conf.ground().size()) + " elements");
    }
    geometry = ConvexGeometry::from_family(conf.ground(), f);
  } else {
    throw InputError("request needs 'geometry_id' or 'family_mask'");
  }
  if (geometry->ground() != conf.ground()) {
    throw PreconditionError("the geometry and the circles have different sizes");
  }
  const bool by_props = body.value("by_propositions", false);
  const VerificationReport report =
      by_props ? verify_by_propositions(*geometry, generate_basis(*geometry), conf)
               : verify_full(*geometry, conf);
  return json_response(200, report_to_json(report));
}

ApiResponse hull(const json& body) {
  const Configuration conf = body_configuration(body);
  if (!body.contains("subset") || !body["subset"].is_string()) {
    throw InputError("request needs a 'subset' label string");
  }
  const SubsetMask subset = subset_encode(body["subset"].get<std::string>(), conf.ground());
  if (subset.empty()) throw InputError("hull of the empty subset");
  json h = hull_to_json(hull_boundary(conf.select(subset)), subset.elements());
  h["subset"] = subset_decode(subset);
  return json_response(200, h);
}

ApiResponse tikz(const json& body) {
  const Configuration conf = body_configuration(body);
  double width = 8.0;
  if (body.contains("width")) {
    if (!body["width"].is_number()) throw InputError("'width' must be a number");
    width = body["width"].get<double>();
  }
  return {200, "text/plain", export_tikz(conf, width)};
}

}  // namespace

ApiResponse handle_request(const Workbench& bench, const ApiRequest& request) {
  static const std::string kPrefix = "/api/geometries/";
  try {
    if (request.method == "GET") {
      if (request.path == "/api/geometries") return list_geometries(bench, request.params);
      if (request.path.rfind(kPrefix, 0) == 0) {
        return json_response(200, record_to_json(bench.record(request.path.substr(kPrefix.size()))));
      }
    } else if (request.method == "POST") {
      if (request.path == "/api/induce") return induce(parse_body(request.body));
      if (request.path == "/api/verify") return verify(bench, parse_body(request.body));
      if (request.path == "/api/hull") return hull(parse_body(request.body));
      if (request.path == "/api/tikz") return tikz(parse_body(request.body));
    }
    return error_response(404, "not_found", request.method + " " + request.path);
  } catch (const NotFoundError& e) {
    return error_response(404, "not_found", e.what());
  } catch (const InputError& e) {
    return error_response(400, "malformed", e.what());
  } catch (const json::exception& e) {
    return error_response(400, "malformed", e.what());
  } catch (const PreconditionError& e) {
    return error_response(422, "precondition_failed", e.what());
  } catch (const MarginalError& e) {
    return error_response(422, "marginal", e.what());
  }
}

HttpServer::HttpServer(const Workbench& bench)
    : bench_(bench), server_(std::make_unique<httplib::Server>()) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request{req.method, req.path, {}, req.body};
    for (const auto& [key, value] : req.params) request.params[key] = value;
    const ApiResponse response = handle_request(bench_, request);
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  };
  server_->Get(R"(/api/.*)", forward);
  server_->Post(R"(/api/.*)", forward);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port) +
                             " (port in use?)");
  }
  return bound;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

void serve(const Workbench& bench, int port) {
  HttpServer server(bench);
  server.bind("127.0.0.1", port);
  server.listen();
}

}  // namespace cgw
