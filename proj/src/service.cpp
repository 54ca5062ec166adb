#include "luxforge/service.hpp"

#include "httplib.h"
#include "json.hpp"
#include "luxforge/errors.hpp"

namespace luxforge::service {

namespace {

using json = nlohmann::json;

constexpr const char* kRevisionHeader = "X-Revision";

Response json_response(int status, const json& body) { return {status, body.dump(), {}}; }

Response error_response(int status, std::string_view code, const std::string& message) {
  return json_response(status, {{"error", std::string(code)}, {"message", message}});
}

Response from_error(const Error& e, int fallback_status) {
  int status = fallback_status;
  if (e.code() == ErrorCode::UnknownRoom) status = 404;
  return error_response(status, luxforge::to_string(e.code()), e.what());
}

// Calculation requests carry a small JSON object; anything else is a 400.
std::optional<json> parse_request(const std::string& body, Response& failure) {
  try {
    json j = json::parse(body.empty() ? std::string("{}") : body);
    if (!j.is_object()) throw std::runtime_error("request body must be a JSON object");
    if (!j.contains("room") || !j["room"].is_string()) throw std::runtime_error("'room' must be a string");
    return j;
  } catch (const std::exception& e) {
    failure = error_response(400, "BadRequest", e.what());
    return std::nullopt;
  }
}

json dimensioning_json(const std::string& room, const project::RoomSpec& spec, const lumen::DimensioningResult& r) {
  const double required = project::required_illuminance(spec.category);
  return {{"room", room},
          {"required_e", required},
          {"n_c", r.luminaire_count},
          {"u", r.utilization},
          {"s_u", r.useful_area},
          {"h", r.mounting_height},
          {"room_index", r.room_index},
          {"phi_total", r.total_flux},
          {"phi_useful", r.useful_flux},
          {"achieved_e", r.achieved_illuminance},
          {"compliance", lumen::meets_requirement(r.achieved_illuminance, required)}};
}

json grid_json(const std::string& room, const grid::IlluminanceGrid& g, const grid::GridStatistics& s) {
  json xs = json::array();
  json ys = json::array();
  json rows = json::array();
  for (int ix = 0; ix < g.nx; ++ix) xs.push_back(g.x(ix));
  for (int iy = 0; iy < g.ny; ++iy) {
    ys.push_back(g.y(iy));
    json row = json::array();
    for (int ix = 0; ix < g.nx; ++ix) row.push_back(g.at(ix, iy));
    rows.push_back(std::move(row));
  }
  return {{"room", room},
          {"nx", g.nx},
          {"ny", g.ny},
          {"spacing", g.spacing},
          {"dx", g.dx},
          {"dy", g.dy},
          {"plane_height", g.plane_height},
          {"x", xs},
          {"y", ys},
          {"values", rows},
          {"statistics", {{"min", s.min}, {"avg", s.avg}, {"max", s.max}, {"uniformity", s.uniformity}}}};
}

}  // namespace

DesignService::DesignService(design::DesignContext initial, std::filesystem::path base_dir, ServiceOptions options)
    : base_dir_(std::move(base_dir)), options_(std::move(options)) {
  auto snap = std::make_shared<Snapshot>();
  snap->revision = 0;
  snap->context = std::make_shared<const design::DesignContext>(std::move(initial));
  current_ = std::move(snap);
}

DesignService::~DesignService() { stop(); }

std::shared_ptr<const Snapshot> DesignService::snapshot() const {
  std::lock_guard lock(mutex_);
  return current_;
}

void DesignService::stamp(Response& r) const {
  const auto snap = snapshot();
  r.headers["X-Engine-Version"] = LUXFORGE_VERSION;
  r.headers["X-CU-Table-Fingerprint"] = snap->context->cu_table->fingerprint();
  r.headers["Access-Control-Allow-Origin"] = options_.cors_origin;
  r.headers["Access-Control-Expose-Headers"] = "X-Revision, X-Engine-Version, X-CU-Table-Fingerprint";
  if (!r.headers.contains(kRevisionHeader)) r.headers[kRevisionHeader] = std::to_string(snap->revision);
}

Response DesignService::get_project() const {
  const auto snap = snapshot();
  Response r{200, project::save_project(snap->context->project), {}};
  r.headers[kRevisionHeader] = std::to_string(snap->revision);
  stamp(r);
  return r;
}

Response DesignService::put_project(const std::string& body, const std::string& if_revision) {
  Response r;
  std::uint64_t expected = 0;
  try {
    std::size_t used = 0;
    expected = std::stoull(if_revision, &used);
    if (used != if_revision.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    r = error_response(428, "RevisionRequired", "If-Revision header with the current revision is required");
    stamp(r);
    return r;
  }

  auto next = std::make_shared<design::DesignContext>();
  try {
    next->project = project::load_project(body);
    next->library = project::load_photometry_library(next->project, base_dir_);
  } catch (const Error& e) {
    r = from_error(e, 400);
    stamp(r);
    return r;
  }

  {
    std::lock_guard lock(mutex_);
    next->cu_table = current_->context->cu_table;
    next->electrical = current_->context->electrical;
    if (expected != current_->revision) {
      r = json_response(409, {{"error", "RevisionConflict"},
                              {"message", "project changed since revision " + std::to_string(expected)},
                              {"revision", current_->revision}});
    } else {
      auto snap = std::make_shared<Snapshot>();
      snap->revision = current_->revision + 1;
      snap->context = std::move(next);
      current_ = std::move(snap);
      r = json_response(200, {{"revision", current_->revision}});
      r.headers[kRevisionHeader] = std::to_string(current_->revision);
    }
  }
  stamp(r);
  return r;
}

Response DesignService::calc_lumen(const std::string& body) const {
  Response r;
  const auto snap = snapshot();
  if (auto req = parse_request(body, r)) {
    const std::string room = (*req)["room"].get<std::string>();
    try {
      const auto& spec = design::room_or_throw(snap->context->project, room);
      const auto result = design::dimension_room(*snap->context, room);
      r = json_response(200, dimensioning_json(room, spec, result));
    } catch (const Error& e) {
      r = from_error(e, 422);
    }
  }
  r.headers[kRevisionHeader] = std::to_string(snap->revision);
  stamp(r);
  return r;
}

Response DesignService::calc_grid(const std::string& body) const {
  Response r;
  const auto snap = snapshot();
  if (auto req = parse_request(body, r)) {
    const std::string room = (*req)["room"].get<std::string>();
    double spacing = grid::kDefaultSpacing;
    if (req->contains("spacing")) {
      if (!(*req)["spacing"].is_number()) {
        r = error_response(400, "BadRequest", "'spacing' must be a number");
      } else {
        spacing = (*req)["spacing"].get<double>();
      }
    }
    if (r.status == 200) {
      try {
        const auto g = design::room_grid(*snap->context, room, spacing);
        r = json_response(200, grid_json(room, g, grid::grid_statistics(g)));
      } catch (const Error& e) {
        r = from_error(e, 422);
      }
    }
  }
  r.headers[kRevisionHeader] = std::to_string(snap->revision);
  stamp(r);
  return r;
}

void DesignService::install_routes() {
  server_ = std::make_unique<httplib::Server>();
  auto send = [](const Response& in, httplib::Response& out) {
    out.status = in.status;
    for (const auto& [k, v] : in.headers) out.set_header(k, v);
    out.set_content(in.body, "application/json");
  };

  server_->Get("/api/project", [this, send](const httplib::Request&, httplib::Response& res) {
    send(get_project(), res);
  });
  server_->Put("/api/project", [this, send](const httplib::Request& req, httplib::Response& res) {
    std::string rev = req.get_header_value("If-Revision");
    if (rev.empty() && req.has_param("if_revision")) rev = req.get_param_value("if_revision");
    send(put_project(req.body, rev), res);
  });
  server_->Post("/api/calc/lumen", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(calc_lumen(req.body), res);
  });
  server_->Post("/api/calc/grid", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(calc_grid(req.body), res);
  });
  server_->Options(R"(/api/.*)", [this](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Origin", options_.cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type, If-Revision");
  });
}

bool DesignService::listen(const std::string& host, int port) {
  install_routes();
  return server_->listen(host, port);
}

int DesignService::start_background(const std::string& host) {
  install_routes();
  const int port = server_->bind_to_any_port(host);
  if (port <= 0) throw Error(ErrorCode::Io, "cannot bind a port on " + host);
  worker_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void DesignService::stop() {
  if (server_) server_->stop();
  if (worker_.joinable()) worker_.join();
}

}  // namespace luxforge::service
