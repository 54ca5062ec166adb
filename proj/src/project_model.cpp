#include "luxforge/project_model.hpp"

#include <cmath>
#include <set>

#include "json.hpp"
#include "luxforge/errors.hpp"
#include "luxforge/numeric_text.hpp"
#include "luxforge/point_grid.hpp"

namespace luxforge::project {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, path + ": " + what);
}

// Strict object reader: every key must be consumed, so unknown fields fail.
class Fields {
 public:
  Fields(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) schema_error(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    if (it == node_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& require(const std::string& key) {
    const json* v = get(key);
    if (!v) schema_error(at(key), "required field missing");
    return *v;
  }

  double number(const std::string& key) { return as_number(require(key), at(key)); }

  std::optional<double> optional_number(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    return as_number(*v, at(key));
  }

  double number_or(const std::string& key, double fallback) { return optional_number(key).value_or(fallback); }

  int integer_or(const std::string& key, int fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) schema_error(at(key), "expected an integer");
    return v->get<int>();
  }

  std::string string(const std::string& key) {
    const json& v = require(key);
    if (!v.is_string()) schema_error(at(key), "expected a string");
    return v.get<std::string>();
  }

  std::string string_or(const std::string& key, std::string fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) schema_error(at(key), "expected a string");
    return v->get<std::string>();
  }

  bool boolean_or(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) schema_error(at(key), "expected a boolean");
    return v->get<bool>();
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.contains(it.key())) schema_error(at(it.key()), "unknown field");
    }
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) schema_error(path, "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) schema_error(path, "expected a finite number");
    return d;
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

int count_field(Fields& f, const std::string& key) {
  int v = f.integer_or(key, 0);
  if (v < 0) schema_error(f.at(key), "count must be >= 0");
  return v;
}

lumen::RoomGeometry read_geometry(const json& node, const std::string& path) {
  Fields f(node, path);
  lumen::RoomGeometry g;
  g.length = f.number("A");
  g.width = f.number("B");
  g.height = f.number("H");
  g.useful_plane_height = f.number_or("h_u", lumen::kDefaultUsefulPlaneHeight);
  g.suspension = f.number_or("h_a", 0.0);
  f.finish();
  if (!(g.length > 0) || !(g.width > 0) || !(g.height > 0)) schema_error(path, "A, B and H must be > 0");
  if (g.useful_plane_height < 0 || g.suspension < 0) schema_error(path, "h_u and h_a must be >= 0");
  return g;
}

lumen::Reflectances read_reflectances(const json& node, const std::string& path) {
  Fields f(node, path);
  lumen::Reflectances r;
  r.ceiling = f.number_or("p_t", r.ceiling);
  r.walls = f.number_or("p_p", r.walls);
  f.finish();
  if (r.ceiling < 0 || r.ceiling > 1 || r.walls < 0 || r.walls > 1) {
    schema_error(path, "reflectances must lie in [0,1]");
  }
  return r;
}

DeviceCounts read_devices(const json& node, const std::string& path) {
  Fields f(node, path);
  DeviceCounts d;
  d.lamps = count_field(f, "lamps");
  d.monopolar_switches = count_field(f, "monopolar_switches");
  d.bipolar_switches = count_field(f, "bipolar_switches");
  d.staircase_switches = count_field(f, "staircase_switches");
  d.monophasic_sockets = count_field(f, "monophasic_sockets");
  f.finish();
  return d;
}

PlacementSpec read_placement(const json& node, const std::string& path) {
  Fields f(node, path);
  PlacementSpec p;
  p.photometry = f.string("photometry");
  p.x = f.number("x");
  p.y = f.number("y");
  p.mount_height = f.number("mount_height");
  p.orientation_phi = f.number_or("orientation_phi", 0.0);
  f.finish();
  if (!(p.mount_height > 0)) schema_error(path + ".mount_height", "must be > 0");
  return p;
}

RoomSpec read_room(const json& node, const std::string& path, int position) {
  Fields f(node, path);
  RoomSpec r;
  r.id = f.integer_or("id", position);
  r.label = f.string_or("label", "");
  r.name = f.string("name");
  if (r.name.empty()) schema_error(f.at("name"), "must not be empty");
  const std::string cat = f.string("category");
  auto parsed = category_from_string(cat);
  if (!parsed) schema_error(f.at("category"), "unknown category '" + cat + "'");
  r.category = *parsed;
  r.dimension = f.boolean_or("dimension", true);
  if (const json* g = f.get("geometry")) r.geometry = read_geometry(*g, f.at("geometry"));
  if (const json* rf = f.get("reflectances")) r.reflectances = read_reflectances(*rf, f.at("reflectances"));
  if (const json* d = f.get("devices")) r.devices = read_devices(*d, f.at("devices"));
  if (const json* l = f.get("luminaire")) {
    Fields lf(*l, f.at("luminaire"));
    r.lamps_per_luminaire = lf.integer_or("n", 1);
    r.lamp_flux = lf.optional_number("phi_l");
    lf.finish();
    if (r.lamps_per_luminaire < 1) schema_error(lf.at("n"), "must be >= 1");
    if (r.lamp_flux && !(*r.lamp_flux > 0)) schema_error(lf.at("phi_l"), "must be > 0");
  }
  r.utilization = f.optional_number("utilization");
  if (r.utilization && (!(*r.utilization > 0) || *r.utilization > 1)) {
    schema_error(f.at("utilization"), "must lie in (0,1]");
  }
  if (const json* ps = f.get("placements")) {
    if (!ps->is_array()) schema_error(f.at("placements"), "expected an array");
    for (std::size_t i = 0; i < ps->size(); ++i) {
      r.placements.push_back(read_placement((*ps)[i], f.at("placements") + "[" + std::to_string(i) + "]"));
    }
  }
  f.finish();
  return r;
}

circuit::LoadItem read_load(const json& node, const std::string& path) {
  Fields f(node, path);
  const std::string type = f.string("type");
  circuit::LoadItem item;
  if (type == "explicit") {
    circuit::ExplicitLoad e{f.number("watts"), f.string_or("label", "")};
    if (e.watts < 0) schema_error(f.at("watts"), "must be >= 0");
    item = e;
  } else if (type == "sockets") {
    circuit::SocketLoad s{f.integer_or("count", 1)};
    if (s.count < 1) schema_error(f.at("count"), "must be >= 1");
    item = s;
  } else if (type == "lighting") {
    circuit::LightingLoad l{f.integer_or("count", 1), f.integer_or("lamps", 1), f.number("phi_l")};
    if (l.count < 1 || l.lamps < 1) schema_error(path, "count and lamps must be >= 1");
    if (!(l.lamp_flux > 0)) schema_error(f.at("phi_l"), "must be > 0");
    item = l;
  } else {
    schema_error(f.at("type"), "expected explicit, sockets or lighting");
  }
  f.finish();
  return item;
}

circuit::CircuitSpec read_circuit(const json& node, const std::string& path) {
  Fields f(node, path);
  circuit::CircuitSpec c;
  c.name = f.string("name");
  const std::string phase = f.string_or("phase", "single");
  if (phase == "single") c.phase = circuit::Phase::Single;
  else if (phase == "three") c.phase = circuit::Phase::Three;
  else schema_error(f.at("phase"), "expected single or three");
  const std::string kind = f.string_or("kind", "power");
  if (kind == "lighting") c.kind = circuit::CircuitKind::Lighting;
  else if (kind == "power") c.kind = circuit::CircuitKind::Power;
  else schema_error(f.at("kind"), "expected lighting or power");
  c.cos_phi = f.number_or("cos_phi", 1.0);
  c.length = f.number("length");
  const json& loads = f.require("loads");
  if (!loads.is_array()) schema_error(f.at("loads"), "expected an array");
  for (std::size_t i = 0; i < loads.size(); ++i) {
    c.loads.push_back(read_load(loads[i], f.at("loads") + "[" + std::to_string(i) + "]"));
  }
  f.finish();
  if (!(c.cos_phi > 0) || c.cos_phi > 1) schema_error(f.at("cos_phi"), "must lie in (0,1]");
  if (!(c.length > 0)) schema_error(f.at("length"), "must be > 0");
  if (c.loads.empty()) throw Error(ErrorCode::EmptyCircuit, path + ": circuit '" + c.name + "' has no loads");
  return c;
}

ordered_json write_room(const RoomSpec& r) {
  ordered_json j;
  j["id"] = r.id;
  j["label"] = r.label;
  j["name"] = r.name;
  j["category"] = std::string(to_string(r.category));
  j["dimension"] = r.dimension;
  if (r.geometry) {
    const auto& g = *r.geometry;
    j["geometry"] = {{"A", g.length}, {"B", g.width}, {"H", g.height}, {"h_u", g.useful_plane_height},
                     {"h_a", g.suspension}};
  } else {
    j["geometry"] = nullptr;
  }
  j["reflectances"] = {{"p_t", r.reflectances.ceiling}, {"p_p", r.reflectances.walls}};
  const auto& d = r.devices;
  j["devices"] = {{"lamps", d.lamps},
                  {"monopolar_switches", d.monopolar_switches},
                  {"bipolar_switches", d.bipolar_switches},
                  {"staircase_switches", d.staircase_switches},
                  {"monophasic_sockets", d.monophasic_sockets}};
  ordered_json lum;
  lum["n"] = r.lamps_per_luminaire;
  lum["phi_l"] = r.lamp_flux ? ordered_json(*r.lamp_flux) : ordered_json(nullptr);
  j["luminaire"] = lum;
  j["utilization"] = r.utilization ? ordered_json(*r.utilization) : ordered_json(nullptr);
  ordered_json ps = ordered_json::array();
  for (const auto& p : r.placements) {
    ps.push_back({{"photometry", p.photometry},
                  {"x", p.x},
                  {"y", p.y},
                  {"mount_height", p.mount_height},
                  {"orientation_phi", p.orientation_phi}});
  }
  j["placements"] = ps;
  return j;
}

ordered_json write_circuit(const circuit::CircuitSpec& c) {
  ordered_json j;
  j["name"] = c.name;
  j["phase"] = std::string(circuit::to_string(c.phase));
  j["kind"] = std::string(circuit::to_string(c.kind));
  j["cos_phi"] = c.cos_phi;
  j["length"] = c.length;
  ordered_json loads = ordered_json::array();
  for (const auto& item : c.loads) {
    ordered_json l;
    if (const auto* e = std::get_if<circuit::ExplicitLoad>(&item)) {
      l["type"] = "explicit";
      l["watts"] = e->watts;
      l["label"] = e->label;
    } else if (const auto* s = std::get_if<circuit::SocketLoad>(&item)) {
      l["type"] = "sockets";
      l["count"] = s->count;
    } else {
      const auto& lt = std::get<circuit::LightingLoad>(item);
      l["type"] = "lighting";
      l["count"] = lt.count;
      l["lamps"] = lt.lamps;
      l["phi_l"] = lt.lamp_flux;
    }
    loads.push_back(l);
  }
  j["loads"] = loads;
  return j;
}

}  // namespace

std::string_view to_string(RoomCategory c) {
  switch (c) {
    case RoomCategory::LivingSpace: return "LivingSpace";
    case RoomCategory::Hallway: return "Hallway";
    case RoomCategory::MainSpace: return "MainSpace";
    case RoomCategory::AnnexOffice: return "AnnexOffice";
  }
  return "LivingSpace";
}

std::optional<RoomCategory> category_from_string(std::string_view s) {
  for (auto c : kAllCategories) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

double required_illuminance(RoomCategory category) {
  switch (category) {
    case RoomCategory::LivingSpace: return 50.0;
    case RoomCategory::Hallway: return 75.0;
    case RoomCategory::MainSpace: return 20.0;
    case RoomCategory::AnnexOffice: return 100.0;
  }
  return 50.0;
}

DeviceCounts& DeviceCounts::operator+=(const DeviceCounts& o) {
  lamps += o.lamps;
  monopolar_switches += o.monopolar_switches;
  bipolar_switches += o.bipolar_switches;
  staircase_switches += o.staircase_switches;
  monophasic_sockets += o.monophasic_sockets;
  return *this;
}

const RoomSpec* Project::find_room(std::string_view room_name) const {
  for (const auto& r : rooms) {
    if (r.name == room_name) return &r;
  }
  return nullptr;
}

Project load_project(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    schema_error("$", std::string("invalid JSON: ") + e.what());
  }
  Fields f(root, "$");
  Project p;
  p.name = f.string("name");
  p.k_dep = f.number_or("k_dep", lumen::kDefaultDepreciation);
  if (!(p.k_dep >= 1.0)) schema_error(f.at("k_dep"), "must be >= 1");
  p.default_phi_l = f.number_or("default_phi_l", lumen::kDefaultLampFlux);
  if (!(p.default_phi_l > 0)) schema_error(f.at("default_phi_l"), "must be > 0");

  if (const json* ph = f.get("photometry")) {
    if (!ph->is_object()) schema_error(f.at("photometry"), "expected an object of name -> path");
    for (auto it = ph->begin(); it != ph->end(); ++it) {
      if (!it->is_string()) schema_error(f.at("photometry") + "." + it.key(), "expected a path string");
      p.photometry.emplace(it.key(), it->get<std::string>());
    }
  }

  if (const json* rooms = f.get("rooms")) {
    if (!rooms->is_array()) schema_error(f.at("rooms"), "expected an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < rooms->size(); ++i) {
      const std::string path = f.at("rooms") + "[" + std::to_string(i) + "]";
      RoomSpec r = read_room((*rooms)[i], path, static_cast<int>(i + 1));
      if (!names.insert(r.name).second) {
        throw Error(ErrorCode::DuplicateRoomName, path + ": room name '" + r.name + "' is not unique");
      }
      for (std::size_t k = 0; k < r.placements.size(); ++k) {
        if (!p.photometry.contains(r.placements[k].photometry)) {
          throw Error(ErrorCode::UnknownPhotometryRef, path + ".placements[" + std::to_string(k) +
                                                           "]: unknown photometry '" +
                                                           r.placements[k].photometry + "'");
        }
      }
      p.rooms.push_back(std::move(r));
    }
  }

  if (const json* circuits = f.get("circuits")) {
    if (!circuits->is_array()) schema_error(f.at("circuits"), "expected an array");
    for (std::size_t i = 0; i < circuits->size(); ++i) {
      p.circuits.push_back(read_circuit((*circuits)[i], f.at("circuits") + "[" + std::to_string(i) + "]"));
    }
  }
  f.finish();
  return p;
}

Project load_project_file(const std::filesystem::path& path) { return load_project(read_text_file(path)); }

std::string save_project(const Project& project) {
  ordered_json j;
  j["name"] = project.name;
  j["k_dep"] = project.k_dep;
  j["default_phi_l"] = project.default_phi_l;
  ordered_json ph = ordered_json::object();
  for (const auto& [name, path] : project.photometry) ph[name] = path;
  j["photometry"] = ph;
  ordered_json rooms = ordered_json::array();
  for (const auto& r : project.rooms) rooms.push_back(write_room(r));
  j["rooms"] = rooms;
  ordered_json circuits = ordered_json::array();
  for (const auto& c : project.circuits) circuits.push_back(write_circuit(c));
  j["circuits"] = circuits;
  return j.dump(2) + "\n";
}

DeviceCounts device_totals(const Project& project) {
  DeviceCounts total;
  for (const auto& r : project.rooms) total += r.devices;
  return total;
}

PhotometryLibrary load_photometry_library(const Project& project, const std::filesystem::path& base_dir) {
  PhotometryLibrary lib;
  for (const auto& [name, rel] : project.photometry) {
    const auto path = std::filesystem::path(rel).is_absolute() ? std::filesystem::path(rel) : base_dir / rel;
    lib.emplace(name, std::make_shared<const photometry::PhotometricDistribution>(
                          photometry::load_photometry(path.string())));
  }
  return lib;
}

photometry::Luminaire luminaire_for(const Project& project, const RoomSpec& room,
                                    std::shared_ptr<const photometry::PhotometricDistribution> distribution) {
  photometry::Luminaire l;
  l.distribution = std::move(distribution);
  l.lamps = room.lamps_per_luminaire;
  l.lamp_flux = room.lamp_flux.value_or(project.default_phi_l);
  return l;
}

std::vector<Issue> validate_project(const Project& project, const PhotometryLibrary* library) {
  std::vector<Issue> issues;
  auto add = [&issues](Severity s, const std::string& subject, std::string_view code, std::string msg) {
    issues.push_back({s, subject, std::string(code), std::move(msg)});
  };

  for (const auto& room : project.rooms) {
    const double required = required_illuminance(room.category);
    if (room.devices.lamps == 0 && required > 0) {
      add(Severity::Warning, room.name, "NoLamps",
          "no lamps listed but the category requires " + format_fixed(required, 0) + " lx");
    }
    if (!room.geometry) {
      if (room.dimension) add(Severity::Error, room.name, "MissingGeometry", "dimensioning needs A, B and H");
      if (!room.placements.empty()) {
        add(Severity::Error, room.name, "MissingGeometry", "placements need a room geometry");
      }
      continue;
    }
    const auto& g = *room.geometry;
    try {
      lumen::validate(g);
    } catch (const Error& e) {
      add(Severity::Error, room.name, luxforge::to_string(e.code()), e.what());
      continue;
    }
    bool placements_ok = true;
    for (const auto& p : room.placements) {
      if (p.x < 0 || p.x > g.length || p.y < 0 || p.y > g.width) {
        add(Severity::Error, room.name, "PlacementOutOfBounds",
            "placement at (" + format_fixed(p.x, 3) + ", " + format_fixed(p.y, 3) + ") lies outside the room");
        placements_ok = false;
      }
    }
    if (library == nullptr || room.placements.empty() || !placements_ok) continue;

    std::vector<grid::LuminairePlacement> placed;
    for (const auto& p : room.placements) {
      auto it = library->find(p.photometry);
      if (it == library->end()) {
        add(Severity::Error, room.name, "UnknownPhotometryRef", "photometry '" + p.photometry + "' not loaded");
        placements_ok = false;
        break;
      }
      placed.push_back({luminaire_for(project, room, it->second), p.x, p.y, p.mount_height, p.orientation_phi});
    }
    if (!placements_ok) continue;
    const double spacing = std::min({grid::kDefaultSpacing, g.length, g.width});
    const auto stats = grid::grid_statistics(grid::compute_grid(g, placed, spacing, project.k_dep));
    if (stats.avg < required) {
      add(Severity::Warning, room.name, "BelowRequiredIlluminance",
          "grid average " + format_fixed(stats.avg, 1) + " lx is below the required " + format_fixed(required, 0) +
              " lx");
    }
  }

  for (const auto& c : project.circuits) {
    try {
      circuit::validate(c);
    } catch (const Error& e) {
      add(Severity::Error, c.name, luxforge::to_string(e.code()), e.what());
    }
  }
  return issues;
}

bool has_errors(const std::vector<Issue>& issues) {
  for (const auto& i : issues) {
    if (i.severity == Severity::Error) return true;
  }
  return false;
}

}  // namespace luxforge::project
