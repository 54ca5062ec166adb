#include "luxforge/circuit_sizing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "luxforge/errors.hpp"
#include "luxforge/numeric_text.hpp"

namespace luxforge::circuit {

namespace {

double nominal_voltage(const CircuitSpec& c, const ElectricalDefaults& d) {
  return c.phase == Phase::Single ? d.single_phase_voltage : d.three_phase_voltage;
}

}  // namespace

ElectricalDefaults ElectricalDefaults::parse(std::string_view text) {
  ElectricalDefaults d;
  d.conductors.clear();
  std::istringstream in{std::string(text)};
  std::string line;
  auto num = [](const std::string& key, const std::string& token) {
    auto v = parse_double(token);
    if (!v) throw Error(ErrorCode::BadDefaults, key + ": not a number: '" + token + "'");
    return *v;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string key, a, b, c;
    ls >> key >> a;
    if (key == "conductor") {
      ls >> b >> c;
      if (c.empty()) throw Error(ErrorCode::BadDefaults, "conductor rows need designation, mm², A");
      d.conductors.push_back({a, num("cross_section", b), num("ampacity", c)});
    } else if (key == "socket_rating_w") d.socket_rating_w = num(key, a);
    else if (key == "socket_diversity") d.socket_diversity = num(key, a);
    else if (key == "luminous_efficacy") d.luminous_efficacy = num(key, a);
    else if (key == "resistivity") d.resistivity = num(key, a);
    else if (key == "single_phase_voltage") d.single_phase_voltage = num(key, a);
    else if (key == "three_phase_voltage") d.three_phase_voltage = num(key, a);
    else if (key == "lighting_drop_limit_pct") d.lighting_drop_limit_pct = num(key, a);
    else if (key == "power_drop_limit_pct") d.power_drop_limit_pct = num(key, a);
    else throw Error(ErrorCode::BadDefaults, "unknown key '" + key + "'");
  }
  if (d.conductors.empty()) throw Error(ErrorCode::BadDefaults, "no conductor rows");
  for (std::size_t i = 1; i < d.conductors.size(); ++i) {
    if (!(d.conductors[i].ampacity > d.conductors[i - 1].ampacity) ||
        !(d.conductors[i].cross_section > d.conductors[i - 1].cross_section)) {
      throw Error(ErrorCode::BadDefaults, "conductor rows must ascend in size and ampacity");
    }
  }
  return d;
}

ElectricalDefaults ElectricalDefaults::load(const std::string& path) { return parse(read_text_file(path)); }

std::string ElectricalDefaults::standard_path() {
  return std::string(LUXFORGE_DATA_DIR) + "/electrical_defaults.txt";
}

void validate(const CircuitSpec& c) {
  if (!(c.length > 0.0)) throw Error(ErrorCode::SchemaViolation, "circuit '" + c.name + "': length must be > 0");
  if (!(c.cos_phi > 0.0) || c.cos_phi > 1.0) {
    throw Error(ErrorCode::SchemaViolation, "circuit '" + c.name + "': cos_phi must lie in (0,1]");
  }
  if (c.loads.empty()) throw Error(ErrorCode::EmptyCircuit, "circuit '" + c.name + "' has no loads");
  for (const auto& item : c.loads) {
    const bool ok = std::visit(
        [](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, ExplicitLoad>) return l.watts >= 0.0;
          else if constexpr (std::is_same_v<T, SocketLoad>) return l.count >= 1;
          else return l.count >= 1 && l.lamps >= 1 && l.lamp_flux >= 0.0;
        },
        item);
    if (!ok) throw Error(ErrorCode::SchemaViolation, "circuit '" + c.name + "': load values must be non-negative");
  }
}

double circuit_load(const CircuitSpec& c, const ElectricalDefaults& d) {
  if (c.loads.empty()) throw Error(ErrorCode::EmptyCircuit, "circuit '" + c.name + "' has no loads");
  double watts = 0.0;
  int sockets = 0;
  for (const auto& item : c.loads) {
    if (const auto* e = std::get_if<ExplicitLoad>(&item)) {
      watts += e->watts;
    } else if (const auto* s = std::get_if<SocketLoad>(&item)) {
      sockets += s->count;
    } else {
      const auto& l = std::get<LightingLoad>(item);
      watts += l.count * l.lamps * l.lamp_flux / d.luminous_efficacy;
    }
  }
  if (sockets > 0) watts += d.socket_rating_w * (1.0 + (sockets - 1) * d.socket_diversity);
  return watts;
}

double circuit_current(double watts, const CircuitSpec& c, const ElectricalDefaults& d) {
  if (c.phase == Phase::Single) return watts / (d.single_phase_voltage * c.cos_phi);
  return watts / (std::numbers::sqrt3 * d.three_phase_voltage * c.cos_phi);
}

ConductorChoice select_conductor(double current, const ElectricalDefaults& d) {
  for (const auto& row : d.conductors) {
    if (row.ampacity >= current) return row;
  }
  throw Error(ErrorCode::OverAmpacity, "current " + format_fixed(current, 2) + " A exceeds the largest conductor");
}

double voltage_drop(double current, const CircuitSpec& c, const ConductorChoice& choice,
                    const ElectricalDefaults& d) {
  const double factor = c.phase == Phase::Single ? 2.0 : std::numbers::sqrt3;
  const double volts = factor * d.resistivity * c.length * current / choice.cross_section;
  return 100.0 * volts / nominal_voltage(c, d);
}

double drop_limit(const CircuitSpec& c, const ElectricalDefaults& d) {
  return c.kind == CircuitKind::Lighting ? d.lighting_drop_limit_pct : d.power_drop_limit_pct;
}

CircuitResult size_circuit(const CircuitSpec& c, const ElectricalDefaults& d) {
  validate(c);
  CircuitResult r;
  r.name = c.name;
  r.load_w = circuit_load(c, d);
  r.current_a = circuit_current(r.load_w, c, d);
  r.conductor = select_conductor(r.current_a, d);
  r.voltage_drop_pct = voltage_drop(r.current_a, c, r.conductor, d);
  r.drop_limit_pct = drop_limit(c, d);
  r.drop_ok = r.voltage_drop_pct <= r.drop_limit_pct;
  return r;
}

std::string_view to_string(Phase p) { return p == Phase::Single ? "single" : "three"; }
std::string_view to_string(CircuitKind k) { return k == CircuitKind::Lighting ? "lighting" : "power"; }

}  // namespace luxforge::circuit
