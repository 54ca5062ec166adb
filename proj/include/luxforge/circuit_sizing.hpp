#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace luxforge::circuit {

enum class Phase { Single, Three };
enum class CircuitKind { Lighting, Power };

struct ExplicitLoad {
  double watts = 0.0;
  std::string label;

  bool operator==(const ExplicitLoad&) const = default;
};

struct SocketLoad {
  int count = 1;

  bool operator==(const SocketLoad&) const = default;
};

/// `count` lighting points, each carrying `lamps` lamps of `lamp_flux` lm.
struct LightingLoad {
  int count = 1;
  int lamps = 1;
  double lamp_flux = 550.0;

  bool operator==(const LightingLoad&) const = default;
};

using LoadItem = std::variant<ExplicitLoad, SocketLoad, LightingLoad>;

struct CircuitSpec {
  std::string name;
  Phase phase = Phase::Single;
  CircuitKind kind = CircuitKind::Power;
  double cos_phi = 1.0;
  double length = 0.0;  // one-way, m
  std::vector<LoadItem> loads;

  bool operator==(const CircuitSpec&) const = default;
};

struct ConductorChoice {
  std::string designation;  // e.g. "3x6"
  double cross_section = 0.0;  // mm²
  double ampacity = 0.0;       // A
  std::string material = "copper";

  bool operator==(const ConductorChoice&) const = default;
};

/// Declared sizing constants. The committed data file holds the same values
/// as the defaults below.
struct ElectricalDefaults {
  double socket_rating_w = 2000.0;
  double socket_diversity = 0.5;  // applied to every socket beyond the first
  double luminous_efficacy = 12.0;  // lm/W
  double resistivity = 0.0175;      // Ω·mm²/m, copper
  double single_phase_voltage = 230.0;
  double three_phase_voltage = 400.0;
  double lighting_drop_limit_pct = 3.0;
  double power_drop_limit_pct = 5.0;
  std::vector<ConductorChoice> conductors = {
      {"3x6", 6.0, 40.0},
      {"3x10", 10.0, 60.0},
      {"3x25", 25.0, 100.0},
      {"5x32", 32.0, 125.0},
  };

  bool operator==(const ElectricalDefaults&) const = default;

  static ElectricalDefaults parse(std::string_view text);
  static ElectricalDefaults load(const std::string& path);
  static std::string standard_path();
};

struct CircuitResult {
  std::string name;
  double load_w = 0.0;
  double current_a = 0.0;
  ConductorChoice conductor;
  double voltage_drop_pct = 0.0;
  double drop_limit_pct = 0.0;
  bool drop_ok = true;
};

void validate(const CircuitSpec& c);

double circuit_load(const CircuitSpec& c, const ElectricalDefaults& defaults = {});
double circuit_current(double watts, const CircuitSpec& c, const ElectricalDefaults& defaults = {});
ConductorChoice select_conductor(double current, const ElectricalDefaults& defaults = {});
double voltage_drop(double current, const CircuitSpec& c, const ConductorChoice& choice,
                    const ElectricalDefaults& defaults = {});
double drop_limit(const CircuitSpec& c, const ElectricalDefaults& defaults = {});

/// Load, current, conductor and voltage-drop check in one pass.
CircuitResult size_circuit(const CircuitSpec& c, const ElectricalDefaults& defaults = {});

std::string_view to_string(Phase p);
std::string_view to_string(CircuitKind k);

}  // namespace luxforge::circuit
