#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "luxforge/circuit_sizing.hpp"
#include "luxforge/lumen_method.hpp"
#include "luxforge/photometry.hpp"

namespace luxforge::project {

enum class RoomCategory { LivingSpace, Hallway, MainSpace, AnnexOffice };

inline constexpr RoomCategory kAllCategories[] = {RoomCategory::LivingSpace, RoomCategory::Hallway,
                                                  RoomCategory::MainSpace, RoomCategory::AnnexOffice};

std::string_view to_string(RoomCategory c);
std::optional<RoomCategory> category_from_string(std::string_view s);

/// Norm average illuminance on the useful plane, lx.
double required_illuminance(RoomCategory category);

struct DeviceCounts {
  int lamps = 0;
  int monopolar_switches = 0;
  int bipolar_switches = 0;
  int staircase_switches = 0;  // two-way switches
  int monophasic_sockets = 0;

  DeviceCounts& operator+=(const DeviceCounts& o);
  bool operator==(const DeviceCounts&) const = default;
};

struct PlacementSpec {
  std::string photometry;  // key into Project::photometry
  double x = 0.0;
  double y = 0.0;
  double mount_height = 0.0;  // above the useful plane
  double orientation_phi = 0.0;

  bool operator==(const PlacementSpec&) const = default;
};

struct RoomSpec {
  int id = 0;             // sequential position in the project
  std::string label;      // printed row number, kept verbatim (may be empty)
  std::string name;
  RoomCategory category = RoomCategory::LivingSpace;
  bool dimension = true;  // whether the lumen method is expected to run
  std::optional<lumen::RoomGeometry> geometry;
  lumen::Reflectances reflectances;
  DeviceCounts devices;
  int lamps_per_luminaire = 1;
  std::optional<double> lamp_flux;    // falls back to Project::default_phi_l
  std::optional<double> utilization;  // forces u instead of the table lookup
  std::vector<PlacementSpec> placements;

  bool operator==(const RoomSpec&) const = default;
};

struct Project {
  std::string name;
  double k_dep = lumen::kDefaultDepreciation;
  double default_phi_l = lumen::kDefaultLampFlux;
  std::map<std::string, std::string> photometry;  // name -> path relative to the project file
  std::vector<RoomSpec> rooms;
  std::vector<circuit::CircuitSpec> circuits;

  const RoomSpec* find_room(std::string_view name) const;
  bool operator==(const Project&) const = default;
};

/// Parses and checks a project document. Throws SchemaViolation (message
/// carries the JSON path), UnknownPhotometryRef or DuplicateRoomName.
Project load_project(std::string_view document);
Project load_project_file(const std::filesystem::path& path);

/// Canonical document: fixed key order, two-space indent, trailing newline.
std::string save_project(const Project& project);

DeviceCounts device_totals(const Project& project);

using PhotometryLibrary = std::map<std::string, std::shared_ptr<const photometry::PhotometricDistribution>>;

PhotometryLibrary load_photometry_library(const Project& project, const std::filesystem::path& base_dir);

photometry::Luminaire luminaire_for(const Project& project, const RoomSpec& room,
                                    std::shared_ptr<const photometry::PhotometricDistribution> distribution = {});

enum class Severity { Warning, Error };

struct Issue {
  Severity severity = Severity::Error;
  std::string subject;  // room or circuit name
  std::string code;
  std::string message;
};

/// Issues are data: nothing here throws for a well-formed Project. When a
/// photometry library is supplied, rooms with placements are also checked
/// against their norm illuminance on the direct-component grid.
std::vector<Issue> validate_project(const Project& project, const PhotometryLibrary* library = nullptr);

bool has_errors(const std::vector<Issue>& issues);

}  // namespace luxforge::project
