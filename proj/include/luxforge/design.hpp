#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "luxforge/circuit_sizing.hpp"
#include "luxforge/lumen_method.hpp"
#include "luxforge/point_grid.hpp"
#include "luxforge/project_model.hpp"

namespace luxforge::design {

/// Everything a calculation needs: the project snapshot, its resolved
/// photometry, and the lookup tables it is evaluated against.
struct DesignContext {
  project::Project project;
  project::PhotometryLibrary library;
  const lumen::CuTable* cu_table = &lumen::CuTable::standard();
  circuit::ElectricalDefaults electrical;
};

/// Loads the project file, its photometry (relative to the file) and the
/// committed electrical defaults.
DesignContext load_context(const std::filesystem::path& project_file);

const project::RoomSpec& room_or_throw(const project::Project& p, std::string_view name);

lumen::LumenMethodInput lumen_input(const project::Project& p, const project::RoomSpec& room);

lumen::DimensioningResult dimension_room(const DesignContext& ctx, std::string_view room);

std::vector<grid::LuminairePlacement> placements_for(const DesignContext& ctx, const project::RoomSpec& room);

grid::IlluminanceGrid room_grid(const DesignContext& ctx, std::string_view room,
                                double spacing = grid::kDefaultSpacing);

std::vector<circuit::CircuitResult> size_circuits(const DesignContext& ctx);

}  // namespace luxforge::design
