#include "luxforge/design.hpp"

#include "luxforge/errors.hpp"

namespace luxforge::design {

DesignContext load_context(const std::filesystem::path& project_file) {
  DesignContext ctx;
  ctx.project = project::load_project_file(project_file);
  ctx.library = project::load_photometry_library(ctx.project, project_file.parent_path());
  ctx.electrical = circuit::ElectricalDefaults::load(circuit::ElectricalDefaults::standard_path());
  return ctx;
}

const project::RoomSpec& room_or_throw(const project::Project& p, std::string_view name) {
  const auto* room = p.find_room(name);
  if (room == nullptr) throw Error(ErrorCode::UnknownRoom, "no room named '" + std::string(name) + "'");
  return *room;
}

lumen::LumenMethodInput lumen_input(const project::Project& p, const project::RoomSpec& room) {
  if (!room.geometry) throw Error(ErrorCode::MissingGeometry, "room '" + room.name + "' has no geometry");
  lumen::LumenMethodInput in;
  in.geometry = *room.geometry;
  in.reflectances = room.reflectances;
  in.required_illuminance = project::required_illuminance(room.category);
  in.depreciation = p.k_dep;
  in.luminaire = project::luminaire_for(p, room);
  in.utilization_override = room.utilization;
  return in;
}

lumen::DimensioningResult dimension_room(const DesignContext& ctx, std::string_view name) {
  const auto& room = room_or_throw(ctx.project, name);
  return lumen::dimension_luminaires(lumen_input(ctx.project, room), *ctx.cu_table);
}

std::vector<grid::LuminairePlacement> placements_for(const DesignContext& ctx, const project::RoomSpec& room) {
  std::vector<grid::LuminairePlacement> out;
  out.reserve(room.placements.size());
  for (const auto& p : room.placements) {
    auto it = ctx.library.find(p.photometry);
    if (it == ctx.library.end()) {
      throw Error(ErrorCode::UnknownPhotometryRef, "photometry '" + p.photometry + "' is not loaded");
    }
    out.push_back(
        {project::luminaire_for(ctx.project, room, it->second), p.x, p.y, p.mount_height, p.orientation_phi});
  }
  return out;
}

grid::IlluminanceGrid room_grid(const DesignContext& ctx, std::string_view name, double spacing) {
  const auto& room = room_or_throw(ctx.project, name);
  if (!room.geometry) throw Error(ErrorCode::MissingGeometry, "room '" + room.name + "' has no geometry");
  const auto placements = placements_for(ctx, room);
  return grid::compute_grid(*room.geometry, placements, spacing, ctx.project.k_dep);
}

std::vector<circuit::CircuitResult> size_circuits(const DesignContext& ctx) {
  std::vector<circuit::CircuitResult> out;
  out.reserve(ctx.project.circuits.size());
  for (const auto& c : ctx.project.circuits) out.push_back(circuit::size_circuit(c, ctx.electrical));
  return out;
}

}  // namespace luxforge::design
