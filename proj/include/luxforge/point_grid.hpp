#pragma once

#include <span>
#include <string>
#include <vector>

#include "luxforge/lumen_method.hpp"
#include "luxforge/photometry.hpp"

namespace luxforge::grid {

inline constexpr double kDefaultSpacing = 0.25;  // m

/// A point luminaire aimed at nadir. `mount_height` is measured from the
/// useful plane, not from the floor.
struct LuminairePlacement {
  photometry::Luminaire luminaire;
  double x = 0.0;
  double y = 0.0;
  double mount_height = 0.0;
  double orientation_phi = 0.0;  // degrees about the vertical axis
};

struct PlanPoint {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const PlanPoint&) const = default;
};

/// Illuminance sampled at cell centres of an nx × ny partition of the room.
struct IlluminanceGrid {
  int nx = 0;
  int ny = 0;
  double spacing = 0.0;  // requested lattice spacing
  double dx = 0.0;       // actual cell size along A
  double dy = 0.0;       // actual cell size along B
  double plane_height = 0.0;
  std::vector<double> values;  // row-major, index = iy * nx + ix

  double x(int ix) const { return (ix + 0.5) * dx; }
  double y(int iy) const { return (iy + 0.5) * dy; }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
};

struct GridStatistics {
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
  double uniformity = 0.0;
};

double direct_illuminance_at(PlanPoint point, std::span<const LuminairePlacement> placements,
                             double maintenance = 1.0);

IlluminanceGrid compute_grid(const lumen::RoomGeometry& room, std::span<const LuminairePlacement> placements,
                             double spacing = kDefaultSpacing, double maintenance = 1.0);

GridStatistics grid_statistics(const IlluminanceGrid& grid);

/// Rows × columns factorisation of `count` closest to square, with the longer
/// run laid along the longer side of the room.
std::vector<PlanPoint> suggest_layout(const lumen::RoomGeometry& room, int count);

/// "x,y,lux" with six decimals, y-major like the storage order.
std::string grid_csv(const IlluminanceGrid& grid);

}  // namespace luxforge::grid
