#include "luxforge/point_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "luxforge/errors.hpp"
#include "luxforge/numeric_text.hpp"

namespace luxforge::grid {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

int cells_along(double extent, double spacing) {
  return std::max(2, static_cast<int>(std::ceil(extent / spacing - 1e-9)));
}

}  // namespace

double direct_illuminance_at(PlanPoint point, std::span<const LuminairePlacement> placements,
                             double maintenance) {
  double sum = 0.0;
  for (const auto& p : placements) {
    if (!p.luminaire.distribution) continue;
    const double dx = point.x - p.x;
    const double dy = point.y - p.y;
    const double h = p.mount_height;
    const double d2 = dx * dx + dy * dy;
    const double r2 = h * h + d2;
    const double r = std::sqrt(r2);
    const double theta = std::atan2(std::sqrt(d2), h) * kRadToDeg;
    const double bearing = d2 > 0.0 ? std::atan2(dy, dx) * kRadToDeg : 0.0;
    const double cd = photometry::intensity_at(*p.luminaire.distribution, theta, bearing - p.orientation_phi);
    sum += cd * (h / r) / r2;
  }
  return sum / maintenance;
}

IlluminanceGrid compute_grid(const lumen::RoomGeometry& room, std::span<const LuminairePlacement> placements,
                             double spacing, double maintenance) {
  if (!(spacing > 0.0) || spacing > std::min(room.length, room.width)) {
    throw Error(ErrorCode::BadSpacing, "spacing must lie in (0, min(A,B)]");
  }
  if (!(maintenance >= 1.0)) throw Error(ErrorCode::NonPositiveDimension, "maintenance factor K must be >= 1");

  IlluminanceGrid g;
  g.nx = cells_along(room.length, spacing);
  g.ny = cells_along(room.width, spacing);
  g.spacing = spacing;
  g.dx = room.length / g.nx;
  g.dy = room.width / g.ny;
  g.plane_height = room.useful_plane_height;
  g.values.resize(static_cast<std::size_t>(g.nx) * g.ny);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      g.values[static_cast<std::size_t>(iy) * g.nx + ix] =
          direct_illuminance_at({g.x(ix), g.y(iy)}, placements, maintenance);
    }
  }
  return g;
}

GridStatistics grid_statistics(const IlluminanceGrid& grid) {
  if (grid.values.empty()) throw Error(ErrorCode::EmptyGrid, "grid has no points");
  GridStatistics s;
  auto [lo, hi] = std::minmax_element(grid.values.begin(), grid.values.end());
  s.min = *lo;
  s.max = *hi;
  double sum = 0.0;
  for (double v : grid.values) sum += v;
  s.avg = sum / static_cast<double>(grid.values.size());
  s.avg = std::clamp(s.avg, s.min, s.max);
  s.uniformity = s.avg > 0.0 ? s.min / s.avg : 0.0;
  return s;
}

std::vector<PlanPoint> suggest_layout(const lumen::RoomGeometry& room, int count) {
  if (count < 1) return {};
  int rows = static_cast<int>(std::sqrt(static_cast<double>(count)));
  while (rows > 1 && count % rows != 0) --rows;
  const int cols = count / rows;

  const bool long_along_a = room.length >= room.width;
  const int along_a = long_along_a ? cols : rows;
  const int along_b = long_along_a ? rows : cols;

  std::vector<PlanPoint> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < along_b; ++j) {
    for (int i = 0; i < along_a; ++i) {
      points.push_back({(i + 0.5) * room.length / along_a, (j + 0.5) * room.width / along_b});
    }
  }
  return points;
}

std::string grid_csv(const IlluminanceGrid& grid) {
  std::string out = "x,y,lux\n";
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      out += format_fixed(grid.x(ix), 6);
      out += ',';
      out += format_fixed(grid.y(iy), 6);
      out += ',';
      out += format_fixed(grid.at(ix, iy), 6);
      out += '\n';
    }
  }
  return out;
}

}  // namespace luxforge::grid
