#pragma once

#include <optional>
#include <string>
#include <vector>

#include "luxforge/design.hpp"

namespace luxforge::report {

struct ReportRow {
  std::string room;
  std::string category;
  double required_e = 0.0;
  std::optional<lumen::DimensioningResult> dimensioning;  // empty when the room has no usable geometry
  std::optional<grid::GridStatistics> grid;               // present when the room has placements
  bool compliance = false;  // achieved_e >= required_e
};

inline constexpr const char* kRoomHeader =
    "room,category,required_e,s_u,n_c,u,achieved_e,grid_min,grid_avg,grid_max,compliance";
inline constexpr const char* kCircuitHeader =
    "circuit,phase,kind,length_m,load_w,current_a,conductor,cross_section_mm2,ampacity_a,"
    "voltage_drop_pct,drop_limit_pct,drop_ok";

ReportRow report_row(const design::DesignContext& ctx, const project::RoomSpec& room);

std::string format_row(const ReportRow& row);
std::string format_circuit(const circuit::CircuitSpec& spec, const circuit::CircuitResult& result);

/// Header plus one row per room in project order; when the project has
/// circuits, a blank line and the circuit section follow.
std::string project_report(const design::DesignContext& ctx);

std::string rooms_csv(const std::vector<ReportRow>& rows);
std::string circuits_csv(const design::DesignContext& ctx);

}  // namespace luxforge::report
