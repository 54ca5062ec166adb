#include "luxforge/report.hpp"

#include <algorithm>

#include "luxforge/errors.hpp"
#include "luxforge/numeric_text.hpp"

namespace luxforge::report {

namespace {

std::string f4(double v) { return format_fixed(v, 4); }

}  // namespace

ReportRow report_row(const design::DesignContext& ctx, const project::RoomSpec& room) {
  ReportRow row;
  row.room = room.name;
  row.category = std::string(project::to_string(room.category));
  row.required_e = project::required_illuminance(room.category);
  if (!room.geometry) return row;

  try {
    row.dimensioning = lumen::dimension_luminaires(design::lumen_input(ctx.project, room), *ctx.cu_table);
  } catch (const Error&) {
    return row;
  }
  row.compliance = lumen::meets_requirement(row.dimensioning->achieved_illuminance, row.required_e);

  if (!room.placements.empty()) {
    const auto& g = *room.geometry;
    const double spacing = std::min({grid::kDefaultSpacing, g.length, g.width});
    const auto placements = design::placements_for(ctx, room);
    row.grid = grid::grid_statistics(grid::compute_grid(g, placements, spacing, ctx.project.k_dep));
  }
  return row;
}

std::string format_row(const ReportRow& row) {
  std::string out = csv_escape(row.room) + ',' + csv_escape(row.category) + ',' + f4(row.required_e) + ',';
  if (row.dimensioning) {
    const auto& d = *row.dimensioning;
    out += f4(d.useful_area) + ',' + std::to_string(d.luminaire_count) + ',' + f4(d.utilization) + ',' +
           f4(d.achieved_illuminance) + ',';
  } else {
    out += ",,,,";
  }
  if (row.grid) {
    out += f4(row.grid->min) + ',' + f4(row.grid->avg) + ',' + f4(row.grid->max) + ',';
  } else {
    out += ",,,";
  }
  out += row.compliance ? "true" : "false";
  return out;
}

std::string format_circuit(const circuit::CircuitSpec& spec, const circuit::CircuitResult& r) {
  return csv_escape(r.name) + ',' + std::string(circuit::to_string(spec.phase)) + ',' +
         std::string(circuit::to_string(spec.kind)) + ',' + f4(spec.length) + ',' + f4(r.load_w) + ',' +
         f4(r.current_a) + ',' + csv_escape(r.conductor.designation) + ',' + f4(r.conductor.cross_section) + ',' +
         f4(r.conductor.ampacity) + ',' + f4(r.voltage_drop_pct) + ',' + f4(r.drop_limit_pct) + ',' +
         (r.drop_ok ? "true" : "false");
}

std::string rooms_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kRoomHeader) + '\n';
  for (const auto& row : rows) out += format_row(row) + '\n';
  return out;
}

std::string circuits_csv(const design::DesignContext& ctx) {
  std::string out = std::string(kCircuitHeader) + '\n';
  const auto results = design::size_circuits(ctx);
  for (std::size_t i = 0; i < results.size(); ++i) {
    out += format_circuit(ctx.project.circuits[i], results[i]) + '\n';
  }
  return out;
}

std::string project_report(const design::DesignContext& ctx) {
  std::vector<ReportRow> rows;
  rows.reserve(ctx.project.rooms.size());
  for (const auto& room : ctx.project.rooms) rows.push_back(report_row(ctx, room));
  std::string out = rooms_csv(rows);
  if (!ctx.project.circuits.empty()) out += '\n' + circuits_csv(ctx);
  return out;
}

}  // namespace luxforge::report
