#include "luxforge/lumen_method.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "luxforge/errors.hpp"
#include "luxforge/numeric_text.hpp"

namespace luxforge::lumen {

namespace {

struct Bracket {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double t = 0.0;
};

Bracket clamped_bracket(const std::vector<double>& axis, double x) {
  if (axis.size() == 1 || x <= axis.front()) return {0, 0, 0.0};
  if (x >= axis.back()) return {axis.size() - 1, axis.size() - 1, 0.0};
  auto hi = static_cast<std::size_t>(std::upper_bound(axis.begin(), axis.end(), x) - axis.begin());
  return {hi - 1, hi, (x - axis[hi - 1]) / (axis[hi] - axis[hi - 1])};
}

double combined(const Reflectances& r) { return r.ceiling + r.walls; }

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::NonPositiveDimension, std::string(what) + " must be > 0");
  }
}

}  // namespace

void validate(const RoomGeometry& g) {
  require_positive(g.length, "room length A");
  require_positive(g.width, "room width B");
  require_positive(g.height, "room height H");
  if (g.useful_plane_height < 0 || g.suspension < 0) {
    throw Error(ErrorCode::NonPositiveDimension, "h_u and h_a must be >= 0");
  }
  if (g.useful_plane_height + g.suspension >= g.height) {
    throw Error(ErrorCode::GeometryContradiction, "h_u + h_a must be below the room height H");
  }
}

double useful_area(double length, double width) {
  require_positive(length, "A");
  require_positive(width, "B");
  return length * width;
}

double mounting_height(const RoomGeometry& g) {
  validate(g);
  return g.height - (g.useful_plane_height + g.suspension);
}

double room_index(double length, double width, double mounting_height) {
  require_positive(length, "A");
  require_positive(width, "B");
  require_positive(mounting_height, "h");
  return length * width / (mounting_height * (length + width));
}

double utilization_from_flux(double useful_flux, double total_flux) {
  if (!(total_flux > 0.0)) throw Error(ErrorCode::FluxDomain, "total flux must be > 0");
  if (useful_flux < 0.0 || useful_flux > total_flux) {
    throw Error(ErrorCode::FluxDomain, "useful flux must lie in [0, total flux]");
  }
  return useful_flux / total_flux;
}

double achieved_illuminance(int luminaire_count, const photometry::Luminaire& luminaire,
                            double utilization, double useful_area, double depreciation) {
  if (!(useful_area > 0.0)) throw Error(ErrorCode::NonPositiveArea, "useful area must be > 0");
  require_positive(depreciation, "K");
  return luminaire_count * luminaire.lamps * luminaire.lamp_flux * utilization / (useful_area * depreciation);
}

bool meets_requirement(double achieved, double required) {
  return achieved >= required - 1e-12 * std::abs(required);
}

CuTable::CuTable(std::vector<double> room_indices, std::vector<Column> columns, std::string fingerprint)
    : room_indices_(std::move(room_indices)), columns_(std::move(columns)), fingerprint_(std::move(fingerprint)) {
  if (room_indices_.empty() || columns_.empty()) throw Error(ErrorCode::BadCuTable, "table is empty");
  for (std::size_t i = 0; i < room_indices_.size(); ++i) {
    if (!(room_indices_[i] > 0.0) || (i > 0 && !(room_indices_[i] > room_indices_[i - 1]))) {
      throw Error(ErrorCode::BadCuTable, "room indices must be positive and strictly ascending");
    }
  }
  std::stable_sort(columns_.begin(), columns_.end(),
                   [](const Column& a, const Column& b) { return combined(a.reflectances) < combined(b.reflectances); });
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const auto& col = columns_[c];
    if (col.values.size() != room_indices_.size()) {
      throw Error(ErrorCode::BadCuTable, "column length differs from row count");
    }
    const auto& r = col.reflectances;
    if (r.ceiling < 0 || r.ceiling > 1 || r.walls < 0 || r.walls > 1) {
      throw Error(ErrorCode::BadCuTable, "reflectances must lie in [0,1]");
    }
    if (c > 0 && !(combined(r) > combined(columns_[c - 1].reflectances))) {
      throw Error(ErrorCode::BadCuTable, "columns must have distinct combined reflectance");
    }
    for (double u : col.values) {
      if (!(u > 0.0) || u > 1.0) throw Error(ErrorCode::BadCuTable, "utilization values must lie in (0,1]");
    }
  }
}

CuTable CuTable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Reflectances> header;
  bool have_header = false;
  std::vector<double> rows;
  std::vector<std::vector<double>> cells;

  auto num = [](const std::string& token) {
    auto v = parse_double(token);
    if (!v) throw Error(ErrorCode::BadCuTable, "not a number: '" + token + "'");
    return *v;
  };

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string token;
    if (!have_header) {
      ls >> token;
      if (token != "room_index") throw Error(ErrorCode::BadCuTable, "header must start with room_index");
      while (ls >> token) {
        auto slash = token.find('/');
        if (slash == std::string::npos) throw Error(ErrorCode::BadCuTable, "column header must be ceiling/wall");
        header.push_back({num(token.substr(0, slash)), num(token.substr(slash + 1))});
      }
      have_header = true;
      continue;
    }
    ls >> token;
    rows.push_back(num(token));
    std::vector<double> row;
    while (ls >> token) row.push_back(num(token));
    if (row.size() != header.size()) throw Error(ErrorCode::BadCuTable, "row width differs from header");
    cells.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorCode::BadCuTable, "missing header");

  std::vector<Column> columns;
  for (std::size_t c = 0; c < header.size(); ++c) {
    Column col{header[c], {}};
    for (const auto& row : cells) col.values.push_back(row[c]);
    columns.push_back(std::move(col));
  }
  return CuTable(std::move(rows), std::move(columns), luxforge::fingerprint(text));
}

CuTable CuTable::load(const std::string& path) { return parse(read_text_file(path)); }

std::string CuTable::standard_path() {
  if (const char* env = std::getenv("LUXFORGE_CU_TABLE"); env != nullptr && *env != '\0') return env;
  return std::string(LUXFORGE_DATA_DIR) + "/cu_table.txt";
}

const CuTable& CuTable::standard() {
  static const CuTable table = load(standard_path());
  return table;
}

double CuTable::lookup(double index, const Reflectances& r) const {
  if (!(index > 0.0)) throw Error(ErrorCode::NonPositiveIndex, "room index must be > 0");
  const Bracket rb = clamped_bracket(room_indices_, index);

  std::vector<double> axis;
  axis.reserve(columns_.size());
  for (const auto& col : columns_) axis.push_back(combined(col.reflectances));
  const Bracket cb = clamped_bracket(axis, combined(r));

  auto at_row = [&](const Column& col) {
    return col.values[rb.lo] + (col.values[rb.hi] - col.values[rb.lo]) * rb.t;
  };
  const double lo = at_row(columns_[cb.lo]);
  const double hi = at_row(columns_[cb.hi]);
  return lo + (hi - lo) * cb.t;
}

double utilization_coefficient(double room_index, const Reflectances& r, const CuTable& table) {
  return table.lookup(room_index, r);
}

DimensioningResult dimension_luminaires(const LumenMethodInput& input, const CuTable& table) {
  const auto& g = input.geometry;
  const auto& lum = input.luminaire;

  DimensioningResult res;
  res.mounting_height = mounting_height(g);
  res.useful_area = useful_area(g.length, g.width);
  res.room_index = room_index(g.length, g.width, res.mounting_height);

  if (lum.lamps < 1 || !(lum.lamp_flux > 0.0) || !(lum.lamps * lum.lamp_flux > 0.0)) {
    throw Error(ErrorCode::DegenerateLuminaire, "luminaire must have n >= 1 lamps of positive flux");
  }
  require_positive(input.required_illuminance, "E_med");
  if (!(input.depreciation >= 1.0)) throw Error(ErrorCode::NonPositiveDimension, "K must be >= 1");

  if (input.utilization_override) {
    const double u = *input.utilization_override;
    if (!(u > 0.0) || u > 1.0) throw Error(ErrorCode::FluxDomain, "forced utilization must lie in (0,1]");
    res.utilization = u;
  } else {
    res.utilization = table.lookup(res.room_index, input.reflectances);
  }

  auto achieved = [&](int n) {
    return achieved_illuminance(n, lum, res.utilization, res.useful_area, input.depreciation);
  };
  const double quotient = input.required_illuminance * res.useful_area * input.depreciation /
                          (res.utilization * lum.lamps * lum.lamp_flux);
  if (!(quotient < static_cast<double>(std::numeric_limits<int>::max() / 2))) {
    throw Error(ErrorCode::DegenerateLuminaire, "luminaire count out of range");
  }
  int n = std::max(1, static_cast<int>(std::ceil(quotient)));
  // The closed form decides; these loops only settle last-ulp rounding.
  while (n > 1 && meets_requirement(achieved(n - 1), input.required_illuminance)) --n;
  while (!meets_requirement(achieved(n), input.required_illuminance)) ++n;

  res.luminaire_count = n;
  res.total_flux = static_cast<double>(n) * lum.lamps * lum.lamp_flux;
  res.useful_flux = res.utilization * res.total_flux;
  res.achieved_illuminance = achieved(n);
  return res;
}

}  // namespace luxforge::lumen
