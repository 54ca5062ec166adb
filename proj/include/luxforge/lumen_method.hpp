#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "luxforge/photometry.hpp"

namespace luxforge::lumen {

inline constexpr double kDefaultUsefulPlaneHeight = 1.6;  // m, eye level
inline constexpr double kDefaultDepreciation = 1.25;
inline constexpr double kDefaultLampFlux = 550.0;  // lm

struct RoomGeometry {
  double length = 0.0;  // A, m
  double width = 0.0;   // B, m
  double height = 0.0;  // H, m
  double useful_plane_height = kDefaultUsefulPlaneHeight;  // h_u, m
  double suspension = 0.0;                                 // h_a, drop from ceiling, m

  bool operator==(const RoomGeometry&) const = default;
};

struct Reflectances {
  double ceiling = 0.5;  // p_t
  double walls = 0.5;    // p_p

  bool operator==(const Reflectances&) const = default;
};

struct LumenMethodInput {
  RoomGeometry geometry;
  Reflectances reflectances;
  double required_illuminance = 0.0;  // E_med, lx
  double depreciation = kDefaultDepreciation;  // K
  photometry::Luminaire luminaire;
  // Bypasses the table lookup when set.
  std::optional<double> utilization_override;
};

struct DimensioningResult {
  int luminaire_count = 0;      // N_c
  double utilization = 0.0;     // u
  double useful_area = 0.0;     // S_u, m²
  double mounting_height = 0.0; // h above the useful plane, m
  double room_index = 0.0;
  double total_flux = 0.0;      // Φ_t, lm
  double useful_flux = 0.0;     // Φ_u, lm
  double achieved_illuminance = 0.0;  // lx
};

/// Throws NonPositiveDimension or GeometryContradiction.
void validate(const RoomGeometry& g);

double useful_area(double length, double width);
double mounting_height(const RoomGeometry& g);
double room_index(double length, double width, double mounting_height);
double utilization_from_flux(double useful_flux, double total_flux);
double achieved_illuminance(int luminaire_count, const photometry::Luminaire& luminaire,
                            double utilization, double useful_area, double depreciation);

/// True when `achieved` meets `required`, allowing for rounding in the last
/// couple of ulps so that exact divisions are not bumped to the next count.
bool meets_requirement(double achieved, double required);

/// Coefficient-of-utilization table indexed by room index (rows) and by a
/// (ceiling, wall) reflectance pair (columns).
///
/// Columns are ordered by combined reflectance p_t + p_p and interpolated
/// linearly along that axis; rows are interpolated linearly in room index.
/// Lookups outside either axis clamp to the nearest row or column.
class CuTable {
 public:
  struct Column {
    Reflectances reflectances;
    std::vector<double> values;  // one per row
  };

  CuTable(std::vector<double> room_indices, std::vector<Column> columns, std::string fingerprint = {});

  static CuTable parse(std::string_view text);
  static CuTable load(const std::string& path);

  /// The committed table, or the file named by LUXFORGE_CU_TABLE when set.
  static const CuTable& standard();
  static std::string standard_path();

  double lookup(double room_index, const Reflectances& r) const;

  const std::vector<double>& room_indices() const { return room_indices_; }
  const std::vector<Column>& columns() const { return columns_; }
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::vector<double> room_indices_;
  std::vector<Column> columns_;
  std::string fingerprint_;
};

double utilization_coefficient(double room_index, const Reflectances& r,
                               const CuTable& table = CuTable::standard());

DimensioningResult dimension_luminaires(const LumenMethodInput& input,
                                        const CuTable& table = CuTable::standard());

}  // namespace luxforge::lumen
