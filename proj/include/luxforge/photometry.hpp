#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace luxforge::photometry {

struct LuminousDimensions {
  double width = 0.0;   // m
  double length = 0.0;  // m
  double height = 0.0;  // m

  bool operator==(const LuminousDimensions&) const = default;
};

/// Type C intensity table read from an LM-63 style file.
///
/// `candela[h][v]` is the intensity at horizontal angle `horizontal_angles[h]`
/// and vertical angle `vertical_angles[v]`, before `multiplier` is applied.
/// A single horizontal angle means the distribution is axially symmetric.
struct PhotometricDistribution {
  std::vector<std::string> metadata;  // lines preceding TILT=NONE, verbatim
  int lamp_count = 1;
  double rated_lumens_per_lamp = 0.0;
  double multiplier = 1.0;
  LuminousDimensions dimensions;
  double ballast_factor = 1.0;
  double reserved = 1.0;
  double input_watts = 0.0;
  std::vector<double> vertical_angles;    // degrees, ascending in [0,180]
  std::vector<double> horizontal_angles;  // degrees, ascending in [0,360]
  std::vector<std::vector<double>> candela;

  bool axially_symmetric() const { return horizontal_angles.size() == 1; }

  bool operator==(const PhotometricDistribution&) const = default;
};

/// Light-source parameters used by the lumen method. The distribution is only
/// needed for point calculations and may be null.
struct Luminaire {
  std::shared_ptr<const PhotometricDistribution> distribution;
  int lamps = 1;             // n
  double lamp_flux = 550.0;  // lm per lamp
};

/// Throws Error with the offending invariant's code.
void validate(const PhotometricDistribution& d);

PhotometricDistribution parse_photometry(std::string_view text);
PhotometricDistribution load_photometry(const std::string& path);
std::string serialize_photometry(const PhotometricDistribution& d);

/// Bilinear lookup with clamping in theta and symmetry folding in phi.
double intensity_at(const PhotometricDistribution& d, double theta_deg, double phi_deg);

/// Midpoint-rule sphere integral of intensity_at, in lumens.
double total_flux(const PhotometricDistribution& d, double resolution_deg = 1.0);

PhotometricDistribution scaled(PhotometricDistribution d, double factor);

/// Convenience constructor for a distribution that is constant in all directions.
PhotometricDistribution isotropic(double candela);

}  // namespace luxforge::photometry
