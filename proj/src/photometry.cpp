#include "luxforge/photometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "luxforge/errors.hpp"
#include "luxforge/numeric_text.hpp"

namespace luxforge::photometry {

namespace {

constexpr double kFeetToMeters = 0.3048;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto pos = text.find('\n');
    auto line = text.substr(0, pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> tokenize(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ','; };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_sep(text[i])) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

double number(std::string_view token, const char* field) {
  auto v = parse_double(token);
  if (!v) {
    throw Error(ErrorCode::MalformedPhotometry,
                std::string(field) + ": not a number: '" + std::string(token) + "'");
  }
  return *v;
}

int whole(std::string_view token, const char* field) {
  double v = number(token, field);
  if (v != std::floor(v) || v < 0 || v > 1e6) {
    throw Error(ErrorCode::MalformedPhotometry, std::string(field) + ": expected a non-negative integer");
  }
  return static_cast<int>(v);
}

void check_ascending(const std::vector<double>& angles, double lo, double hi, const char* which) {
  if (angles.empty()) throw Error(ErrorCode::BadCount, std::string(which) + " angle list is empty");
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (i > 0 && !(angles[i] > angles[i - 1])) {
      throw Error(ErrorCode::NonAscendingAngles, std::string(which) + " angles must be strictly ascending");
    }
  }
  if (angles.front() < lo || angles.back() > hi) {
    throw Error(ErrorCode::MalformedPhotometry, std::string(which) + " angles outside their range");
  }
}

struct Bracket {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double t = 0.0;
};

// Caller guarantees angles.front() <= x <= angles.back().
Bracket bracket(const std::vector<double>& angles, double x) {
  if (angles.size() == 1) return {};
  auto it = std::upper_bound(angles.begin(), angles.end(), x);
  if (it == angles.end()) return {angles.size() - 1, angles.size() - 1, 0.0};
  std::size_t hi = static_cast<std::size_t>(it - angles.begin());
  std::size_t lo = hi - 1;
  double t = (x - angles[lo]) / (angles[hi] - angles[lo]);
  return {lo, hi, t};
}

double wrap360(double phi) {
  double p = std::fmod(phi, 360.0);
  if (p < 0) p += 360.0;
  return p;
}

// Maps an arbitrary plan angle onto the tabulated horizontal range using the
// LM-63 symmetry conventions for partial tables.
Bracket horizontal_bracket(const std::vector<double>& h, double phi) {
  const double front = h.front();
  const double back = h.back();
  double p = wrap360(phi);

  if (front == 0.0 && back == 360.0) return bracket(h, p);
  if (front == 0.0 && back > 180.0) {
    // Full circle tabulated without the closing 360 plane: wrap onto the first.
    if (p > back) return {h.size() - 1, 0, (p - back) / (360.0 - back)};
    return bracket(h, p);
  }
  if (front == 0.0 && back == 90.0) {
    if (p > 270.0) p = 360.0 - p;
    else if (p > 180.0) p = p - 180.0;
    else if (p > 90.0) p = 180.0 - p;
  } else if (front == 0.0 && back == 180.0) {
    if (p > 180.0) p = 360.0 - p;
  } else if (front == 90.0 && back == 270.0) {
    if (p < 90.0) p = 180.0 - p;
    else if (p > 270.0) p = 540.0 - p;
  } else if (p > 180.0 && back <= 180.0) {
    p = 360.0 - p;
  }
  p = std::clamp(p, front, back);
  return bracket(h, p);
}

double lerp(double a, double b, double t) { return a + (b - a) * t; }

}  // namespace

void validate(const PhotometricDistribution& d) {
  check_ascending(d.vertical_angles, 0.0, 180.0, "vertical");
  check_ascending(d.horizontal_angles, 0.0, 360.0, "horizontal");
  if (d.candela.size() != d.horizontal_angles.size()) {
    throw Error(ErrorCode::BadCount, "candela block count differs from horizontal angle count");
  }
  for (const auto& row : d.candela) {
    if (row.size() != d.vertical_angles.size()) {
      throw Error(ErrorCode::BadCount, "candela row length differs from vertical angle count");
    }
    for (double cd : row) {
      if (!std::isfinite(cd)) throw Error(ErrorCode::MalformedPhotometry, "non-finite candela value");
      if (cd < 0) throw Error(ErrorCode::NegativeCandela, "candela values must be >= 0");
    }
  }
  if (!(d.multiplier > 0) || !std::isfinite(d.multiplier)) {
    throw Error(ErrorCode::MalformedPhotometry, "multiplier must be > 0");
  }
  if (d.lamp_count < 1) throw Error(ErrorCode::MalformedPhotometry, "lamp count must be >= 1");
  if (d.rated_lumens_per_lamp < 0) throw Error(ErrorCode::MalformedPhotometry, "rated lumens must be >= 0");
  if (d.input_watts < 0) throw Error(ErrorCode::MalformedPhotometry, "input watts must be >= 0");
  if (d.dimensions.width < 0 || d.dimensions.length < 0 || d.dimensions.height < 0) {
    throw Error(ErrorCode::MalformedPhotometry, "luminous dimensions must be >= 0");
  }
}

PhotometricDistribution parse_photometry(std::string_view text) {
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
      static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF) {
    text.remove_prefix(3);
  }

  PhotometricDistribution d;
  auto lines = split_lines(text);
  std::size_t tilt_line = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto t = trim(lines[i]);
    if (t.starts_with("TILT=")) {
      if (t != "TILT=NONE") {
        throw Error(ErrorCode::MissingTilt, "only TILT=NONE is supported, found '" + std::string(t) + "'");
      }
      tilt_line = i;
      break;
    }
    d.metadata.emplace_back(lines[i]);
  }
  if (tilt_line == lines.size()) throw Error(ErrorCode::MissingTilt, "no TILT=NONE line");

  std::string body;
  for (std::size_t i = tilt_line + 1; i < lines.size(); ++i) {
    body.append(lines[i]);
    body.push_back('\n');
  }
  auto tokens = tokenize(body);
  if (tokens.size() < 13) throw Error(ErrorCode::BadCount, "truncated header: expected 13 numeric fields");

  d.lamp_count = whole(tokens[0], "lamp_count");
  d.rated_lumens_per_lamp = number(tokens[1], "rated_lumens_per_lamp");
  d.multiplier = number(tokens[2], "multiplier");
  const int n_vertical = whole(tokens[3], "n_vertical");
  const int n_horizontal = whole(tokens[4], "n_horizontal");
  const int photometric_type = whole(tokens[5], "photometric_type");
  const int units_type = whole(tokens[6], "units_type");
  d.dimensions = {number(tokens[7], "width"), number(tokens[8], "length"), number(tokens[9], "height")};
  d.ballast_factor = number(tokens[10], "ballast_factor");
  d.reserved = number(tokens[11], "reserved");
  d.input_watts = number(tokens[12], "input_watts");

  if (photometric_type != 1) {
    throw Error(ErrorCode::UnsupportedPhotometricType,
                "photometric type " + std::to_string(photometric_type) + " (only type C = 1)");
  }
  if (units_type == 1) {
    d.dimensions.width *= kFeetToMeters;
    d.dimensions.length *= kFeetToMeters;
    d.dimensions.height *= kFeetToMeters;
  } else if (units_type != 2) {
    throw Error(ErrorCode::MalformedPhotometry, "units_type must be 1 (feet) or 2 (meters)");
  }
  if (n_vertical < 1 || n_horizontal < 1) throw Error(ErrorCode::BadCount, "angle counts must be >= 1");

  const auto nv = static_cast<std::size_t>(n_vertical);
  const auto nh = static_cast<std::size_t>(n_horizontal);
  const std::size_t expected = 13 + nv + nh + nv * nh;
  if (tokens.size() != expected) {
    throw Error(ErrorCode::BadCount, "expected " + std::to_string(expected - 13) +
                                         " angle/candela values, found " + std::to_string(tokens.size() - 13));
  }

  std::size_t k = 13;
  d.vertical_angles.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) d.vertical_angles.push_back(number(tokens[k++], "vertical angle"));
  d.horizontal_angles.reserve(nh);
  for (std::size_t i = 0; i < nh; ++i) d.horizontal_angles.push_back(number(tokens[k++], "horizontal angle"));
  d.candela.assign(nh, std::vector<double>(nv));
  for (std::size_t h = 0; h < nh; ++h) {
    for (std::size_t v = 0; v < nv; ++v) d.candela[h][v] = number(tokens[k++], "candela");
  }

  validate(d);
  return d;
}

PhotometricDistribution load_photometry(const std::string& path) {
  return parse_photometry(read_text_file(path));
}

std::string serialize_photometry(const PhotometricDistribution& d) {
  std::ostringstream out;
  auto join = [&out](const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << ' ';
      out << format_shortest(values[i]);
    }
    out << '\n';
  };

  for (const auto& line : d.metadata) out << line << '\n';
  out << "TILT=NONE\n";
  out << d.lamp_count << ' ' << format_shortest(d.rated_lumens_per_lamp) << ' '
      << format_shortest(d.multiplier) << ' ' << d.vertical_angles.size() << ' '
      << d.horizontal_angles.size() << " 1 2 " << format_shortest(d.dimensions.width) << ' '
      << format_shortest(d.dimensions.length) << ' ' << format_shortest(d.dimensions.height) << '\n';
  out << format_shortest(d.ballast_factor) << ' ' << format_shortest(d.reserved) << ' '
      << format_shortest(d.input_watts) << '\n';
  join(d.vertical_angles);
  join(d.horizontal_angles);
  for (const auto& row : d.candela) join(row);
  return out.str();
}

double intensity_at(const PhotometricDistribution& d, double theta_deg, double phi_deg) {
  const auto& v = d.vertical_angles;
  const double theta = std::clamp(theta_deg, v.front(), v.back());
  const Bracket vb = bracket(v, theta);

  auto along_vertical = [&](std::size_t h) {
    const auto& row = d.candela[h];
    return lerp(row[vb.lo], row[vb.hi], vb.t);
  };

  if (d.axially_symmetric()) return d.multiplier * along_vertical(0);

  const Bracket hb = horizontal_bracket(d.horizontal_angles, phi_deg);
  return d.multiplier * lerp(along_vertical(hb.lo), along_vertical(hb.hi), hb.t);
}

double total_flux(const PhotometricDistribution& d, double resolution_deg) {
  if (!(resolution_deg > 0.0) || resolution_deg > 10.0) {
    throw Error(ErrorCode::BadResolution, "resolution must be in (0, 10] degrees");
  }
  constexpr double kPi = std::numbers::pi;
  const auto n_theta = static_cast<int>(std::ceil(180.0 / resolution_deg - 1e-9));
  const double d_theta = 180.0 / n_theta;
  const double d_theta_rad = kPi / n_theta;

  double sum = 0.0;
  if (d.axially_symmetric()) {
    for (int i = 0; i < n_theta; ++i) {
      const double theta = (i + 0.5) * d_theta;
      sum += intensity_at(d, theta, 0.0) * std::sin(theta * kPi / 180.0);
    }
    return sum * d_theta_rad * 2.0 * kPi;
  }

  const auto n_phi = static_cast<int>(std::ceil(360.0 / resolution_deg - 1e-9));
  const double d_phi = 360.0 / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = (i + 0.5) * d_theta;
    const double s = std::sin(theta * kPi / 180.0);
    double ring = 0.0;
    for (int j = 0; j < n_phi; ++j) ring += intensity_at(d, theta, (j + 0.5) * d_phi);
    sum += ring * s;
  }
  return sum * d_theta_rad * (2.0 * kPi / n_phi);
}

PhotometricDistribution scaled(PhotometricDistribution d, double factor) {
  d.multiplier *= factor;
  return d;
}

PhotometricDistribution isotropic(double candela) {
  PhotometricDistribution d;
  d.vertical_angles = {0.0, 90.0, 180.0};
  d.horizontal_angles = {0.0};
  d.candela = {{candela, candela, candela}};
  d.rated_lumens_per_lamp = 4.0 * std::numbers::pi * candela;
  return d;
}

}  // namespace luxforge::photometry
