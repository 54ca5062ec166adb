#include <gtest/gtest.h>

#include <random>

#include "luxforge/errors.hpp"
#include "luxforge/numeric_text.hpp"
#include "luxforge/project_model.hpp"
#include "test_support.hpp"

using namespace luxforge;
using namespace luxforge::project;

namespace {

std::string duplex_text() { return read_text_file(testkit::duplex_path().string()); }

Error load_error(const std::string& doc) {
  try {
    load_project(doc);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected a load failure";
  return Error(ErrorCode::Io, "none");
}

const char* kMinimal = R"({
  "name": "mini",
  "k_dep": 1.25,
  "default_phi_l": 550,
  "photometry": {"iso": "iso.ies"},
  "rooms": [
    {"id": 1, "label": "1", "name": "A", "category": "LivingSpace", "dimension": true,
     "geometry": {"A": 4, "B": 3, "H": 2.8, "h_u": 1.6, "h_a": 0.2},
     "reflectances": {"p_t": 0.5, "p_p": 0.5},
     "devices": {"lamps": 1, "monopolar_switches": 1, "bipolar_switches": 0, "staircase_switches": 0, "monophasic_sockets": 2},
     "luminaire": {"n": 1, "phi_l": null}, "utilization": null,
     "placements": [{"photometry": "iso", "x": 2, "y": 1.5, "mount_height": 1.0, "orientation_phi": 0}]}
  ],
  "circuits": []
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  if (pos == std::string::npos) ADD_FAILURE() << "missing " << from;
  else s.replace(pos, from.size(), to);
  return s;
}

}  // namespace

TEST(RequiredIlluminance, Table) {
  EXPECT_DOUBLE_EQ(required_illuminance(RoomCategory::LivingSpace), 50.0);
  EXPECT_DOUBLE_EQ(required_illuminance(RoomCategory::Hallway), 75.0);
  EXPECT_DOUBLE_EQ(required_illuminance(RoomCategory::MainSpace), 20.0);
  EXPECT_DOUBLE_EQ(required_illuminance(RoomCategory::AnnexOffice), 100.0);
  for (auto c : kAllCategories) EXPECT_EQ(category_from_string(to_string(c)), c);
  EXPECT_FALSE(category_from_string("Attic"));
}

TEST(LoadProject, Duplex) {
  const auto p = load_project(duplex_text());
  ASSERT_EQ(p.rooms.size(), 23u);
  EXPECT_EQ(p.rooms.front().name, "Hallway access");
  EXPECT_EQ(p.rooms.back().name, "Bedroom3 tip 2");
  for (std::size_t i = 0; i < p.rooms.size(); ++i) EXPECT_EQ(p.rooms[i].id, static_cast<int>(i + 1));
  const auto* living = p.find_room("Living type 1");
  ASSERT_NE(living, nullptr);
  ASSERT_TRUE(living->geometry);
  EXPECT_DOUBLE_EQ(living->geometry->length * living->geometry->width, 4.8 * 4.2);
  const auto* hall = p.find_room("Hallway1 level1");
  ASSERT_NE(hall, nullptr);
  ASSERT_TRUE(hall->geometry);
  EXPECT_NEAR(hall->geometry->length * hall->geometry->width, 9.28, 1e-12);
  EXPECT_EQ(p.find_room("Attic"), nullptr);
}

TEST(LoadProject, CanonicalRoundTrip) {
  const auto p = load_project(duplex_text());
  const auto text = save_project(p);
  EXPECT_EQ(load_project(text), p);
  EXPECT_EQ(save_project(load_project(text)), text);
  EXPECT_EQ(text, duplex_text());
}

TEST(LoadProject, RejectsDuplicateRoom) {
  auto p = load_project(kMinimal);
  p.rooms.push_back(p.rooms.front());
  p.rooms.back().id = 2;
  EXPECT_EQ(load_error(save_project(p)).code(), ErrorCode::DuplicateRoomName);
}

TEST(LoadProject, RejectsUnknownPhotometry) {
  EXPECT_EQ(load_error(replace(kMinimal, R"("photometry": "iso")", R"("photometry": "nope")")).code(),
            ErrorCode::UnknownPhotometryRef);
}

TEST(LoadProject, SchemaErrorsCarryPath) {
  auto e = load_error(replace(kMinimal, R"("utilization": null)", R"("utilization": null, "colour": 3)"));
  EXPECT_EQ(e.code(), ErrorCode::SchemaViolation);
  EXPECT_NE(std::string(e.what()).find("rooms[0]"), std::string::npos) << e.what();

  e = load_error(replace(kMinimal, R"("category": "LivingSpace")", R"("category": "Attic")"));
  EXPECT_EQ(e.code(), ErrorCode::SchemaViolation);
  EXPECT_NE(std::string(e.what()).find("category"), std::string::npos) << e.what();

  e = load_error(replace(kMinimal, R"("lamps": 1,)", R"("lamps": "one",)"));
  EXPECT_EQ(e.code(), ErrorCode::SchemaViolation);
  EXPECT_NE(std::string(e.what()).find("devices"), std::string::npos) << e.what();

  EXPECT_EQ(load_error("{not json").code(), ErrorCode::SchemaViolation);
  EXPECT_EQ(load_error("[]").code(), ErrorCode::SchemaViolation);
}

TEST(DeviceTotals, FirstThreeRows) {
  auto p = load_project(duplex_text());
  p.rooms.resize(3);
  EXPECT_EQ(device_totals(p).lamps, 5);
}

TEST(DeviceTotals, MatchesFrozenTally) {
  // tests/oracles/tally_devices.py
  const auto t = device_totals(load_project(duplex_text()));
  EXPECT_EQ(t.lamps, 43);
  EXPECT_EQ(t.monopolar_switches, 5);
  EXPECT_EQ(t.bipolar_switches, 17);
  EXPECT_EQ(t.staircase_switches, 15);
  EXPECT_EQ(t.monophasic_sockets, 36);
}

TEST(DeviceTotals, Additive) {
  const auto p = load_project(duplex_text());
  for (std::size_t cut = 0; cut <= p.rooms.size(); ++cut) {
    Project a = p, b = p;
    a.rooms.assign(p.rooms.begin(), p.rooms.begin() + static_cast<long>(cut));
    b.rooms.assign(p.rooms.begin() + static_cast<long>(cut), p.rooms.end());
    auto sum = device_totals(a);
    sum += device_totals(b);
    EXPECT_EQ(sum, device_totals(p));
  }
}

TEST(ValidateProject, DuplexIsClean) {
  const auto p = load_project(duplex_text());
  const auto lib = load_photometry_library(p, testkit::duplex_path().parent_path());
  EXPECT_FALSE(has_errors(validate_project(p, &lib)));
}

TEST(ValidateProject, Findings) {
  auto p = load_project(kMinimal);
  p.rooms[0].devices.lamps = 0;
  auto issues = validate_project(p);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, "NoLamps");
  EXPECT_EQ(issues[0].severity, Severity::Warning);
  EXPECT_EQ(issues[0].subject, "A");
  EXPECT_FALSE(has_errors(issues));

  p = load_project(kMinimal);
  p.rooms[0].geometry->suspension = 2.0;
  issues = validate_project(p);
  ASSERT_FALSE(issues.empty());
  EXPECT_EQ(issues[0].code, "GeometryContradiction");
  EXPECT_TRUE(has_errors(issues));

  p = load_project(kMinimal);
  p.rooms[0].placements[0].x = 9.0;
  issues = validate_project(p);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, "PlacementOutOfBounds");

  p = load_project(kMinimal);
  p.rooms[0].geometry.reset();
  issues = validate_project(p);
  // One for the dimensioning flag, one for the placements.
  ASSERT_EQ(issues.size(), 2u);
  EXPECT_EQ(issues[0].code, "MissingGeometry");
  EXPECT_EQ(issues[1].code, "MissingGeometry");
  p.rooms[0].placements.clear();
  p.rooms[0].dimension = false;
  EXPECT_TRUE(validate_project(p).empty());
}

TEST(ValidateProject, WarnsWhenGridFallsShort) {
  auto p = load_project(kMinimal);
  PhotometryLibrary lib;
  lib["iso"] = std::make_shared<const photometry::PhotometricDistribution>(photometry::isotropic(1.0));
  const auto issues = validate_project(p, &lib);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, "BelowRequiredIlluminance");
  EXPECT_EQ(issues[0].severity, Severity::Warning);

  lib["iso"] = std::make_shared<const photometry::PhotometricDistribution>(photometry::isotropic(1000.0));
  EXPECT_TRUE(validate_project(p, &lib).empty());
}

TEST(LoadProject, GeneratedRoundTrip) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 4);
  for (int trial = 0; trial < 60; ++trial) {
    Project p;
    p.name = "generated " + std::to_string(trial);
    p.k_dep = 1.0 + unit(rng);
    p.default_phi_l = 100 + unit(rng) * 2000;
    p.photometry["iso"] = "iso.ies";
    const int rooms = 1 + small(rng);
    for (int r = 0; r < rooms; ++r) {
      RoomSpec room;
      room.id = r + 1;
      room.label = unit(rng) < 0.5 ? std::to_string(r + 1) : "";
      room.name = "room \"" + std::to_string(r) + "\"";
      room.category = kAllCategories[small(rng) % 4];
      room.dimension = unit(rng) < 0.5;
      if (unit(rng) < 0.7) {
        room.geometry = lumen::RoomGeometry{1 + unit(rng) * 9, 1 + unit(rng) * 9, 2.5 + unit(rng), 0.8, unit(rng) * 0.5};
      }
      room.reflectances = {unit(rng), unit(rng)};
      room.devices = {small(rng), small(rng), small(rng), small(rng), small(rng)};
      room.lamps_per_luminaire = 1 + small(rng);
      if (unit(rng) < 0.5) room.lamp_flux = 100 + unit(rng) * 900;
      if (unit(rng) < 0.3) room.utilization = unit(rng);
      if (room.geometry && unit(rng) < 0.5) {
        room.placements.push_back({"iso", unit(rng), unit(rng), 0.5 + unit(rng), unit(rng) * 90});
      }
      p.rooms.push_back(room);
    }
    if (unit(rng) < 0.5) {
      circuit::CircuitSpec c;
      c.name = "C" + std::to_string(trial);
      c.phase = unit(rng) < 0.5 ? circuit::Phase::Single : circuit::Phase::Three;
      c.kind = unit(rng) < 0.5 ? circuit::CircuitKind::Lighting : circuit::CircuitKind::Power;
      c.cos_phi = 0.5 + unit(rng) * 0.5;
      c.length = 1 + unit(rng) * 40;
      c.loads = {circuit::ExplicitLoad{unit(rng) * 5000, "oven"}, circuit::SocketLoad{1 + small(rng)},
                 circuit::LightingLoad{1 + small(rng), 1, 550}};
      p.circuits.push_back(c);
    }
    const auto text = save_project(p);
    ASSERT_EQ(load_project(text), p) << text;
  }
}
