#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "luxforge/cli.hpp"
#include "luxforge/design.hpp"
#include "luxforge/numeric_text.hpp"
#include "luxforge/report.hpp"
#include "test_support.hpp"

using namespace luxforge;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string duplex() { return testkit::duplex_path().string(); }

}  // namespace

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, cli::kExitOk);
  EXPECT_NE(v.out.find(LUXFORGE_VERSION), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"validate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"validate", "/nonexistent/p.json"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"grid", duplex()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"grid", duplex(), "--room", "Living type 1", "--spacing", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"grid", duplex(), "--room", "Living type 1", "--spacing", "-1"}).code, cli::kExitUsage);
}

TEST(Cli, ValidateDuplex) {
  const auto r = run({"validate", duplex()});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("ok: 23 rooms, 7 circuits"), std::string::npos) << r.out;
}

TEST(Cli, ValidateReportsErrors) {
  const auto dir = testkit::scratch_dir("cli_validate");
  auto p = project::load_project_file(testkit::duplex_path());
  p.photometry.clear();
  for (auto& room : p.rooms) room.placements.clear();
  p.rooms[0].dimension = true;
  write_text_file_atomic((dir / "bad.json").string(), project::save_project(p));
  const auto r = run({"validate", (dir / "bad.json").string()});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.out.find("error: [Hallway access] MissingGeometry"), std::string::npos) << r.out;
}

TEST(Cli, DimensionRoom) {
  const auto r = run({"dimension", duplex(), "--room", "Big room tip 2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), report::kRoomHeader);
  EXPECT_NE(r.out.find("\nBig room tip 2,LivingSpace,50.0000,20.1600,"), std::string::npos) << r.out;

  EXPECT_EQ(run({"dimension", duplex(), "--room", "Attic"}).code, cli::kExitFailure);
  EXPECT_EQ(run({"dimension", duplex(), "--room", "Porch"}).code, cli::kExitFailure);
}

TEST(Cli, DimensionAllListsDimensionedRooms) {
  const auto r = run({"dimension", duplex()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, GridToFile) {
  const auto dir = testkit::scratch_dir("cli_grid");
  const auto target = dir / "grid.csv";
  const auto r = run({"grid", duplex(), "--room", "Living type 1", "--spacing", "0.5", "--out", target.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto text = read_text_file(target.string());
  EXPECT_EQ(text.substr(0, 8), "x,y,lux\n");
  // 4.8 / 0.5 -> 10 cells, 4.2 / 0.5 -> 9 cells
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 10 * 9);
  EXPECT_FALSE(std::filesystem::exists(target.string() + ".tmp"));
  const auto ctx = design::load_context(testkit::duplex_path());
  EXPECT_EQ(text, grid::grid_csv(design::room_grid(ctx, "Living type 1", 0.5)));

  EXPECT_EQ(run({"grid", duplex(), "--room", "Porch"}).code, cli::kExitFailure);
  EXPECT_EQ(run({"grid", duplex(), "--room", "Living type 1", "--spacing", "9"}).code, cli::kExitFailure);
}

TEST(Cli, Circuits) {
  const auto r = run({"circuits", duplex()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), report::kCircuitHeader);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 8);
}

TEST(Cli, ReportMatchesGolden) {
  const auto first = run({"report", duplex()});
  const auto second = run({"report", duplex()});
  ASSERT_EQ(first.code, cli::kExitOk) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(first.out, read_text_file((testkit::test_dir() / "golden" / "duplex_report.csv").string()));
}

TEST(Cli, ReportOutIsAtomicAndIdentical) {
  const auto dir = testkit::scratch_dir("cli_report");
  const auto target = dir / "report.csv";
  write_text_file_atomic(target.string(), "stale\n");
  ASSERT_EQ(run({"report", duplex(), "--out", target.string()}).code, cli::kExitOk);
  EXPECT_EQ(read_text_file(target.string()), run({"report", duplex()}).out);
  EXPECT_FALSE(std::filesystem::exists(target.string() + ".tmp"));
}

TEST(Cli, NewProject) {
  const auto dir = testkit::scratch_dir("cli_new");
  const auto target = (dir / "house.json").string();
  auto r = run({"new", target});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto p = project::load_project_file(target);
  EXPECT_EQ(p.name, "house");
  EXPECT_TRUE(p.rooms.empty());
  EXPECT_EQ(run({"new", target}).code, cli::kExitFailure);
  EXPECT_EQ(run({"new", target, "--force", "--name", "Other"}).code, cli::kExitOk);
  EXPECT_EQ(project::load_project_file(target).name, "Other");

  EXPECT_EQ(run({"validate", target}).code, cli::kExitOk);
  r = run({"report", target});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out, std::string(report::kRoomHeader) + "\n");
}

TEST(Cli, MalformedProjectIsFailure) {
  const auto dir = testkit::scratch_dir("cli_malformed");
  write_text_file_atomic((dir / "p.json").string(), "{\"name\": 3}");
  const auto r = run({"validate", (dir / "p.json").string()});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("error: "), std::string::npos);
}
