#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "luxforge/circuit_sizing.hpp"
#include "luxforge/design.hpp"
#include "luxforge/errors.hpp"
#include "test_support.hpp"

using namespace luxforge;
using namespace luxforge::circuit;

namespace {

CircuitSpec single(double watts, double length = 10.0, double cos_phi = 1.0) {
  return {"C", Phase::Single, CircuitKind::Power, cos_phi, length, {ExplicitLoad{watts, "load"}}};
}

}  // namespace

TEST(CircuitLoad, Items) {
  CircuitSpec c{"S", Phase::Single, CircuitKind::Power, 1.0, 5.0, {SocketLoad{1}}};
  EXPECT_DOUBLE_EQ(circuit_load(c), 2000.0);
  c.loads = {SocketLoad{5}};
  EXPECT_DOUBLE_EQ(circuit_load(c), 2000.0 * (1 + 4 * 0.5));
  c.loads = {SocketLoad{2}, SocketLoad{3}};
  EXPECT_DOUBLE_EQ(circuit_load(c), 6000.0);
  c.loads = {LightingLoad{10, 2, 600}};
  EXPECT_DOUBLE_EQ(circuit_load(c), 10 * 2 * 600 / 12.0);
  c.loads = {ExplicitLoad{1500, "a"}, ExplicitLoad{250, "b"}};
  EXPECT_DOUBLE_EQ(circuit_load(c), 1750.0);
  c.loads.clear();
  EXPECT_THROW(circuit_load(c), Error);
}

TEST(CircuitCurrent, SingleAndThreePhase) {
  EXPECT_DOUBLE_EQ(circuit_current(4600, single(4600)), 20.0);
  EXPECT_NEAR(circuit_current(4600, single(4600, 10, 0.8)), 25.0, 1e-12);
  CircuitSpec three{"T", Phase::Three, CircuitKind::Power, 0.8, 10, {ExplicitLoad{11040, "m"}}};
  EXPECT_NEAR(circuit_current(11040, three), 19.918584287042087, 1e-9);
}

TEST(SelectConductor, Steps) {
  EXPECT_EQ(select_conductor(0.5).designation, "3x6");
  EXPECT_EQ(select_conductor(40.0).designation, "3x6");
  EXPECT_EQ(select_conductor(40.01).designation, "3x10");
  EXPECT_EQ(select_conductor(60.0).designation, "3x10");
  EXPECT_EQ(select_conductor(99.0).designation, "3x25");
  EXPECT_EQ(select_conductor(125.0).designation, "5x32");
  try {
    select_conductor(125.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OverAmpacity);
  }
}

TEST(VoltageDrop, Example) {
  const auto c = single(4600, 10);
  EXPECT_NEAR(voltage_drop(20, c, select_conductor(20)), 0.5072463768115942, 1e-12);
  EXPECT_DOUBLE_EQ(drop_limit(c), 5.0);
  auto lit = c;
  lit.kind = CircuitKind::Lighting;
  EXPECT_DOUBLE_EQ(drop_limit(lit), 3.0);
}

TEST(SizeCircuit, Pipeline) {
  const auto r = size_circuit(single(4600, 10));
  EXPECT_DOUBLE_EQ(r.load_w, 4600);
  EXPECT_DOUBLE_EQ(r.current_a, 20);
  EXPECT_EQ(r.conductor.designation, "3x6");
  EXPECT_NEAR(r.voltage_drop_pct, 0.5072463768115942, 1e-12);
  EXPECT_TRUE(r.drop_ok);

  const auto long_run = size_circuit(single(4600, 150));
  EXPECT_FALSE(long_run.drop_ok);
  EXPECT_THROW(size_circuit(single(4600, 10, 0.0)), Error);
  EXPECT_THROW(size_circuit(single(-1.0)), Error);
}

TEST(SizeCircuit, SmallSinglePhaseLoad) {
  const auto r = size_circuit(single(2300, 20));
  EXPECT_DOUBLE_EQ(r.current_a, 10.0);
  EXPECT_EQ(r.conductor.designation, "3x6");
  EXPECT_NEAR(r.voltage_drop_pct, 0.5072, 1e-3);
}

TEST(SizeCircuit, MonotoneAndLinear) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const auto c = single(100 + unit(rng) * 9000, 1 + unit(rng) * 50, 0.6 + 0.4 * unit(rng));
    const auto r = size_circuit(c);
    auto heavier = c;
    std::get<ExplicitLoad>(heavier.loads[0]).watts *= 1.0 + unit(rng);
    const auto rh = size_circuit(heavier);
    EXPECT_GE(rh.current_a, r.current_a);
    EXPECT_GE(rh.conductor.cross_section, r.conductor.cross_section);
    EXPECT_NEAR(circuit_current(2 * r.load_w, c), 2 * r.current_a, 1e-9 * r.current_a);
    auto longer = c;
    longer.length *= 2;
    EXPECT_NEAR(voltage_drop(r.current_a, longer, r.conductor), 2 * r.voltage_drop_pct,
                1e-9 * r.voltage_drop_pct);
  }
}

TEST(ElectricalDefaults, DataFileMatchesCompiledDefaults) {
  EXPECT_EQ(ElectricalDefaults::load(ElectricalDefaults::standard_path()), ElectricalDefaults{});
}

TEST(ElectricalDefaults, RejectsBadRows) {
  EXPECT_THROW(ElectricalDefaults::parse("socket_rating_w abc\n"), Error);
  EXPECT_THROW(ElectricalDefaults::parse("colour 3\n"), Error);
  EXPECT_THROW(ElectricalDefaults::parse("conductor 3x6 6 40\nconductor 2x4 4 20\n"), Error);
}

TEST(SizeCircuit, DuplexStaysInCatalogue) {
  const auto ctx = design::load_context(testkit::duplex_path());
  const auto results = design::size_circuits(ctx);
  ASSERT_EQ(results.size(), ctx.project.circuits.size());
  for (const auto& r : results) {
    EXPECT_TRUE(r.conductor.designation == "3x6" || r.conductor.designation == "3x10" ||
                r.conductor.designation == "3x25" || r.conductor.designation == "5x32")
        << r.name;
    EXPECT_TRUE(r.drop_ok) << r.name;
  }
}
