#include <gtest/gtest.h>

#include "trisim/builders.hpp"
#include "trisim/error.hpp"

using namespace trisim;
using namespace trisim::netlist;

namespace {

bool all_semiconducting(const Netlist& n) {
  for (const auto& d : flatten(n).devices) {
    if (auto* m = std::get_if<Cnfet>(&d); m && !device::is_semiconducting(m->inst.chirality)) return false;
  }
  return true;
}

Errc build_error(const DesignConfig& cfg) {
  try {
    build_design(cells::Variant::Design2, cfg);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "built";
  return Errc::Usage;
}

}  // namespace

TEST(Builders, InputCapacitors) {
  for (auto v : {cells::Variant::Design1, cells::Variant::Design2}) {
    const auto b = build_design(v);
    EXPECT_EQ(b.info.input_caps, 3);
    EXPECT_EQ(count_capacitors(b.netlist), 3);
    EXPECT_EQ(b.netlist.inputs, (std::vector<std::string>{"a", "b", "cin"}));
    EXPECT_EQ(outputs(b.netlist), (std::vector<std::string>{"sum", "cout"}));
  }
}

TEST(Builders, Design1IsLarger) {
  const auto d1 = build_design(cells::Variant::Design1);
  const auto d2 = build_design(cells::Variant::Design2);
  EXPECT_EQ(d1.info.cnfets, count_cnfets(d1.netlist));
  EXPECT_EQ(d2.info.cnfets, count_cnfets(d2.netlist));
  EXPECT_GT(d1.info.cnfets, d2.info.cnfets);
}

TEST(Builders, EveryDeviceSemiconducting) {
  for (auto stem : kFixtureStems) EXPECT_TRUE(all_semiconducting(fixture(stem))) << stem;
  for (double vdd : {0.8, 0.9, 1.0}) {
    DesignConfig cfg;
    cfg.vdd = vdd;
    EXPECT_TRUE(all_semiconducting(build_design(cells::Variant::Design1, cfg).netlist));
  }
}

TEST(Builders, LadderSitsInsideSumNodeGaps) {
  for (double vdd : {0.8, 0.9, 1.0}) {
    const auto ladder = threshold_ladder(vdd);
    for (int k = 0; k < 6; ++k) {
      const double vth = device::threshold_voltage(ladder[k]);
      EXPECT_GT(vth, k * vdd / 6) << vdd << ' ' << k;
      EXPECT_LT(vth, (k + 1) * vdd / 6) << vdd << ' ' << k;
    }
  }
}

TEST(Builders, MissingOrBadClassIsConfigError) {
  DesignConfig cfg;
  cfg.low.reset();
  EXPECT_EQ(build_error(cfg), Errc::Config);
  cfg = {};
  cfg.high.reset();
  EXPECT_EQ(build_error(cfg), Errc::Config);
  cfg = {};
  cfg.low = device::Chirality(10, 0);  // above vdd/2
  EXPECT_EQ(build_error(cfg), Errc::Config);
  cfg = {};
  cfg.high = device::Chirality(6, 3);
  EXPECT_NE(build_error(cfg), Errc::Usage);
}

TEST(Builders, CellsAreValid) {
  EXPECT_NO_THROW(validate(build_sti()));
  EXPECT_NO_THROW(validate(build_nti()));
  EXPECT_NO_THROW(validate(build_pti()));
  EXPECT_NO_THROW(validate(build_tgate()));
  EXPECT_NO_THROW(validate(build_inverter()));
  EXPECT_EQ(build_tgate().inputs, (std::vector<std::string>{"in", "en", "enb"}));
  EXPECT_THROW(fixture("nand"), Error);
}

TEST(Builders, NotesFlagReconstruction) {
  const auto b = build_design(cells::Variant::Design2);
  ASSERT_FALSE(b.netlist.notes.empty());
  EXPECT_NE(b.netlist.notes.front().find("reconstruction"), std::string::npos);
}
