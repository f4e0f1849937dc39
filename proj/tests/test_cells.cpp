#include <gtest/gtest.h>

#include "trisim/cells.hpp"
#include "trisim/error.hpp"

using namespace trisim;
using namespace trisim::cells;

TEST(Cells, SingleInputExamples) {
  EXPECT_EQ(cell_eval(CellKind::Sti, Trit(1)), Trit(1));
  EXPECT_EQ(cell_eval(CellKind::Nti, Trit(1)), Trit(0));
  EXPECT_EQ(cell_eval(CellKind::Stb, Trit(2)), Trit(2));
  const int nti[] = {2, 0, 0};
  const int pti[] = {2, 2, 0};
  for (int x = 0; x < 3; ++x) {
    EXPECT_EQ(cell_eval(CellKind::Sti, Trit(x)).value(), 2 - x);
    EXPECT_EQ(cell_eval(CellKind::Nti, Trit(x)).value(), nti[x]);
    EXPECT_EQ(cell_eval(CellKind::Pti, Trit(x)).value(), pti[x]);
    EXPECT_EQ(cell_eval(CellKind::Stb, Trit(x)).value(), x);
  }
  EXPECT_THROW(cell_eval(CellKind::CarryGen, Trit(0)), Error);
}

TEST(Cells, StiIsAnInvolution) {
  for (Trit t : kTrits) EXPECT_EQ(cell_eval(CellKind::Sti, cell_eval(CellKind::Sti, t)), t);
}

TEST(Cells, NtiNeverAbovePti) {
  for (Trit t : kTrits) EXPECT_LE(cell_eval(CellKind::Nti, t), cell_eval(CellKind::Pti, t));
}

TEST(Cells, TransmissionGate) {
  EXPECT_EQ(tgate_eval(true, Trit(1)), Trit(1));
  EXPECT_FALSE(tgate_eval(false, Trit(2)).has_value());
}

TEST(Cells, Bands) {
  for (int s = 0; s <= 2; ++s) EXPECT_EQ(band_eval(CellKind::StiBand0, s).value(), s);
  for (int s = 3; s <= 5; ++s) EXPECT_EQ(band_eval(CellKind::StiBand1, s).value(), s - 3);
  EXPECT_EQ(band_eval(CellKind::PulldownN, 6), Trit(0));
  EXPECT_THROW(band_eval(CellKind::StiBand0, 3), Error);
  EXPECT_THROW(band_eval(CellKind::StiBand1, 2), Error);
  try {
    band_eval(CellKind::Sti, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WrongArity);
  }
}

TEST(Cells, SumNodeVoltage) {
  const VoltageMap m(0.9);
  EXPECT_NEAR(sum_node_voltage(Trit(2), Trit(1), Trit(1), m), 0.60, 1e-12);
  EXPECT_DOUBLE_EQ(sum_node_voltage(Trit(0), Trit(0), Trit(0), m), 0.0);
  EXPECT_NEAR(sum_node_voltage(Trit(2), Trit(2), Trit(2), m), 0.90, 1e-12);
}

TEST(Cells, CarryGenExamples) {
  const VoltageMap m(0.9);
  EXPECT_EQ(carry_gen(0.30, m), Trit(0));
  EXPECT_EQ(carry_gen(0.60, m), Trit(1));
  EXPECT_EQ(carry_gen(0.90, m), Trit(2));
  EXPECT_THROW(carry_gen(0.95, m), Error);
}

TEST(Cells, CarryBandingAcrossSupplies) {
  for (double vdd : {0.8, 0.9, 1.0, 1.2}) {
    const VoltageMap m(vdd);
    for (Trit a : kTrits) {
      for (Trit b : kTrits) {
        for (Trit c : kTrits) {
          const int sigma = a.value() + b.value() + c.value();
          EXPECT_EQ(carry_gen(sum_node_voltage(a, b, c, m), m).value(), sigma / 3) << vdd << ' ' << sigma;
        }
      }
    }
  }
}

TEST(Cells, Selectors) {
  EXPECT_EQ(selectors(Trit(1)), (SelectorState{false, true}));
  EXPECT_EQ(selectors(Trit(2)), (SelectorState{false, false}));
  EXPECT_EQ(selectors(Trit(0)), (SelectorState{true, true}));
  // Exactly one sum path is active for each carry.
  for (Trit c : kTrits) {
    const auto s = selectors(c);
    const int paths = (s.s && s.f) + (!s.s && s.f) + (!s.f);
    EXPECT_EQ(paths, 1);
  }
}

TEST(Cells, DesignFacts) {
  const auto d1 = AdderDesign::of(Variant::Design1);
  const auto d2 = AdderDesign::of(Variant::Design2);
  EXPECT_EQ(d1.device_count, 55);
  EXPECT_EQ(d2.device_count, 43);
  EXPECT_EQ(d1.sum_path_stages, 3);
  EXPECT_EQ(d2.sum_path_stages, 2);
  EXPECT_EQ(d1.input_cap_count, 3);
  EXPECT_EQ(d2.input_cap_count, 3);
  EXPECT_STREQ(variant_name(Variant::Design1), "design1");
}

TEST(Cells, AdderExamples) {
  const auto d1 = AdderDesign::of(Variant::Design1);
  const auto d2 = AdderDesign::of(Variant::Design2);
  EXPECT_EQ(adder_eval(d1, Trit(2), Trit(1), Trit(1)), (FullAddResult{Trit(1), Trit(1)}));
  EXPECT_EQ(adder_eval(d2, Trit(2), Trit(2), Trit(2)), (FullAddResult{Trit(0), Trit(2)}));
  EXPECT_EQ(adder_eval(d2, Trit(1), Trit(0), Trit(0)), (FullAddResult{Trit(1), Trit(0)}));
}

TEST(Cells, AdderMatchesOracleEverywhere) {
  for (Variant v : {Variant::Design1, Variant::Design2}) {
    for (double vdd : {0.8, 0.9, 1.0}) {
      for (Trit a : kTrits) {
        for (Trit b : kTrits) {
          for (Trit c : kTrits) {
            EXPECT_EQ(adder_eval(AdderDesign::of(v), a, b, c, VoltageMap(vdd)), full_add(a, b, c));
          }
        }
      }
    }
  }
}

TEST(Cells, Datasheet) {
  const std::string csv = datasheet_csv();
  EXPECT_EQ(csv.substr(0, 18), "kind,input,output\n");
  EXPECT_NE(csv.find("STI,1,1\n"), std::string::npos);
  EXPECT_NE(csv.find("TGATE,0/2,z\n"), std::string::npos);
}
