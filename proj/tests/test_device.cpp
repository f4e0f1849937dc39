#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "trisim/device.hpp"
#include "trisim/error.hpp"

using namespace trisim;
using namespace trisim::device;

namespace {

// Hand-evaluated 0.0783 * sqrt(n1^2 + n2^2 + n1 n2) and 0.43 / D.
struct Frozen {
  int n1, n2;
  double diameter_nm;
  double vth_v;
};

constexpr Frozen kFrozen[] = {
    {19, 0, 1.487700, 0.289037},
    {13, 0, 1.017900, 0.422438},
    {10, 0, 0.783000, 0.549170},
    {7, 5, 0.817476, 0.526009},
};

CnfetInstance fet(Polarity p, int n1, int n2) {
  CnfetInstance t;
  t.polarity = p;
  t.chirality = Chirality(n1, n2);
  return t;
}

Chirality random_semiconducting(std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(0, 60);
  for (;;) {
    const int a = idx(rng);
    const int b = idx(rng);
    if ((a == 0 && b == 0) || (a - b) % 3 == 0) continue;
    return Chirality(a, b);
  }
}

}  // namespace

TEST(Device, FrozenDiameterAndThreshold) {
  for (const auto& f : kFrozen) {
    const Chirality c(f.n1, f.n2);
    EXPECT_NEAR(cnt_diameter(c), f.diameter_nm, f.diameter_nm * 1e-5) << to_string(c);
    EXPECT_NEAR(threshold_voltage(c), f.vth_v, f.vth_v * 1e-5) << to_string(c);
  }
}

TEST(Device, RoundedExamples) {
  EXPECT_NEAR(cnt_diameter({19, 0}), 1.4877, 5e-5);
  EXPECT_NEAR(cnt_diameter({10, 0}), 0.7830, 5e-5);
  EXPECT_NEAR(cnt_diameter({7, 5}), 0.8175, 5e-5);
  EXPECT_NEAR(threshold_voltage({19, 0}), 0.2890, 5e-5);
  EXPECT_NEAR(threshold_voltage({10, 0}), 0.5492, 5e-5);
  EXPECT_NEAR(threshold_voltage({13, 0}), 0.4224, 5e-5);
}

TEST(Device, MetallicRule) {
  EXPECT_FALSE(is_semiconducting({6, 3}));
  EXPECT_FALSE(is_semiconducting({5, 5}));
  EXPECT_FALSE(is_semiconducting({9, 0}));
  EXPECT_TRUE(is_semiconducting({19, 0}));
  EXPECT_TRUE(is_semiconducting({7, 5}));
  try {
    threshold_voltage({6, 3});
    FAIL() << "metallic tube has no threshold";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MetallicTube);
  }
}

TEST(Device, ChiralityValidation) {
  try {
    Chirality(0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroChirality);
  }
  try {
    Chirality(-1, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfRange);
  }
  EXPECT_EQ(Chirality(0, 7), Chirality(7, 0));
  EXPECT_EQ(to_string(Chirality(5, 7)), "(7,5)");
}

TEST(Device, SwapSymmetry) {
  for (int a = 0; a < 30; ++a) {
    for (int b = 0; b < 30; ++b) {
      if (a == 0 && b == 0) continue;
      EXPECT_DOUBLE_EQ(cnt_diameter({a, b}), cnt_diameter({b, a}));
      EXPECT_EQ(is_semiconducting({a, b}), is_semiconducting({b, a}));
    }
  }
}

TEST(Device, ThresholdFallsAsDiameterGrows) {
  double last = threshold_voltage({1, 0});
  for (int n = 2; n < 60; ++n) {
    if (n % 3 == 0) continue;
    const double v = threshold_voltage({n, 0});
    EXPECT_LT(v, last);
    last = v;
  }
}

TEST(Device, VthTimesDiameterProperty) {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Chirality c = random_semiconducting(rng);
    EXPECT_NEAR(threshold_voltage(c) * cnt_diameter(c), 0.43, 0.43 * 1e-9) << to_string(c);
  }
}

TEST(Device, GateWidthModes) {
  const DeviceParams p;
  EXPECT_DOUBLE_EQ(gate_width(3, p, WidthRule::AsPublished), 32.0);
  EXPECT_DOUBLE_EQ(gate_width(3, p, WidthRule::Corrected), 60.0);
  EXPECT_DOUBLE_EQ(gate_width(1, p, WidthRule::AsPublished), 20.0);
  EXPECT_DOUBLE_EQ(gate_width(1, p, WidthRule::Corrected), 32.0);
  EXPECT_THROW(gate_width(0, p, WidthRule::Corrected), Error);
}

TEST(Device, ParamsValidate) {
  DeviceParams p;
  EXPECT_NO_THROW(p.validate());
  p.t_ox = 0.0;
  EXPECT_THROW(p.validate(), Error);
}

TEST(Device, ConductsExamples) {
  EXPECT_TRUE(conducts(fet(Polarity::Nfet, 19, 0), 0.45, 0.0));
  EXPECT_FALSE(conducts(fet(Polarity::Nfet, 10, 0), 0.45, 0.0));
  EXPECT_FALSE(conducts(fet(Polarity::Pfet, 19, 0), 0.9, 0.9));
  EXPECT_TRUE(conducts(fet(Polarity::Pfet, 19, 0), 0.0, 0.9));
}

TEST(Device, NfetMonotoneInGate) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> volts(0.0, 1.2);
  for (int i = 0; i < 200; ++i) {
    CnfetInstance t;
    t.chirality = random_semiconducting(rng);
    const double src = volts(rng);
    bool was_on = false;
    for (double g = 0.0; g <= 1.5; g += 0.01) {
      const bool on = conducts(t, g, src);
      EXPECT_FALSE(was_on && !on);
      was_on = on;
    }
  }
}

TEST(Device, GateCapacitanceScalesWithTubes) {
  const DeviceParams p;
  const double one = gate_capacitance({19, 0}, 1, p);
  EXPECT_GT(one, 1e-17);
  EXPECT_LT(one, 1e-16);
  EXPECT_DOUBLE_EQ(gate_capacitance({19, 0}, 3, p), 3 * one);
}

TEST(Device, ChiralityForThreshold) {
  const Chirality c = chirality_for_threshold(0.289);
  EXPECT_TRUE(is_semiconducting(c));
  EXPECT_NEAR(threshold_voltage(c), 0.289, 0.005);
  EXPECT_EQ(chirality_for_threshold(threshold_voltage({10, 0})), Chirality(10, 0));
}
