#pragma once

// Programmatic netlists for the ternary cell family and the two full adders.
//
// The adders are representative reconstructions, not published schematics.
// Both share:
//   - three equal capacitors from a, b, cin into the sum node `sx`
//   - a ladder of six threshold inverters t0..t5 on `sx`; tk is high iff
//     a+b+cin <= k. Rung k uses an NFET with Vth inside the k-th gap of the
//     sum-node lattice and a PFET from rung 5-k.
//   - S = t2, F = t5 and their complements `sb`, `fb`
//   - a Cout stage, three transmission gates and the F-bar pull-down on `sum`
// Design1 builds each band as a shifted inverter followed by a standard STI;
// Design2 uses one decoded buffer per band.

#include <array>
#include <optional>
#include <string_view>

#include "trisim/cells.hpp"
#include "trisim/device.hpp"
#include "trisim/netlist.hpp"

namespace trisim::netlist {

/// Vth classes for the standard cells. low must sit below vdd/2, high above it.
struct CellConfig {
  device::Chirality low{19, 0};
  device::Chirality high{10, 0};
  int tubes = 3;
};

Netlist build_sti(const CellConfig& cfg = {});
Netlist build_nti(const CellConfig& cfg = {});
Netlist build_pti(const CellConfig& cfg = {});
/// Inputs in, en, enb; output out.
Netlist build_tgate(const CellConfig& cfg = {});
/// Binary inverter with two low-Vth devices. Inputs in; output out.
Netlist build_inverter(const CellConfig& cfg = {});

struct DesignConfig {
  std::optional<device::Chirality> low = device::Chirality{19, 0};
  std::optional<device::Chirality> high = device::Chirality{10, 0};
  int tubes = 3;
  double vdd = 0.9;           // the threshold ladder is tuned to this supply
  double input_cap = 1e-15;   // farads, each of the three input capacitors
};

struct DesignInfo {
  cells::Variant variant;
  int cnfets = 0;
  int input_caps = 0;
  std::array<device::Chirality, 6> ladder{
      device::Chirality{1, 0}, device::Chirality{1, 0}, device::Chirality{1, 0},
      device::Chirality{1, 0}, device::Chirality{1, 0}, device::Chirality{1, 0}};
};

struct BuiltDesign {
  Netlist netlist;
  DesignInfo info;
};

/// Throws Errc::Config when a Vth class is missing, metallic, or cannot realize
/// the ternary levels at cfg.vdd.
BuiltDesign build_design(cells::Variant variant, const DesignConfig& cfg = {});

/// Ladder chirality for rung k: threshold closest to (k + 0.5) * vdd / 6.
std::array<device::Chirality, 6> threshold_ladder(double vdd);

/// Bundled fixture by stem: sti, nti, pti, tgate, design1, design2.
Netlist fixture(std::string_view stem);

inline constexpr std::array<std::string_view, 6> kFixtureStems = {"sti", "nti", "pti", "tgate", "design1",
                                                                  "design2"};

}  // namespace trisim::netlist
