#pragma once

// Behavioral ternary cells and the two band-selector full adders.
//
// Both adders share one datapath:
//   sum node  -> (a + b + cin) * vdd / 6 through three equal input capacitors
//   carry gen -> Cout from the sum node against 2.5/6 and 5.5/6 of vdd
//   selectors -> S, F pick exactly one Sum path
//   bands     -> band0: Sum = sigma, band1: Sum = sigma - 3, band2: Sum = 0
// Design1 realizes band0/band1 as two cascaded inverters; Design2 as one buffer.

#include <optional>
#include <string>

#include "trisim/ternary.hpp"

namespace trisim::cells {

enum class CellKind { Sti, Nti, Pti, Stb, TGate, StiBand0, StiBand1, CarryGen, PulldownN };

const char* cell_kind_name(CellKind k) noexcept;

/// Single-input cells (STI, NTI, PTI, STB). Other kinds throw Errc::WrongArity.
Trit cell_eval(CellKind kind, Trit input);

/// Pass gate: the input when enabled, nothing (floating) otherwise.
std::optional<Trit> tgate_eval(bool enabled, Trit input) noexcept;

/// Band cells over sigma = a + b + cin. STI_BAND0 accepts 0..2, STI_BAND1 3..5,
/// PULLDOWN_N 6 and CARRY_GEN 0..6. Throws Errc::OutOfRange outside the band and
/// Errc::WrongArity for single-input kinds.
Trit band_eval(CellKind kind, int sigma);

/// Equal-capacitor averaging node: (Va + Vb + Vc) / 3.
double sum_node_voltage(Trit a, Trit b, Trit cin, const VoltageMap& m) noexcept;

/// Cout band of the sum-node voltage. Thresholds scale with vdd.
Trit carry_gen(double v_sum, const VoltageMap& m);

struct SelectorState {
  bool s;
  bool f;

  friend bool operator==(const SelectorState&, const SelectorState&) = default;
};

/// (1,1) for Cout=0, (0,1) for Cout=1, (0,0) for Cout=2.
SelectorState selectors(Trit cout) noexcept;

enum class Variant { Design1, Design2 };

const char* variant_name(Variant v) noexcept;

struct AdderDesign {
  Variant variant;
  int device_count;
  int input_cap_count;
  int sum_path_stages;

  static AdderDesign of(Variant v) noexcept;
};

FullAddResult adder_eval(const AdderDesign& d, Trit a, Trit b, Trit cin,
                         const VoltageMap& m = VoltageMap{});

/// kind,input,output rows for every cell kind. TGATE inputs are written "en/x"
/// and a disabled gate outputs "z".
std::string datasheet_csv();

}  // namespace trisim::cells
