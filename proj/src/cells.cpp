#include "trisim/cells.hpp"

#include <cmath>
#include <sstream>

#include "trisim/error.hpp"

namespace trisim::cells {

namespace {

constexpr double kMidBandLow = 2.5;
constexpr double kMidBandHigh = 5.5;

void require_band(int sigma, int lo, int hi, CellKind k) {
  if (sigma < lo || sigma > hi) {
    throw Error(Errc::OutOfRange, std::string(cell_kind_name(k)) + " is defined for sigma in [" +
                                      std::to_string(lo) + "," + std::to_string(hi) + "], got " +
                                      std::to_string(sigma));
  }
}

// Band0 in Design1: shifted inverter (sigma -> 2 - sigma) followed by a standard inverter.
Trit band0_two_inverters(int sigma) { return cell_eval(CellKind::Sti, Trit{2 - sigma}); }
// Band1 in Design1: shifted inverter on 3..5 (sigma -> 5 - sigma), then STI.
Trit band1_two_inverters(int sigma) { return cell_eval(CellKind::Sti, Trit{5 - sigma}); }

}  // namespace

const char* cell_kind_name(CellKind k) noexcept {
  switch (k) {
    case CellKind::Sti: return "STI";
    case CellKind::Nti: return "NTI";
    case CellKind::Pti: return "PTI";
    case CellKind::Stb: return "STB";
    case CellKind::TGate: return "TGATE";
    case CellKind::StiBand0: return "STI_BAND0";
    case CellKind::StiBand1: return "STI_BAND1";
    case CellKind::CarryGen: return "CARRY_GEN";
    case CellKind::PulldownN: return "PULLDOWN_N";
  }
  return "?";
}

Trit cell_eval(CellKind kind, Trit input) {
  const int x = input.value();
  switch (kind) {
    case CellKind::Sti: return Trit{2 - x};
    case CellKind::Nti: return Trit{x == 0 ? 2 : 0};
    case CellKind::Pti: return Trit{x == 2 ? 0 : 2};
    case CellKind::Stb: return input;
    default:
      throw Error(Errc::WrongArity, std::string(cell_kind_name(kind)) + " is not a single-input cell");
  }
}

std::optional<Trit> tgate_eval(bool enabled, Trit input) noexcept {
  if (!enabled) return std::nullopt;
  return input;
}

Trit band_eval(CellKind kind, int sigma) {
  switch (kind) {
    case CellKind::StiBand0:
      require_band(sigma, 0, 2, kind);
      return Trit{sigma};
    case CellKind::StiBand1:
      require_band(sigma, 3, 5, kind);
      return Trit{sigma - 3};
    case CellKind::PulldownN:
      require_band(sigma, 6, 6, kind);
      return Trit{0};
    case CellKind::CarryGen: {
      require_band(sigma, 0, 6, kind);
      const VoltageMap unit{6.0};
      return carry_gen(static_cast<double>(sigma), unit);
    }
    default:
      throw Error(Errc::WrongArity, std::string(cell_kind_name(kind)) + " does not take a sigma input");
  }
}

double sum_node_voltage(Trit a, Trit b, Trit cin, const VoltageMap& m) noexcept {
  return (m.level(a) + m.level(b) + m.level(cin)) / 3.0;
}

Trit carry_gen(double v_sum, const VoltageMap& m) {
  const double step = m.vdd() / 6.0;
  if (v_sum < -1e-12 || v_sum > m.vdd() + 1e-12) {
    throw Error(Errc::OutOfRange, "sum-node voltage outside [0, vdd]");
  }
  if (v_sum < kMidBandLow * step) return Trit{0};
  if (v_sum < kMidBandHigh * step) return Trit{1};
  return Trit{2};
}

SelectorState selectors(Trit cout) noexcept {
  switch (cout.value()) {
    case 0: return {true, true};
    case 1: return {false, true};
    default: return {false, false};
  }
}

const char* variant_name(Variant v) noexcept { return v == Variant::Design1 ? "design1" : "design2"; }

AdderDesign AdderDesign::of(Variant v) noexcept {
  if (v == Variant::Design1) return {v, 55, 3, 3};
  return {v, 43, 3, 2};
}

FullAddResult adder_eval(const AdderDesign& d, Trit a, Trit b, Trit cin, const VoltageMap& m) {
  const double v_sum = sum_node_voltage(a, b, cin, m);
  const Trit cout = carry_gen(v_sum, m);
  const SelectorState sel = selectors(cout);
  const int sigma = static_cast<int>(std::lround(v_sum * 6.0 / m.vdd()));

  // S gates the band0 pass gate, F gates the band1/band0 output pass gate and
  // its complement enables the pull-down. Exactly one path is live.
  Trit sum;
  if (sel.s && sel.f) {
    sum = d.variant == Variant::Design1 ? band0_two_inverters(sigma)
                                        : cell_eval(CellKind::Stb, band_eval(CellKind::StiBand0, sigma));
  } else if (sel.f) {
    sum = d.variant == Variant::Design1 ? band1_two_inverters(sigma)
                                        : cell_eval(CellKind::Stb, band_eval(CellKind::StiBand1, sigma));
  } else {
    sum = band_eval(CellKind::PulldownN, sigma);
  }
  return {sum, cout};
}

std::string datasheet_csv() {
  std::ostringstream out;
  out << "kind,input,output\n";
  for (CellKind k : {CellKind::Sti, CellKind::Nti, CellKind::Pti, CellKind::Stb}) {
    for (Trit t : kTrits) {
      out << cell_kind_name(k) << ',' << t.value() << ',' << cell_eval(k, t).value() << '\n';
    }
  }
  for (int en = 0; en <= 1; ++en) {
    for (Trit t : kTrits) {
      const auto y = tgate_eval(en == 1, t);
      out << "TGATE," << en << '/' << t.value() << ',';
      if (y) {
        out << y->value();
      } else {
        out << 'z';
      }
      out << '\n';
    }
  }
  const struct {
    CellKind kind;
    int lo, hi;
  } bands[] = {{CellKind::StiBand0, 0, 2},
               {CellKind::StiBand1, 3, 5},
               {CellKind::PulldownN, 6, 6},
               {CellKind::CarryGen, 0, 6}};
  for (const auto& b : bands) {
    for (int s = b.lo; s <= b.hi; ++s) {
      out << cell_kind_name(b.kind) << ',' << s << ',' << band_eval(b.kind, s).value() << '\n';
    }
  }
  return out.str();
}

}  // namespace trisim::cells
