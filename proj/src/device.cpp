#include "trisim/device.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "trisim/error.hpp"

namespace trisim {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ZeroChirality: return "ZeroChirality";
    case Errc::MetallicTube: return "MetallicTube";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::Unresolvable: return "Unresolvable";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::Overflow: return "Overflow";
    case Errc::WrongArity: return "WrongArity";
    case Errc::Syntax: return "SyntaxError";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownSubckt: return "UnknownSubckt";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::DanglingPort: return "DanglingPort";
    case Errc::Semantic: return "SemanticError";
    case Errc::Config: return "ConfigError";
    case Errc::NonConvergent: return "NonConvergent";
    case Errc::NoPath: return "NoPath";
    case Errc::Usage: return "UsageError";
  }
  return "Error";
}

}  // namespace trisim

namespace trisim::device {

namespace {

constexpr double kDiameterPerIndex = 0.0783;  // nm
constexpr double kThresholdTimesDiameter = 0.43;  // V*nm
constexpr double kEps0 = 8.8541878128e-12;  // F/m

}  // namespace

Chirality::Chirality(int n1, int n2) {
  if (n1 < 0 || n2 < 0) {
    throw Error(Errc::OutOfRange, "chirality indices must be non-negative");
  }
  if (n1 == 0 && n2 == 0) {
    throw Error(Errc::ZeroChirality, "chirality (0,0) has no tube");
  }
  n1_ = n1 >= n2 ? n1 : n2;
  n2_ = n1 >= n2 ? n2 : n1;
}

void DeviceParams::validate() const {
  const double positive[] = {l_ch, l_geff, l_dd, l_ss, t_ox, c_sub, pitch, w_min};
  for (double v : positive) {
    if (!(v > 0.0)) {
      throw Error(Errc::Config, "device lengths and capacitances must be strictly positive");
    }
  }
}

const char* polarity_name(Polarity p) noexcept { return p == Polarity::Nfet ? "nfet" : "pfet"; }

double cnt_diameter(const Chirality& c) noexcept {
  const double a = c.n1();
  const double b = c.n2();
  return kDiameterPerIndex * std::sqrt(a * a + b * b + a * b);
}

bool is_semiconducting(const Chirality& c) noexcept { return (c.n1() - c.n2()) % 3 != 0; }

double threshold_voltage(const Chirality& c) {
  if (!is_semiconducting(c)) {
    throw Error(Errc::MetallicTube, "chirality " + to_string(c) + " is metallic");
  }
  return kThresholdTimesDiameter / cnt_diameter(c);
}

double gate_width(int tubes, const DeviceParams& p, WidthRule mode) {
  if (tubes < 1) {
    throw Error(Errc::OutOfRange, "tube count must be at least 1");
  }
  const double spread = tubes * p.pitch;
  return mode == WidthRule::AsPublished ? std::min(p.w_min, spread) : std::max(p.w_min, spread);
}

bool conducts(const CnfetInstance& t, double v_gate, double v_src) {
  const double vth = threshold_voltage(t.chirality);
  if (t.polarity == Polarity::Nfet) {
    return v_gate - v_src > vth;
  }
  return v_src - v_gate > vth;
}

double gate_capacitance(const Chirality& c, int tubes, const DeviceParams& p) {
  if (tubes < 1) {
    throw Error(Errc::OutOfRange, "tube count must be at least 1");
  }
  const double d = cnt_diameter(c);
  const double per_tube =
      2.0 * std::numbers::pi * kEps0 * p.k_gate * (p.l_ch * 1e-9) / std::log((d + 2.0 * p.t_ox) / d);
  return tubes * per_tube;
}

Chirality chirality_for_threshold(double target_vth, int max_index) {
  if (!(target_vth > 0.0)) {
    throw Error(Errc::OutOfRange, "target threshold must be positive");
  }
  Chirality best{1, 0};
  double best_err = std::numeric_limits<double>::infinity();
  for (int n1 = 1; n1 <= max_index; ++n1) {
    for (int n2 = 0; n2 <= n1; ++n2) {
      const Chirality c{n1, n2};
      if (!is_semiconducting(c)) continue;
      const double err = std::abs(threshold_voltage(c) - target_vth);
      if (err < best_err) {
        best_err = err;
        best = c;
      }
    }
  }
  return best;
}

std::string to_string(const Chirality& c) {
  return "(" + std::to_string(c.n1()) + "," + std::to_string(c.n2()) + ")";
}

}  // namespace trisim::device
