#pragma once

// CNFET geometry and switch-level electrical parameters.
//
// Diameter and threshold use the usual closed forms for a single-walled tube:
//   D   = 0.0783 * sqrt(n1^2 + n2^2 + n1*n2)   [nm]
//   Vth = 0.43 / D                             [V]
// A tube with (n1 - n2) divisible by 3 is metallic and has no threshold.

#include <string>

namespace trisim::device {

/// Nanotube index pair, stored normalized so that n1 >= n2.
class Chirality {
public:
  /// Throws Errc::ZeroChirality for (0,0) and Errc::OutOfRange for negative indices.
  Chirality(int n1, int n2);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }

  friend bool operator==(const Chirality&, const Chirality&) = default;
  friend auto operator<=>(const Chirality&, const Chirality&) = default;

private:
  int n1_;
  int n2_;
};

/// Compact-model constants. pitch and w_min are configuration, not measured values.
struct DeviceParams {
  double l_ch = 32.0;    // nm, physical channel length
  double l_geff = 100.0; // nm, mean free path in the intrinsic channel
  double l_dd = 32.0;    // nm, drain-side doped extension
  double l_ss = 32.0;    // nm, source-side doped extension
  double t_ox = 1.0;     // nm, high-k gate dielectric thickness
  double k_gate = 16.0;  // relative permittivity of the gate dielectric
  double e_fi = 6.0;     // eV, Fermi level of the doped S/D tube (stored as tabulated)
  double c_sub = 20.0;   // pF/m, channel-to-substrate coupling
  double pitch = 20.0;   // nm, inter-tube spacing
  double w_min = 32.0;   // nm, minimum gate width

  /// Throws Errc::Config unless every length and capacitance is strictly positive.
  void validate() const;
};

enum class Polarity { Nfet, Pfet };

const char* polarity_name(Polarity p) noexcept;

struct CnfetInstance {
  Polarity polarity = Polarity::Nfet;
  Chirality chirality{19, 0};
  int tubes = 1;
  std::string drain;
  std::string gate;
  std::string source;

  friend bool operator==(const CnfetInstance&, const CnfetInstance&) = default;
};

enum class WidthRule { AsPublished, Corrected };

double cnt_diameter(const Chirality& c) noexcept;
bool is_semiconducting(const Chirality& c) noexcept;

/// Throws Errc::MetallicTube for metallic chiralities.
double threshold_voltage(const Chirality& c);

/// AsPublished: min(w_min, N*pitch). Corrected: max(w_min, N*pitch).
double gate_width(int tubes, const DeviceParams& p, WidthRule mode);

/// NFET: v_gate - v_src > Vth. PFET: v_src - v_gate > Vth.
bool conducts(const CnfetInstance& t, double v_gate, double v_src);

/// Electrostatic gate capacitance in farads, treating each tube as a wire
/// inside a coaxial gate of radius D/2 + t_ox:
///   C = tubes * 2*pi*eps0*k_gate*l_ch / ln((D + 2 t_ox) / D)
double gate_capacitance(const Chirality& c, int tubes, const DeviceParams& p);

/// Semiconducting chirality whose threshold is closest to target_vth.
/// Searches n1 <= max_index; ties resolve to the smallest (n1, n2).
Chirality chirality_for_threshold(double target_vth, int max_index = 100);

std::string to_string(const Chirality& c);

}  // namespace trisim::device
