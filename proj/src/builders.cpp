#include "trisim/builders.hpp"

#include <cstdio>
#include <string>

#include "trisim/error.hpp"

namespace trisim::netlist {

namespace {

using device::Chirality;
using device::Polarity;

class Body {
public:
  Body(std::vector<Device>& devices, int tubes) : devices_(devices), tubes_(tubes) {}

  void nfet(std::string name, std::string d, std::string g, std::string s, Chirality c) {
    add(std::move(name), Polarity::Nfet, std::move(d), std::move(g), std::move(s), c);
  }
  void pfet(std::string name, std::string d, std::string g, std::string s, Chirality c) {
    add(std::move(name), Polarity::Pfet, std::move(d), std::move(g), std::move(s), c);
  }
  void cap(std::string name, std::string a, std::string b, double farads) {
    devices_.push_back(Capacitor{std::move(name), std::move(a), std::move(b), farads});
  }
  void fixed(std::string name, std::string node, double ratio) {
    devices_.push_back(FixedSource{std::move(name), std::move(node), ratio, true});
  }
  void probe(std::string node) { devices_.push_back(Probe{std::move(node)}); }

private:
  void add(std::string name, Polarity p, std::string d, std::string g, std::string s, Chirality c) {
    devices_.push_back(Cnfet{std::move(name), {p, c, tubes_, std::move(d), std::move(g), std::move(s)}});
  }

  std::vector<Device>& devices_;
  int tubes_;
};

const std::string kV{kVdd};
const std::string kG{kGnd};

// NTI: low-Vth pull-down, high-Vth pull-up. 0 -> 2, 1 -> 0, 2 -> 0.
void add_nti(Body& b, const std::string& tag, const std::string& in, const std::string& out, const CellConfig& c) {
  b.pfet("MP" + tag, out, in, kV, c.high);
  b.nfet("MN" + tag, out, in, kG, c.low);
}

// PTI: high-Vth pull-down, low-Vth pull-up. 0 -> 2, 1 -> 2, 2 -> 0.
void add_pti(Body& b, const std::string& tag, const std::string& in, const std::string& out, const CellConfig& c) {
  b.pfet("MP" + tag, out, in, kV, c.low);
  b.nfet("MN" + tag, out, in, kG, c.high);
}

// STI: high-Vth rails, plus a mid-rail path enabled when NTI(in) = 0 and PTI(in) = 2.
void add_sti(Body& b, const std::string& in, const std::string& out, const std::string& mid, const CellConfig& c) {
  b.pfet("MPU", out, in, kV, c.high);
  b.nfet("MND", out, in, kG, c.high);
  add_nti(b, "N", in, "n", c);
  add_pti(b, "P", in, "p", c);
  b.pfet("MPM", "m", "n", mid, c.low);
  b.nfet("MNM", out, "p", "m", c.low);
}

void add_inverter(Body& b, const std::string& in, const std::string& out, const CellConfig& c) {
  b.pfet("MP", out, in, kV, c.low);
  b.nfet("MN", out, in, kG, c.low);
}

// Transmission gate from `from` to `to`: NFET on `en`, PFET on `enb`.
void add_tgate(Body& b, const std::string& tag, const std::string& from, const std::string& to,
               const std::string& en, const std::string& enb, const CellConfig& c) {
  b.nfet("MN" + tag, to, en, from, c.low);
  b.pfet("MP" + tag, to, enb, from, c.low);
}

// Ternary output driven from decoded binary rails: high when `up_b` is low,
// low when `dn` is high, mid when `mid_pb` is low and `mid_n` is high.
void add_decoded_output(Body& b, const std::string& tag, const std::string& out, const std::string& up_b,
                        const std::string& dn, const std::string& mid_pb, const std::string& mid_n,
                        const std::string& mid, const CellConfig& c) {
  const std::string m = out + "m";
  b.pfet("MPU" + tag, out, up_b, kV, c.low);
  b.nfet("MND" + tag, out, dn, kG, c.low);
  b.pfet("MPM" + tag, m, mid_pb, mid, c.low);
  b.nfet("MNM" + tag, out, mid_n, m, c.low);
}

std::string rung(int k) { return "t" + std::to_string(k); }

void check_design_config(const DesignConfig& cfg) {
  if (!cfg.low || !cfg.high) {
    throw Error(Errc::Config, "design needs both a low-Vth and a high-Vth chirality class");
  }
  for (const auto* c : {&*cfg.low, &*cfg.high}) {
    if (!device::is_semiconducting(*c)) {
      throw Error(Errc::Config, "chirality " + device::to_string(*c) + " is metallic");
    }
  }
  if (cfg.tubes < 1) throw Error(Errc::Config, "tube count must be at least 1");
  if (!(cfg.input_cap > 0.0)) throw Error(Errc::Config, "input capacitance must be positive");
  if (!(cfg.vdd > 0.0)) throw Error(Errc::Config, "vdd must be positive");
  const double lo = device::threshold_voltage(*cfg.low);
  const double hi = device::threshold_voltage(*cfg.high);
  const double half = cfg.vdd / 2.0;
  if (!(lo < half && half < hi && hi < cfg.vdd)) {
    throw Error(Errc::Config, "Vth classes must satisfy low < vdd/2 < high < vdd");
  }
}

}  // namespace

Netlist build_sti(const CellConfig& cfg) {
  Netlist n;
  n.name = "sti";
  n.notes = {"Standard ternary inverter: 0 -> 2, 1 -> 1, 2 -> 0."};
  n.inputs = {"in"};
  Body b(n.devices, cfg.tubes);
  b.fixed("VH", "vh", 0.5);
  add_sti(b, "in", "out", "vh", cfg);
  b.probe("out");
  return n;
}

Netlist build_nti(const CellConfig& cfg) {
  Netlist n;
  n.name = "nti";
  n.notes = {"Negative ternary inverter: 0 -> 2, 1 -> 0, 2 -> 0."};
  n.inputs = {"in"};
  Body b(n.devices, cfg.tubes);
  add_nti(b, "1", "in", "out", cfg);
  b.probe("out");
  return n;
}

Netlist build_pti(const CellConfig& cfg) {
  Netlist n;
  n.name = "pti";
  n.notes = {"Positive ternary inverter: 0 -> 2, 1 -> 2, 2 -> 0."};
  n.inputs = {"in"};
  Body b(n.devices, cfg.tubes);
  add_pti(b, "1", "in", "out", cfg);
  b.probe("out");
  return n;
}

Netlist build_tgate(const CellConfig& cfg) {
  Netlist n;
  n.name = "tgate";
  n.notes = {"Transmission gate: out follows in while en is high and enb is low."};
  n.inputs = {"in", "en", "enb"};
  Body b(n.devices, cfg.tubes);
  add_tgate(b, "1", "in", "out", "en", "enb", cfg);
  b.probe("out");
  return n;
}

Netlist build_inverter(const CellConfig& cfg) {
  Netlist n;
  n.name = "inv";
  n.inputs = {"in"};
  Body b(n.devices, cfg.tubes);
  add_inverter(b, "in", "out", cfg);
  b.probe("out");
  return n;
}

std::array<Chirality, 6> threshold_ladder(double vdd) {
  if (!(vdd > 0.0)) throw Error(Errc::Config, "vdd must be positive");
  const double step = vdd / 6.0;
  std::array<Chirality, 6> ladder{Chirality{1, 0}, Chirality{1, 0}, Chirality{1, 0},
                                  Chirality{1, 0}, Chirality{1, 0}, Chirality{1, 0}};
  for (int k = 0; k < 6; ++k) {
    const Chirality c = device::chirality_for_threshold((k + 0.5) * step);
    const double vth = device::threshold_voltage(c);
    if (!(vth > k * step && vth < (k + 1) * step)) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "no chirality places rung %d inside (%.4f, %.4f) V", k, k * step,
                    (k + 1) * step);
      throw Error(Errc::Config, msg);
    }
    ladder[k] = c;
  }
  return ladder;
}

BuiltDesign build_design(cells::Variant variant, const DesignConfig& cfg) {
  check_design_config(cfg);
  const CellConfig cc{*cfg.low, *cfg.high, cfg.tubes};
  const auto ladder = threshold_ladder(cfg.vdd);
  const bool d1 = variant == cells::Variant::Design1;

  Netlist n;
  n.name = cells::variant_name(variant);
  n.inputs = {"a", "b", "cin"};

  Subckt inv{"inv", {"in", "out"}, {}, {}};
  {
    Body b(inv.devices, cfg.tubes);
    add_inverter(b, "in", "out", cc);
  }
  n.subckts.push_back(std::move(inv));
  if (d1) {
    Subckt sti{"sti", {"in", "out"}, {}, {}};
    Body b(sti.devices, cfg.tubes);
    b.fixed("VH", "vh", 0.5);
    add_sti(b, "in", "out", "vh", cc);
    n.subckts.push_back(std::move(sti));
  }

  Body b(n.devices, cfg.tubes);
  b.fixed("VH", "vh", 0.5);
  b.cap("CA", "a", "sx", cfg.input_cap);
  b.cap("CB", "b", "sx", cfg.input_cap);
  b.cap("CC", "cin", "sx", cfg.input_cap);

  for (int k = 0; k < 6; ++k) {
    b.pfet("MPT" + std::to_string(k), rung(k), "sx", kV, ladder[5 - k]);
    b.nfet("MNT" + std::to_string(k), rung(k), "sx", kG, ladder[k]);
  }
  n.instances.push_back({"XS", {"t2", "sb"}, "inv"});
  n.instances.push_back({"XF", {"t5", "fb"}, "inv"});

  // Cout: 2 when t5 is low, 0 when t2 is high, 1 otherwise.
  add_decoded_output(b, "C", "cout", "t5", "t2", "t2", "t5", "vh", cc);

  if (d1) {
    // Shifted inverters on the sum node, then a standard inverter each.
    b.pfet("MPS0", "s0", "sx", kV, ladder[5]);
    b.nfet("MNS0", "s0", "sx", kG, ladder[1]);
    b.pfet("MPS0M", "s0m", "t0", "vh", cc.low);
    b.nfet("MNS0M", "s0", "t1", "s0m", cc.low);
    b.pfet("MPS1", "s1", "sx", kV, ladder[2]);
    b.nfet("MNS1", "s1", "sx", kG, ladder[4]);
    b.pfet("MPS1M", "s1m", "t3", "vh", cc.low);
    b.nfet("MNS1M", "s1", "t4", "s1m", cc.low);
    n.instances.push_back({"XI0", {"s0", "b0"}, "sti"});
    n.instances.push_back({"XI1", {"s1", "b1"}, "sti"});
  } else {
    // Buffers: b0 = sigma on 0..2, b1 = sigma - 3 on 3..5.
    add_decoded_output(b, "B0", "b0", "t1", "t0", "t0", "t1", "vh", cc);
    add_decoded_output(b, "B1", "b1", "t4", "t3", "t3", "t4", "vh", cc);
  }

  add_tgate(b, "G0", "b0", "y", "t2", "sb", cc);
  add_tgate(b, "G1", "b1", "y", "sb", "t2", cc);
  add_tgate(b, "G2", "y", "sum", "t5", "fb", cc);
  b.nfet("MNZ", "sum", "fb", kG, cc.low);
  b.probe("sum");
  b.probe("cout");

  BuiltDesign out;
  out.info.variant = variant;
  out.info.cnfets = count_cnfets(n);
  out.info.input_caps = count_capacitors(n);
  out.info.ladder = ladder;

  char vdd_note[64];
  std::snprintf(vdd_note, sizeof vdd_note, "%g", cfg.vdd);
  n.notes = {
      std::string("Representative reconstruction of the band-selector ternary full adder, ") +
          (d1 ? "two cascaded inverters per band." : "one ternary buffer per band."),
      "Transistor-level topology is reconstructed from the behavioral description; device count is not "
      "the original.",
      "Sum-node threshold ladder tuned for vdd=" + std::string(vdd_note) + ".",
      "cnfets=" + std::to_string(out.info.cnfets) + " input_caps=" + std::to_string(out.info.input_caps),
  };
  validate(n);
  out.netlist = std::move(n);
  return out;
}

Netlist fixture(std::string_view stem) {
  if (stem == "sti") return build_sti();
  if (stem == "nti") return build_nti();
  if (stem == "pti") return build_pti();
  if (stem == "tgate") return build_tgate();
  if (stem == "design1") return build_design(cells::Variant::Design1).netlist;
  if (stem == "design2") return build_design(cells::Variant::Design2).netlist;
  throw Error(Errc::Usage, "unknown fixture '" + std::string(stem) + "'");
}

}  // namespace trisim::netlist
