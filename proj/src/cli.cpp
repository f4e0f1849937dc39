#include "trisim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <optional>
#include <sstream>

#include "trisim/builders.hpp"
#include "trisim/cells.hpp"
#include "trisim/device.hpp"
#include "trisim/error.hpp"
#include "trisim/netlist.hpp"
#include "trisim/sim.hpp"
#include "trisim/ternary.hpp"

namespace trisim::cli {

namespace {

using cells::Variant;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

int exit_for(const Error& e) { return e.code() == Errc::NonConvergent ? kNonConvergent : kUsage; }

std::vector<Variant> variants_of(const std::string& design) {
  if (design == "1") return {Variant::Design1};
  if (design == "2") return {Variant::Design2};
  return {Variant::Design1, Variant::Design2};
}

std::optional<Trit> read_trit(const sim::Signal& s, const VoltageMap& m, double tol) {
  if (!s.has_level()) return std::nullopt;
  try {
    return voltage_to_trit(s.volts, m, tol);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string trit_text(const std::optional<Trit>& t) { return t ? std::to_string(t->value()) : "?"; }

sim::Levels adder_levels(int a, int b, int c, const VoltageMap& m) {
  return {{"a", m.level(Trit(a))}, {"b", m.level(Trit(b))}, {"cin", m.level(Trit(c))}};
}

// Adder netlist against the arithmetic oracle. Returns the mismatch count and
// reports each mismatch to `err` under `label`.
int check_adder(const sim::Circuit& c, const std::string& label, std::ostream& err) {
  const VoltageMap m(c.config().vdd);
  const double tol = c.config().tolerance();
  int bad = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int k = 0; k < 3; ++k) {
        const auto s = c.steady_state(adder_levels(a, b, k, m));
        const auto sum = read_trit(s.at("sum"), m, tol);
        const auto cout = read_trit(s.at("cout"), m, tol);
        const FullAddResult want = full_add(Trit(a), Trit(b), Trit(k));
        if (sum == want.sum && cout == want.cout) continue;
        ++bad;
        err << label << " mismatch at " << a << ',' << b << ',' << k << ": got " << trit_text(sum) << ','
            << trit_text(cout) << " want " << want.sum.value() << ',' << want.cout.value() << '\n';
      }
    }
  }
  return bad;
}

sim::SimConfig sim_config(double vdd, double load) {
  sim::SimConfig cfg;
  cfg.vdd = vdd;
  cfg.c_out_load = load;
  return cfg;
}

// ---------------------------------------------------------------- truth-table

int cmd_truth_table(const std::string& design, double vdd, std::ostream& out, std::ostream& err) {
  const auto variants = variants_of(design);
  const VoltageMap m(vdd);
  int bad = 0;
  std::ostringstream table;
  table << "a,b,cin,sum,cout\n";
  for (Variant v : variants) {
    const auto d = cells::AdderDesign::of(v);
    int behavioral = 0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int k = 0; k < 3; ++k) {
          const auto got = cells::adder_eval(d, Trit(a), Trit(b), Trit(k), m);
          const auto want = full_add(Trit(a), Trit(b), Trit(k));
          if (v == variants.front()) {
            table << a << ',' << b << ',' << k << ',' << got.sum.value() << ',' << got.cout.value() << '\n';
          }
          if (got == want) continue;
          ++behavioral;
          err << variant_name(v) << " behavioral mismatch at " << a << ',' << b << ',' << k << '\n';
        }
      }
    }
    netlist::DesignConfig dc;
    dc.vdd = vdd;
    const sim::Circuit c(netlist::build_design(v, dc).netlist, sim_config(vdd, 1e-15));
    const int structural = check_adder(c, std::string(variant_name(v)) + " structural", err);
    err << variant_name(v) << ": behavioral " << 27 - behavioral << "/27, structural " << 27 - structural
        << "/27\n";
    bad += behavioral + structural;
  }
  out << table.str();
  return bad == 0 ? kOk : kMismatch;
}

// ------------------------------------------------------------------- simulate

sim::Levels parse_assignment(const std::string& spec, const std::vector<std::string>& inputs, const VoltageMap& m) {
  sim::Levels levels;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::Usage, "expected node=trit, got '" + item + "'");
    const std::string node = netlist::canonical_node(item.substr(0, eq));
    const std::string value = item.substr(eq + 1);
    if (value.size() != 1 || value[0] < '0' || value[0] > '2') {
      throw Error(Errc::Usage, "'" + value + "' is not a trit");
    }
    levels[node] = m.level(Trit(value[0] - '0'));
  }
  for (const auto& in : inputs) {
    if (!levels.count(in)) throw Error(Errc::Usage, "input '" + in + "' is not assigned");
  }
  return levels;
}

int cmd_simulate(const std::string& path, const std::string& format, const std::string& steady,
                 const sim::SimConfig& cfg, double freq, std::ostream& out) {
  const sim::Circuit c(netlist::read_file(path), cfg);
  if (!steady.empty()) {
    const auto s = c.steady_state(parse_assignment(steady, c.inputs(), VoltageMap(cfg.vdd)));
    out << "node,level_v,strength\n";
    for (const auto& [id, sig] : s) {
      out << id << ',';
      if (sig.state == sim::Signal::State::X) {
        out << 'x';
      } else if (sig.state == sim::Signal::State::Z) {
        out << 'z';
      } else {
        out << fmt("%.6g", sig.volts);
      }
      out << ',' << sim::strength_name(sig.strength) << '\n';
    }
    return kOk;
  }
  std::vector<sim::StimulusEdge> stimulus;
  const double period = 1.0 / freq;
  for (auto& levels : sim::ternary_assignments(c.inputs(), cfg.vdd)) {
    stimulus.push_back({period * static_cast<double>(stimulus.size()), std::move(levels)});
  }
  const auto w = sim::transient(c, stimulus);
  out << (format == "vcd" ? sim::waveform_vcd(w, cfg) : sim::waveform_csv(w));
  return kOk;
}

// --------------------------------------------------------------------- device

int cmd_device(int n1, int n2, int tubes, const std::string& mode, std::ostream& out, std::ostream& err) {
  const device::Chirality c(n1, n2);
  const device::DeviceParams p;
  out << "chirality " << device::to_string(c) << '\n';
  out << "D=" << fmt("%.4f", device::cnt_diameter(c)) << " nm\n";
  int code = kOk;
  if (device::is_semiconducting(c)) {
    out << "Vth=" << fmt("%.4f", device::threshold_voltage(c)) << " V\n";
  } else {
    out << "Vth=METALLIC\n";
    err << "chirality " << device::to_string(c) << " is metallic: no threshold voltage\n";
    code = kUsage;
  }
  const bool published = mode == "as-published";
  out << "W_as_published=" << fmt("%.4f", device::gate_width(tubes, p, device::WidthRule::AsPublished)) << " nm"
      << (published ? " (selected)" : "") << '\n';
  out << "W_corrected=" << fmt("%.4f", device::gate_width(tubes, p, device::WidthRule::Corrected)) << " nm"
      << (published ? "" : " (selected)") << '\n';
  return code;
}

// ---------------------------------------------------------------------- sweep

struct SweepPoint {
  double delay = 0.0;
  double power = 0.0;
  double pdp = 0.0;
  int mismatches = 0;
  std::string log;
};

// One cycle through every input vector and back to the first.
std::vector<sim::StimulusEdge> full_cycle(double vdd, double freq) {
  auto vectors = sim::ternary_assignments({"a", "b", "cin"}, vdd);
  vectors.push_back(vectors.front());
  std::vector<sim::StimulusEdge> edges;
  for (auto& v : vectors) edges.push_back({static_cast<double>(edges.size()) / freq, std::move(v)});
  return edges;
}

SweepPoint sweep_point(Variant v, double vdd, double load, double freq) {
  netlist::DesignConfig dc;
  dc.vdd = vdd;
  const sim::Circuit c(netlist::build_design(v, dc).netlist, sim_config(vdd, load));
  SweepPoint p;
  std::ostringstream log;
  p.mismatches = check_adder(c, variant_name(v), log);
  p.log = log.str();
  const auto edges = full_cycle(vdd, freq);
  const auto w = sim::transient(c, edges);
  const double duration = static_cast<double>(edges.size() - 1) / freq;
  p.power = sim::measure(w, duration).avg_power;
  p.delay = sim::delay_estimate(c, "sum");
  p.pdp = p.power * p.delay;
  return p;
}

int cmd_sweep(const std::string& axis, std::vector<double> values, const std::string& design, double vdd,
              double load, double freq, std::ostream& out, std::ostream& err) {
  if (axis == "temperature") {
    err << "temperature sweep unavailable: the device model has no temperature dependence, so every point would "
           "be identical\n";
    return kUsage;
  }
  if (values.empty()) {
    if (axis == "vdd") values = {0.8, 0.9, 1.0};
    if (axis == "load") values = {1e-15, 2e-15, 3e-15, 4e-15, 5e-15};
    if (axis == "frequency") values = {100e6, 250e6, 500e6};
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]) || (i > 0 && !(values[i] > values[i - 1]))) {
      err << "sweep values must be positive and strictly increasing\n";
      return kUsage;
    }
  }

  struct Job {
    Variant variant;
    double value;
    std::future<SweepPoint> result;
  };
  std::vector<Job> jobs;
  for (Variant v : variants_of(design)) {
    for (double x : values) {
      const double p_vdd = axis == "vdd" ? x : vdd;
      const double p_load = axis == "load" ? x : load;
      const double p_freq = axis == "frequency" ? x : freq;
      jobs.push_back({v, x, std::async(std::launch::async, sweep_point, v, p_vdd, p_load, p_freq)});
    }
  }

  std::ostringstream table;
  table << "variant,axis,value,delay_s,power_w,pdp_j\n";
  int code = kOk;
  for (auto& job : jobs) {
    try {
      const SweepPoint p = job.result.get();
      err << p.log;
      if (p.mismatches) code = std::max(code, static_cast<int>(kMismatch));
      table << variant_name(job.variant) << ',' << axis << ',' << fmt("%.6g", job.value) << ','
            << fmt("%.6e", p.delay) << ',' << fmt("%.6e", p.power) << ',' << fmt("%.6e", p.pdp) << '\n';
    } catch (const Error& e) {
      err << variant_name(job.variant) << " at " << axis << '=' << fmt("%.6g", job.value) << ": " << e.what()
          << '\n';
      const int c = e.code() == Errc::Config ? kUsage : e.code() == Errc::NonConvergent ? kNonConvergent : kMismatch;
      code = std::max(code, c);
    }
  }
  out << table.str();
  return code;
}

// --------------------------------------------------------------------- verify

std::optional<cells::CellKind> cell_kind(const std::string& name) {
  if (name == "sti") return cells::CellKind::Sti;
  if (name == "nti") return cells::CellKind::Nti;
  if (name == "pti") return cells::CellKind::Pti;
  if (name == "stb") return cells::CellKind::Stb;
  if (name == "tgate") return cells::CellKind::TGate;
  return std::nullopt;
}

int cmd_verify(const std::string& path, std::string cell, const sim::SimConfig& cfg, std::ostream& out,
               std::ostream& err) {
  const netlist::Netlist n = netlist::read_file(path);
  const sim::Circuit c(n, cfg);
  const auto& ins = c.inputs();
  const auto& outs = c.outputs();
  auto has_output = [&](const char* id) { return std::find(outs.begin(), outs.end(), id) != outs.end(); };

  if (ins == std::vector<std::string>{"a", "b", "cin"} && has_output("sum") && has_output("cout")) {
    const int bad = check_adder(c, n.name.empty() ? "adder" : n.name, err);
    out << "full-adder " << 27 - bad << "/27 match\n";
    return bad == 0 ? kOk : kMismatch;
  }

  if (cell.empty()) cell = n.name;
  const auto kind = cell_kind(cell);
  if (!kind) {
    err << "cannot tell what to verify: not an adder (inputs a,b,cin; probes sum,cout) and no known --cell\n";
    return kUsage;
  }
  if (outs.size() != 1) {
    err << "cell netlists need exactly one probed output\n";
    return kUsage;
  }
  const VoltageMap m(cfg.vdd);
  const double tol = cfg.tolerance();
  int total = 0;
  int bad = 0;
  auto report = [&](const std::string& row, const std::optional<Trit>& got, const std::optional<Trit>& want,
                    bool floating, bool want_float) {
    ++total;
    if (floating == want_float && (want_float || got == want)) return;
    ++bad;
    err << cell << " mismatch at " << row << ": got " << (floating ? "z" : trit_text(got)) << " want "
        << (want_float ? "z" : trit_text(want)) << '\n';
  };

  if (*kind == cells::CellKind::TGate) {
    if (ins != std::vector<std::string>{"in", "en", "enb"}) {
      err << "tgate netlists need inputs in, en, enb\n";
      return kUsage;
    }
    for (bool en : {false, true}) {
      for (Trit t : kTrits) {
        const auto s = c.steady_state({{"in", m.level(t)}, {"en", en ? cfg.vdd : 0.0}, {"enb", en ? 0.0 : cfg.vdd}});
        const auto& o = s.at(outs.front());
        const auto want = cells::tgate_eval(en, t);
        report("en=" + std::to_string(en) + ",in=" + std::to_string(t.value()), read_trit(o, m, tol), want,
               o.state == sim::Signal::State::Z || o.strength == sim::Strength::Charged, !want.has_value());
      }
    }
  } else {
    if (ins.size() != 1) {
      err << "single-input cells need exactly one declared input\n";
      return kUsage;
    }
    for (Trit t : kTrits) {
      const auto s = c.steady_state({{ins.front(), m.level(t)}});
      const auto& o = s.at(outs.front());
      report("in=" + std::to_string(t.value()), read_trit(o, m, tol), cells::cell_eval(*kind, t),
             o.state == sim::Signal::State::Z, false);
    }
  }
  out << cell << ' ' << total - bad << '/' << total << " match\n";
  return bad == 0 ? kOk : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Switch-level simulation and verification of ternary CNFET logic", "trisim"};
  app.require_subcommand(1);

  double vdd = 0.9;
  double load = 1e-15;
  double freq = 250e6;
  std::string design = "both";
  std::string format = "csv";
  std::string width_rule = "corrected";
  std::string steady;
  std::string path;
  std::string axis = "load";
  std::string cell;
  std::string stem;
  std::vector<double> values;
  int n1 = 0;
  int n2 = 0;
  int tubes = 1;

  auto add_vdd = [&](CLI::App* sub) { sub->add_option("--vdd", vdd, "supply voltage (V)")->check(CLI::PositiveNumber); };
  auto add_load = [&](CLI::App* sub) { sub->add_option("--load", load, "output load (F)")->check(CLI::PositiveNumber); };
  auto add_freq = [&](CLI::App* sub) { sub->add_option("--freq", freq, "input toggle rate (Hz)")->check(CLI::PositiveNumber); };
  auto add_design = [&](CLI::App* sub) {
    sub->add_option("--design", design, "adder variant")->check(CLI::IsMember({"1", "2", "both"}));
  };

  auto* tt = app.add_subcommand("truth-table", "check both adders against Sum = sum mod 3, Cout = sum / 3");
  add_design(tt);
  add_vdd(tt);

  auto* simulate = app.add_subcommand("simulate", "transient over every input combination, or one steady state");
  simulate->add_option("file", path, "netlist (.tnl)")->required();
  simulate->add_option("--format", format, "waveform format")->check(CLI::IsMember({"csv", "vcd"}));
  simulate->add_option("--steady", steady, "print the steady state for node=trit,...");
  add_vdd(simulate);
  add_load(simulate);
  add_freq(simulate);

  auto* dev = app.add_subcommand("device", "diameter, threshold and gate width of one chirality");
  dev->add_option("n1", n1)->required()->check(CLI::NonNegativeNumber);
  dev->add_option("n2", n2)->required()->check(CLI::NonNegativeNumber);
  dev->add_option("tubes", tubes)->check(CLI::PositiveNumber);
  dev->add_option("--eq1-mode", width_rule, "gate-width rule to mark as selected")
      ->check(CLI::IsMember({"as-published", "corrected"}));

  auto* sweep = app.add_subcommand("sweep", "delay, power and PDP of the adders along one axis");
  sweep->add_option("--axis", axis)->check(CLI::IsMember({"vdd", "load", "frequency", "temperature"}));
  sweep->add_option("--values", values, "axis points, strictly increasing")->delimiter(',');
  add_design(sweep);
  add_vdd(sweep);
  add_load(sweep);
  add_freq(sweep);

  auto* verify = app.add_subcommand("verify", "compare a netlist with its behavioral model");
  verify->add_option("file", path, "netlist (.tnl)")->required();
  verify->add_option("--cell", cell, "cell kind for single-stage netlists")
      ->check(CLI::IsMember({"sti", "nti", "pti", "stb", "tgate"}));
  add_vdd(verify);

  auto* datasheet = app.add_subcommand("datasheet", "behavioral truth table of every cell kind");
  auto* emit = app.add_subcommand("netlist", "print a bundled netlist");
  emit->add_option("stem", stem)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*tt) return cmd_truth_table(design, vdd, out, err);
    if (*simulate) return cmd_simulate(path, format, steady, sim_config(vdd, load), freq, out);
    if (*dev) return cmd_device(n1, n2, tubes, width_rule, out, err);
    if (*sweep) return cmd_sweep(axis, values, design, vdd, load, freq, out, err);
    if (*verify) return cmd_verify(path, cell, sim_config(vdd, load), out, err);
    if (*datasheet) {
      out << cells::datasheet_csv();
      return kOk;
    }
    if (*emit) {
      out << netlist::serialize(netlist::fixture(stem));
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e);
  }
  return kUsage;
}

}  // namespace trisim::cli
