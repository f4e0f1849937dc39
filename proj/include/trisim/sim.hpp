#pragma once

// Switch-level simulation of CNFET netlists.
//
// Every CNFET is a switch gated by device::conducts(). The source terminal is
// taken dynamically: the lower-potential channel terminal for an NFET, the
// higher one for a PFET. Each sweep:
//   1. evaluates every switch against the current node levels,
//   2. merges non-supply nodes joined by conducting channels into groups,
//   3. gives each group the level of the supplies it touches (X on conflict),
//      otherwise the capacitance-weighted mean of its capacitor neighbors,
//      otherwise the charge-shared level it already held.
// Sweeps are synchronous, so results never depend on declaration order.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trisim/device.hpp"
#include "trisim/netlist.hpp"

namespace trisim::sim {

enum class Strength { Charged, Driven, Supply };

const char* strength_name(Strength s) noexcept;

struct Signal {
  enum class State { Level, X, Z };

  State state = State::Z;
  double volts = 0.0;
  Strength strength = Strength::Charged;

  static Signal level(double v, Strength s) noexcept { return {State::Level, v, s}; }
  static Signal x(Strength s) noexcept { return {State::X, 0.0, s}; }
  static Signal z() noexcept { return {}; }

  bool has_level() const noexcept { return state == State::Level; }

  friend bool operator==(const Signal&, const Signal&) = default;
};

struct SimConfig {
  double vdd = 0.9;
  int max_iterations = 64;
  double r_on_per_tube = 30e3;  // ohms
  double c_out_load = 1e-15;    // farads on every probed node
  std::optional<double> level_tolerance;  // defaults to vdd / 10
  device::DeviceParams device;

  double tolerance() const noexcept { return level_tolerance.value_or(vdd / 10.0); }
  /// Throws Errc::Config.
  void validate() const;
};

using Levels = std::map<std::string, double>;
using NodeSignals = std::map<std::string, Signal>;

/// Flattened, indexed netlist bound to one configuration. Immutable after
/// construction; concurrent calls on one instance are safe.
class Circuit {
public:
  Circuit(const netlist::Netlist& n, const SimConfig& cfg);
  ~Circuit();
  Circuit(Circuit&&) noexcept;
  Circuit& operator=(Circuit&&) noexcept;

  const SimConfig& config() const noexcept;
  const std::vector<std::string>& inputs() const noexcept;
  const std::vector<std::string>& outputs() const noexcept;
  bool has_node(const std::string& id) const noexcept;
  /// Attached capacitors, gate loads and the output load where probed.
  double node_capacitance(const std::string& id) const;

  /// Resolves from an all-floating start. `inputs` must assign exactly the
  /// declared inputs. Throws Errc::NonConvergent, Errc::UnknownNode, Errc::Usage.
  NodeSignals steady_state(const Levels& inputs) const;

  /// Steady state plus the arrival time of every node that has one.
  struct Settled {
    NodeSignals signals;
    std::map<std::string, double> arrival;
  };
  Settled settle(const Levels& inputs, const NodeSignals* previous = nullptr) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

NodeSignals steady_state(const netlist::Netlist& n, const Levels& inputs, const SimConfig& cfg);

/// Nodes left in contention.
std::vector<std::string> contention_nodes(const NodeSignals& s);

struct StimulusEdge {
  double time;
  Levels inputs;
};

struct Event {
  double time;
  std::string node;
  Signal old_level;
  Signal new_level;
  double energy;  // 1/2 * C * dV^2
  double delay;   // time - triggering edge

  friend bool operator==(const Event&, const Event&) = default;
};

struct Waveform {
  std::vector<Event> events;         // sorted by (time, node)
  std::vector<std::string> outputs;  // probed nodes

  friend bool operator==(const Waveform&, const Waveform&) = default;
};

/// The first edge sets the initial state and emits nothing. Each later edge
/// re-settles from the previous state and emits one event per changed node at
/// edge time plus that node's arrival. A node's later event supersedes any of
/// its events that would not precede it. Times must strictly increase.
Waveform transient(const netlist::Netlist& n, const std::vector<StimulusEdge>& stimulus, const SimConfig& cfg);
Waveform transient(const Circuit& c, const std::vector<StimulusEdge>& stimulus);

/// Worst arrival at `output` over every ternary assignment of the inputs.
/// Arrival composes per group: the max gate arrival along the least-resistance
/// conducting path from a supply, plus the Elmore delay of that path,
///   sum_i R_i * (sum of node capacitance at and beyond step i).
/// Throws Errc::NoPath if the output is never driven.
double delay_estimate(const netlist::Netlist& n, const std::string& output, const SimConfig& cfg);
double delay_estimate(const Circuit& c, const std::string& output);

struct Metrics {
  double avg_power = 0.0;
  double worst_delay = 0.0;
  double pdp = 0.0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Power from total event energy over `duration`; delay is the largest event
/// delay on probed nodes (all nodes when nothing is probed).
Metrics measure(const Waveform& w, double duration);

/// time_s,node,level_v,energy_j with X/Z written as x/z.
std::string waveform_csv(const Waveform& w);
/// VCD text with one-character ternary values 0/1/2/x/z.
std::string waveform_vcd(const Waveform& w, const SimConfig& cfg);

/// Every ternary level assignment of `inputs`, first input most significant.
std::vector<Levels> ternary_assignments(const std::vector<std::string>& inputs, double vdd);

}  // namespace trisim::sim
