#pragma once

// Netlist model and the line-oriented .tnl text format.
//
//   * comment                                (leading comments are kept as notes)
//   .title <name>
//   .input <node> [<node> ...]
//   .subckt <name> <ports...>  ...  .ends
//   M<name> <drain> <gate> <source> {nfet|pfet} <n1> <n2> <tubes>
//   C<name> <a> <b> <value>[f|p|n]
//   V<name> <node> <volts> | <ratio>*vdd
//   X<name> <nodes...> <subckt>
//   .probe <node>
//   .end
//
// Keywords and element letters are case-insensitive. VDD and GND are global
// supply nodes in every scope.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trisim/device.hpp"

namespace trisim::netlist {

inline constexpr std::string_view kVdd = "VDD";
inline constexpr std::string_view kGnd = "GND";

enum class NodeKind { SupplyVdd, SupplyGnd, Input, Output, Internal };

struct Node {
  std::string id;
  NodeKind kind;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Cnfet {
  std::string name;
  device::CnfetInstance inst;

  friend bool operator==(const Cnfet&, const Cnfet&) = default;
};

struct Capacitor {
  std::string name;
  std::string a;
  std::string b;
  double farads = 0.0;

  friend bool operator==(const Capacitor&, const Capacitor&) = default;
};

/// Fixed level. When relative_to_vdd is set, value is a fraction of the supply.
struct FixedSource {
  std::string name;
  std::string node;
  double value = 0.0;
  bool relative_to_vdd = false;

  double volts(double vdd) const noexcept { return relative_to_vdd ? value * vdd : value; }

  friend bool operator==(const FixedSource&, const FixedSource&) = default;
};

struct Probe {
  std::string node;

  friend bool operator==(const Probe&, const Probe&) = default;
};

using Device = std::variant<Cnfet, Capacitor, FixedSource, Probe>;

struct Instance {
  std::string name;
  std::vector<std::string> connections;
  std::string subckt;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Subckt {
  std::string name;
  std::vector<std::string> ports;
  std::vector<Device> devices;
  std::vector<Instance> instances;

  friend bool operator==(const Subckt&, const Subckt&) = default;
};

struct Netlist {
  std::string name;
  std::vector<std::string> notes;
  std::vector<std::string> inputs;
  std::vector<Subckt> subckts;
  std::vector<Device> devices;
  std::vector<Instance> instances;

  const Subckt* find_subckt(std::string_view subckt_name) const noexcept;

  friend bool operator==(const Netlist&, const Netlist&) = default;
};

/// Top-level nodes with their kinds, sorted by id.
std::vector<Node> nodes(const Netlist& n);

/// Probed node ids in declaration order.
std::vector<std::string> outputs(const Netlist& n);

/// Throws ParseError (Errc::Syntax or a semantic code) with the offending line.
Netlist parse(std::string_view text);

/// Canonical text. Subcircuits are emitted before anything that instantiates them.
std::string serialize(const Netlist& n);

/// Throws trisim::Error on the first violated structural invariant.
void validate(const Netlist& n);

/// Expands every instance into a single scope. Internal nodes of an instance
/// become "<instance>.<node>"; element names keep their letter, so MP inside X1
/// becomes "MX1.MP". Nested instances compose.
Netlist flatten(const Netlist& n);

/// CNFET and capacitor totals after flattening.
int count_cnfets(const Netlist& n);
int count_capacitors(const Netlist& n);

Netlist read_file(const std::string& path);
void write_file(const std::string& path, const Netlist& n);

/// Reserved supply names are matched case-insensitively and stored upper-case.
std::string canonical_node(std::string_view id);

}  // namespace trisim::netlist
