#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "trisim/builders.hpp"
#include "trisim/error.hpp"
#include "trisim/netlist.hpp"

using namespace trisim;
using namespace trisim::netlist;

namespace {

Netlist wrap(const std::string& body) { return parse(".title t\n" + body + "\n.end\n"); }

ParseError parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return ParseError(Errc::Usage, 0, 0, "");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

device::Chirality random_chirality(std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(0, 40);
  for (;;) {
    const int a = idx(rng);
    const int b = idx(rng);
    if ((a || b) && (a - b) % 3 != 0) return device::Chirality(a, b);
  }
}

// Valid netlists drawn from a small node pool, with an optional two-level
// subcircuit hierarchy.
Netlist random_netlist(std::mt19937& rng) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  Netlist n;
  n.name = "rand" + std::to_string(pick(1000));
  for (int i = pick(3); i > 0; --i) n.notes.push_back("note " + std::to_string(pick(100)) + " words here");
  const int n_inputs = pick(3);
  for (int i = 0; i < n_inputs; ++i) n.inputs.push_back("i" + std::to_string(i));

  std::vector<std::string> pool = {std::string(kVdd), std::string(kGnd)};
  for (int i = 0; i < 6; ++i) pool.push_back("n" + std::to_string(i));
  for (const auto& in : n.inputs) pool.push_back(in);
  auto node = [&] { return pool[pick(static_cast<int>(pool.size()))]; };

  const bool hier = pick(2) == 1;
  if (hier) {
    Subckt leaf{"leaf", {"x", "y"}, {}, {}};
    leaf.devices.push_back(Cnfet{"M1", {device::Polarity::Pfet, random_chirality(rng), 1 + pick(4), "y", "x", "VDD"}});
    leaf.devices.push_back(Cnfet{"M2", {device::Polarity::Nfet, random_chirality(rng), 1 + pick(4), "y", "x", "GND"}});
    Subckt top{"pair", {"p", "q"}, {}, {}};
    top.devices.push_back(Capacitor{"C1", "mid", "GND", 2e-15});
    top.instances.push_back(Instance{"X1", {"p", "mid"}, "leaf"});
    top.instances.push_back(Instance{"X2", {"mid", "q"}, "leaf"});
    n.subckts = {leaf, top};
  }

  int id = 0;
  std::set<std::string> sourced;
  const int count = 1 + pick(12);
  for (int k = 0; k < count; ++k) {
    const std::string name = std::to_string(id++);
    switch (pick(3)) {
      case 0: {
        const auto pol = pick(2) ? device::Polarity::Nfet : device::Polarity::Pfet;
        n.devices.push_back(Cnfet{"M" + name, {pol, random_chirality(rng), 1 + pick(5), node(), node(), node()}});
        break;
      }
      case 1: {
        std::string a = node();
        std::string b = node();
        if (a == b) b = a == "n0" ? "n1" : "n0";
        const double f = pick(2) ? (1 + pick(9)) * 1e-15 : std::uniform_real_distribution<double>(1e-16, 1e-12)(rng);
        n.devices.push_back(Capacitor{"C" + name, a, b, f});
        break;
      }
      default: {
        const std::string target = "n" + std::to_string(pick(6));
        if (!sourced.insert(target).second) break;
        const bool rel = pick(2);
        const double v = rel ? pick(5) / 4.0 : std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        n.devices.push_back(FixedSource{"V" + name, target, v, rel});
        break;
      }
    }
  }
  if (hier) n.instances.push_back(Instance{"XA" + std::to_string(id++), {"n0", "n5"}, "pair"});
  for (const auto& in : n.inputs) n.devices.push_back(Capacitor{"CI" + in, in, "n1", 1e-15});
  n.devices.push_back(Capacitor{"CP", "n0", "n1", 1e-15});
  n.devices.push_back(Probe{"n0"});
  n.devices.push_back(Probe{"n1"});
  return n;
}

}  // namespace

TEST(Netlist, ParseCnfet) {
  const Netlist n = wrap("MN1 out in GND nfet 19 0 3");
  ASSERT_EQ(n.devices.size(), 1u);
  const auto& m = std::get<Cnfet>(n.devices[0]);
  EXPECT_EQ(m.name, "MN1");
  EXPECT_EQ(m.inst.polarity, device::Polarity::Nfet);
  EXPECT_EQ(m.inst.chirality, device::Chirality(19, 0));
  EXPECT_EQ(m.inst.tubes, 3);
  EXPECT_EQ(m.inst.drain, "out");
  EXPECT_EQ(m.inst.source, "GND");
}

TEST(Netlist, ParseCapacitor) {
  const Netlist n = wrap("C1 sum a 1f");
  const auto& c = std::get<Capacitor>(n.devices.at(0));
  EXPECT_EQ(c.a, "sum");
  EXPECT_EQ(c.b, "a");
  EXPECT_DOUBLE_EQ(c.farads, 1e-15);
  EXPECT_DOUBLE_EQ(std::get<Capacitor>(wrap("C2 x a 2.5p").devices.at(0)).farads, 2.5e-12);
}

TEST(Netlist, ParseSourcesAndSupplies) {
  const Netlist n = wrap("VH vh 0.5*vdd\nVB vb 0.3\nMP1 vh in vdd pfet 19 0 1\n.probe vh");
  const auto& vh = std::get<FixedSource>(n.devices.at(0));
  EXPECT_TRUE(vh.relative_to_vdd);
  EXPECT_DOUBLE_EQ(vh.volts(0.8), 0.4);
  EXPECT_DOUBLE_EQ(std::get<FixedSource>(n.devices.at(1)).volts(0.8), 0.3);
  EXPECT_EQ(std::get<Cnfet>(n.devices.at(2)).inst.source, "VDD");
  EXPECT_EQ(outputs(n), std::vector<std::string>{"vh"});
}

TEST(Netlist, MetallicRejectedWithLine) {
  const auto e = parse_error(".title t\n.input in\nMN1 out in GND nfet 6 3 1\n.end\n");
  EXPECT_EQ(e.code(), Errc::MetallicTube);
  EXPECT_EQ(e.line(), 3);
}

TEST(Netlist, ErrorsCarryLineNumbers) {
  struct Case {
    const char* text;
    Errc code;
    int line;
  };
  const Case cases[] = {
      {".title t\nMN1 out in GND nfet 19 0\n.end\n", Errc::Syntax, 2},
      {".title t\nMN1 out in GND nfet 0 0 1\n.end\n", Errc::ZeroChirality, 2},
      {".title t\nMN1 out in GND nfet 19 0 0\n.end\n", Errc::Semantic, 2},
      {".title t\nC1 a b -1f\n.end\n", Errc::Semantic, 2},
      {".title t\nC1 a b 1f\nC1 b c 1f\n.end\n", Errc::DuplicateId, 3},
      {".title t\nX1 a b nothing\n.end\n", Errc::UnknownSubckt, 2},
      {".title t\n.probe ghost\n.end\n", Errc::UnknownNode, 2},
      {".title t\nC1 a b 1f\n", Errc::Syntax, 2},
      {".title t\n.end\nC1 a b 1f\n", Errc::Syntax, 3},
      {".title t\nQ1 a b\n.end\n", Errc::Syntax, 2},
      {".title t\n.subckt s a b\nC1 a GND 1f\n.ends\n.end\n", Errc::DanglingPort, 2},
  };
  for (const auto& c : cases) {
    const auto e = parse_error(c.text);
    EXPECT_EQ(e.code(), c.code) << c.text << "\n" << e.what();
    EXPECT_EQ(e.line(), c.line) << c.text << "\n" << e.what();
  }
}

TEST(Netlist, EmptySerialization) { EXPECT_EQ(serialize(Netlist{}), ".title\n.end\n"); }

TEST(Netlist, SubcktEmittedBeforeUse) {
  Netlist n;
  n.name = "order";
  n.subckts.push_back(Subckt{"outer", {"a", "b"}, {}, {Instance{"X1", {"a", "b"}, "inner"}}});
  n.subckts.push_back(Subckt{"inner", {"p", "q"}, {Capacitor{"C1", "p", "q", 1e-15}}, {}});
  n.instances.push_back(Instance{"XT", {"u", "v"}, "outer"});
  const std::string text = serialize(n);
  EXPECT_LT(text.find(".subckt inner"), text.find(".subckt outer"));
  EXPECT_LT(text.find(".subckt outer"), text.find("XT u v outer"));
  EXPECT_EQ(serialize(parse(text)), text);
}

TEST(Netlist, FlattenPrefixesInstances) {
  const Netlist n = parse(
      ".title f\n.input in\n.subckt inv a y\nMP y a VDD pfet 19 0 1\nMN y a GND nfet 19 0 1\n.ends\n"
      "X1 in mid inv\nX2 mid out inv\n.probe out\n.end\n");
  const Netlist flat = flatten(n);
  EXPECT_TRUE(flat.instances.empty());
  EXPECT_EQ(count_cnfets(n), 4);
  const auto first = std::find_if(flat.devices.begin(), flat.devices.end(),
                                  [](const Device& d) { return std::holds_alternative<Cnfet>(d); });
  ASSERT_NE(first, flat.devices.end());
  const auto& m = std::get<Cnfet>(*first);
  EXPECT_EQ(m.name, "MX1.MP");
  EXPECT_EQ(m.inst.drain, "mid");
  EXPECT_EQ(m.inst.source, "VDD");
}

TEST(Netlist, NodeKinds) {
  const Netlist n = wrap(".input in\nMN1 out in GND nfet 19 0 3\n.probe out");
  for (const auto& node : nodes(n)) {
    if (node.id == "in") EXPECT_EQ(node.kind, NodeKind::Input);
    if (node.id == "out") EXPECT_EQ(node.kind, NodeKind::Output);
    if (node.id == "GND") EXPECT_EQ(node.kind, NodeKind::SupplyGnd);
  }
}

TEST(Netlist, FixturesMatchBuilders) {
  for (auto stem : kFixtureStems) {
    const std::string path = std::string(TRISIM_DATA_DIR) + "/" + std::string(stem) + ".tnl";
    const std::string text = read_text(path);
    EXPECT_EQ(text, serialize(fixture(stem))) << stem;
  }
}

TEST(Netlist, FixturesRoundTrip) {
  for (auto stem : kFixtureStems) {
    const std::string text = read_text(std::string(TRISIM_DATA_DIR) + "/" + std::string(stem) + ".tnl");
    const Netlist n = parse(text);
    EXPECT_EQ(serialize(n), text) << stem;
    EXPECT_EQ(parse(serialize(n)), n) << stem;
  }
}

TEST(Netlist, GeneratedRoundTrip) {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    const Netlist n = random_netlist(rng);
    ASSERT_NO_THROW(validate(n)) << serialize(n);
    const std::string once = serialize(n);
    const Netlist back = parse(once);
    EXPECT_EQ(back, n) << once;
    EXPECT_EQ(serialize(back), once);
  }
}

TEST(Netlist, CanonicalFixpoint) {
  const std::string messy =
      "* hello\n.TITLE mixed\n.input a\n  mn1   out a gnd NFET 19 0 3\nc1 out a 1e-15\n.PROBE out\n.END\n";
  const std::string once = serialize(parse(messy));
  EXPECT_EQ(serialize(parse(once)), once);
  EXPECT_NE(once.find("GND"), std::string::npos);
}

TEST(Netlist, FileIo) {
  const std::string path = testing::TempDir() + "/io.tnl";
  write_file(path, fixture("nti"));
  EXPECT_EQ(read_file(path), fixture("nti"));
  try {
    read_file(path + ".missing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Usage);
  }
}
