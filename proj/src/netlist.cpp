#include "trisim/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "trisim/error.hpp"

namespace trisim::netlist {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool iequals(std::string_view a, std::string_view b) { return lower(a) == lower(b); }

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string format_capacitance(double farads) {
  const std::string femto = format_double(farads * 1e15);
  if (auto back = parse_double(femto); back && *back * 1e-15 == farads) {
    return femto + "f";
  }
  return format_double(farads);
}

std::optional<double> parse_capacitance(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double scale = 1.0;
  switch (std::tolower(static_cast<unsigned char>(s.back()))) {
    case 'f': scale = 1e-15; break;
    case 'p': scale = 1e-12; break;
    case 'n': scale = 1e-9; break;
    default: break;
  }
  if (scale != 1.0) s.remove_suffix(1);
  auto v = parse_double(s);
  if (!v) return std::nullopt;
  return *v * scale;
}

// ---------------------------------------------------------------------------
// Structural checks shared by parse() and validate(). Line lookups return 0
// when no source text is attached.

struct ScopeLines {
  int header = 0;
  std::vector<int> devices;
  std::vector<int> instances;
};

struct SourceLines {
  int last = 0;
  int inputs = 0;
  ScopeLines top;
  std::vector<ScopeLines> subckts;
};

class Checker {
public:
  Checker(const Netlist& n, const SourceLines* lines) : n_(n), lines_(lines) {}

  void run() {
    if (!n_.name.empty()) check_token(n_.name, "title", 1);
    for (const auto& note : n_.notes) {
      if (note.find_first_of("\r\n") != std::string::npos) fail(Errc::Semantic, 1, "note spans lines");
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < n_.subckts.size(); ++i) {
      const Subckt& s = n_.subckts[i];
      const int line = lines_ ? lines_->subckts[i].header : 0;
      check_token(s.name, "subckt name", line);
      if (!names.insert(lower(s.name)).second) {
        fail(Errc::DuplicateId, line, "subckt '" + s.name + "' defined twice");
      }
    }
    for (std::size_t i = 0; i < n_.subckts.size(); ++i) {
      const Subckt& s = n_.subckts[i];
      check_scope(s.devices, s.instances, lines_ ? &lines_->subckts[i] : nullptr, false);
      check_ports(s, lines_ ? lines_->subckts[i].header : 0);
    }
    check_scope(n_.devices, n_.instances, lines_ ? &lines_->top : nullptr, true);
    check_inputs();
    check_recursion();
  }

private:
  [[noreturn]] void fail(Errc code, int line, const std::string& msg) const {
    if (lines_) throw ParseError(code, line, 1, msg);
    throw Error(code, msg);
  }

  void check_token(const std::string& tok, const char* what, int line) const {
    const bool bad = tok.empty() || tok.front() == '.' || tok.front() == '*' ||
                     std::any_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); });
    if (bad) fail(Errc::Semantic, line, std::string("invalid ") + what + " '" + tok + "'");
  }

  void check_node(const std::string& id, int line) const {
    check_token(id, "node id", line);
    if (canonical_node(id) != id) fail(Errc::Semantic, line, "supply node must be spelled " + canonical_node(id));
  }

  void check_element_name(const std::string& name, char letter, int line) const {
    check_token(name, "element name", line);
    if (std::toupper(static_cast<unsigned char>(name.front())) != letter) {
      fail(Errc::Semantic, line, "element '" + name + "' must start with '" + std::string(1, letter) + "'");
    }
  }

  static std::set<std::string> referenced(const std::vector<Device>& devices,
                                          const std::vector<Instance>& instances) {
    std::set<std::string> out;
    for (const Device& d : devices) {
      if (auto* m = std::get_if<Cnfet>(&d)) {
        out.insert({m->inst.drain, m->inst.gate, m->inst.source});
      } else if (auto* c = std::get_if<Capacitor>(&d)) {
        out.insert({c->a, c->b});
      } else if (auto* v = std::get_if<FixedSource>(&d)) {
        out.insert(v->node);
      }
    }
    for (const Instance& x : instances) out.insert(x.connections.begin(), x.connections.end());
    return out;
  }

  void check_scope(const std::vector<Device>& devices, const std::vector<Instance>& instances,
                   const ScopeLines* lines, bool top) const {
    const auto refs = referenced(devices, instances);
    std::set<std::string> names;
    std::set<std::string> sourced;
    std::set<std::string> inputs(n_.inputs.begin(), n_.inputs.end());
    for (std::size_t i = 0; i < devices.size(); ++i) {
      const int line = lines ? lines->devices[i] : 0;
      const Device& d = devices[i];
      std::string name;
      if (auto* m = std::get_if<Cnfet>(&d)) {
        name = m->name;
        check_element_name(name, 'M', line);
        for (const auto* id : {&m->inst.drain, &m->inst.gate, &m->inst.source}) check_node(*id, line);
        if (m->inst.tubes < 1) fail(Errc::Semantic, line, "tube count must be at least 1");
        if (!device::is_semiconducting(m->inst.chirality)) {
          fail(Errc::MetallicTube, line,
               "CNFET '" + name + "' uses metallic chirality " + device::to_string(m->inst.chirality));
        }
      } else if (auto* c = std::get_if<Capacitor>(&d)) {
        name = c->name;
        check_element_name(name, 'C', line);
        check_node(c->a, line);
        check_node(c->b, line);
        if (!(c->farads > 0.0) || !std::isfinite(c->farads)) fail(Errc::Semantic, line, "capacitor '" + name + "' must be positive");
        if (c->a == c->b) fail(Errc::Semantic, line, "capacitor '" + name + "' shorts a node to itself");
      } else if (auto* v = std::get_if<FixedSource>(&d)) {
        name = v->name;
        check_element_name(name, 'V', line);
        check_node(v->node, line);
        if (v->node == kVdd || v->node == kGnd) {
          fail(Errc::Semantic, line, "source '" + name + "' drives a reserved supply node");
        }
        if (!std::isfinite(v->value)) fail(Errc::Semantic, line, "source '" + name + "' is not finite");
        if (top && inputs.count(v->node)) fail(Errc::Semantic, line, "source '" + name + "' drives an input");
        if (!sourced.insert(v->node).second) {
          fail(Errc::Semantic, line, "node '" + v->node + "' has more than one source");
        }
      } else if (auto* p = std::get_if<Probe>(&d)) {
        if (!top) fail(Errc::Semantic, line, ".probe is only allowed at top level");
        check_node(p->node, line);
        if (!refs.count(p->node) && !inputs.count(p->node)) {
          fail(Errc::UnknownNode, line, "probe of unknown node '" + p->node + "'");
        }
        continue;
      }
      if (!names.insert(lower(name)).second) fail(Errc::DuplicateId, line, "element '" + name + "' defined twice");
    }
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const int line = lines ? lines->instances[i] : 0;
      const Instance& x = instances[i];
      check_element_name(x.name, 'X', line);
      for (const auto& c : x.connections) check_node(c, line);
      if (!names.insert(lower(x.name)).second) fail(Errc::DuplicateId, line, "element '" + x.name + "' defined twice");
      const Subckt* s = n_.find_subckt(x.subckt);
      if (!s) fail(Errc::UnknownSubckt, line, "instance '" + x.name + "' of unknown subckt '" + x.subckt + "'");
      if (s->ports.size() != x.connections.size()) {
        fail(Errc::Semantic, line,
             "instance '" + x.name + "' connects " + std::to_string(x.connections.size()) + " nodes, '" +
                 s->name + "' has " + std::to_string(s->ports.size()) + " ports");
      }
    }
  }

  void check_ports(const Subckt& s, int line) const {
    const auto refs = referenced(s.devices, s.instances);
    std::set<std::string> seen;
    for (const auto& p : s.ports) {
      check_node(p, line);
      if (p == kVdd || p == kGnd) fail(Errc::Semantic, line, "supply node used as a port of '" + s.name + "'");
      if (!seen.insert(p).second) fail(Errc::DuplicateId, line, "port '" + p + "' listed twice");
      if (!refs.count(p)) fail(Errc::DanglingPort, line, "port '" + p + "' of '" + s.name + "' is unconnected");
    }
  }

  void check_inputs() const {
    const int line = lines_ ? lines_->inputs : 0;
    const auto refs = referenced(n_.devices, n_.instances);
    std::set<std::string> seen;
    for (const auto& id : n_.inputs) {
      check_node(id, line);
      if (id == kVdd || id == kGnd) fail(Errc::Semantic, line, "supply node declared as input");
      if (!seen.insert(id).second) fail(Errc::DuplicateId, line, "input '" + id + "' listed twice");
      if (!refs.count(id)) fail(Errc::UnknownNode, line, "input '" + id + "' is not connected");
    }
  }

  void check_recursion() const {
    std::map<std::string, int> state;  // 1 = visiting, 2 = done
    std::function<void(const Subckt&)> visit = [&](const Subckt& s) {
      state[s.name] = 1;
      for (const auto& x : s.instances) {
        const Subckt* child = n_.find_subckt(x.subckt);
        if (!child) continue;
        if (state[child->name] == 1) {
          fail(Errc::Semantic, lines_ ? lines_->last : 0, "subckt '" + child->name + "' instantiates itself");
        }
        if (state[child->name] == 0) visit(*child);
      }
      state[s.name] = 2;
    };
    for (const auto& s : n_.subckts) {
      if (state[s.name] == 0) visit(s);
    }
  }

  const Netlist& n_;
  const SourceLines* lines_;
};

// ---------------------------------------------------------------------------

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Netlist run() {
    std::size_t pos = 0;
    int lineno = 0;
    bool seen_statement = false;
    while (pos < text_.size()) {
      const std::size_t eol = text_.find('\n', pos);
      std::string_view line = text_.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
      pos = eol == std::string_view::npos ? text_.size() : eol + 1;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++lineno;
      lines_.last = lineno;

      const auto toks = tokenize(line);
      if (toks.empty()) continue;
      if (toks.front().text.front() == '*') {
        if (!seen_statement) {
          std::string_view note = line.substr(line.find('*') + 1);
          if (!note.empty() && note.front() == ' ') note.remove_prefix(1);
          n_.notes.emplace_back(note);
        }
        continue;
      }
      seen_statement = true;
      if (ended_) syntax(lineno, toks.front().column, "content after .end");
      statement(lineno, toks);
    }
    lines_.last = std::max(lines_.last, 1);
    if (current_) syntax(lines_.last, 1, "missing .ends for subckt '" + n_.subckts.back().name + "'");
    if (!ended_) syntax(lines_.last, 1, "missing .end");

    Checker(n_, &lines_).run();
    return std::move(n_);
  }

private:
  [[noreturn]] void syntax(int line, int col, const std::string& msg) const {
    throw ParseError(Errc::Syntax, line, col, msg);
  }

  void expect_count(int line, const std::vector<Token>& toks, std::size_t n, const char* form) const {
    if (toks.size() != n) {
      const int col = toks.size() > n ? toks[n].column : toks.back().column;
      syntax(line, col, std::string("expected: ") + form);
    }
  }

  std::vector<Device>& devices() { return current_ ? n_.subckts.back().devices : n_.devices; }
  std::vector<Instance>& instances() { return current_ ? n_.subckts.back().instances : n_.instances; }
  ScopeLines& scope_lines() { return current_ ? lines_.subckts.back() : lines_.top; }

  void add_device(int line, Device d) {
    devices().push_back(std::move(d));
    scope_lines().devices.push_back(line);
  }

  void statement(int line, const std::vector<Token>& toks) {
    const std::string_view head = toks.front().text;
    if (head.front() == '.') {
      directive(line, lower(head), toks);
      return;
    }
    switch (std::toupper(static_cast<unsigned char>(head.front()))) {
      case 'M': transistor(line, toks); break;
      case 'C': capacitor(line, toks); break;
      case 'V': source(line, toks); break;
      case 'X': instance(line, toks); break;
      default: syntax(line, toks.front().column, "unknown element '" + std::string(head) + "'");
    }
  }

  void directive(int line, const std::string& head, const std::vector<Token>& toks) {
    if (head == ".title") {
      if (current_) syntax(line, toks[0].column, ".title inside subckt");
      if (have_title_) syntax(line, toks[0].column, "duplicate .title");
      if (toks.size() > 2) syntax(line, toks[2].column, ".title takes a single name");
      have_title_ = true;
      n_.name = toks.size() == 2 ? std::string(toks[1].text) : std::string();
    } else if (head == ".input") {
      if (current_) syntax(line, toks[0].column, ".input inside subckt");
      if (toks.size() < 2) syntax(line, toks[0].column, ".input needs at least one node");
      if (!n_.inputs.empty()) syntax(line, toks[0].column, "duplicate .input");
      for (std::size_t i = 1; i < toks.size(); ++i) n_.inputs.push_back(canonical_node(toks[i].text));
      lines_.inputs = line;
    } else if (head == ".subckt") {
      if (current_) syntax(line, toks[0].column, "nested .subckt");
      if (toks.size() < 2) syntax(line, toks[0].column, ".subckt needs a name");
      Subckt s;
      s.name = std::string(toks[1].text);
      for (std::size_t i = 2; i < toks.size(); ++i) s.ports.push_back(canonical_node(toks[i].text));
      n_.subckts.push_back(std::move(s));
      lines_.subckts.push_back({line, {}, {}});
      current_ = true;
    } else if (head == ".ends") {
      if (!current_) syntax(line, toks[0].column, ".ends without .subckt");
      if (toks.size() > 2) syntax(line, toks[2].column, "unexpected token after .ends");
      if (toks.size() == 2 && !iequals(toks[1].text, n_.subckts.back().name)) {
        syntax(line, toks[1].column, ".ends name does not match '" + n_.subckts.back().name + "'");
      }
      current_ = false;
    } else if (head == ".probe") {
      expect_count(line, toks, 2, ".probe <node>");
      add_device(line, Probe{canonical_node(toks[1].text)});
    } else if (head == ".end") {
      if (current_) syntax(line, toks[0].column, ".end inside subckt");
      if (toks.size() > 1) syntax(line, toks[1].column, "unexpected token after .end");
      ended_ = true;
    } else {
      syntax(line, toks[0].column, "unknown directive '" + head + "'");
    }
  }

  void transistor(int line, const std::vector<Token>& toks) {
    expect_count(line, toks, 8, "M<name> <drain> <gate> <source> {nfet|pfet} <n1> <n2> <tubes>");
    const std::string type = lower(toks[4].text);
    if (type != "nfet" && type != "pfet") syntax(line, toks[4].column, "device type must be nfet or pfet");
    int nums[3];
    for (int i = 0; i < 3; ++i) {
      const auto v = parse_int(toks[5 + i].text);
      if (!v) syntax(line, toks[5 + i].column, "expected an integer");
      nums[i] = *v;
    }
    if (nums[0] < 0 || nums[1] < 0) syntax(line, toks[5].column, "chirality indices must be non-negative");
    if (nums[0] == 0 && nums[1] == 0) throw ParseError(Errc::ZeroChirality, line, toks[5].column, "chirality (0,0)");
    Cnfet m;
    m.name = std::string(toks[0].text);
    m.inst.polarity = type == "nfet" ? device::Polarity::Nfet : device::Polarity::Pfet;
    m.inst.chirality = device::Chirality{nums[0], nums[1]};
    m.inst.tubes = nums[2];
    m.inst.drain = canonical_node(toks[1].text);
    m.inst.gate = canonical_node(toks[2].text);
    m.inst.source = canonical_node(toks[3].text);
    add_device(line, std::move(m));
  }

  void capacitor(int line, const std::vector<Token>& toks) {
    expect_count(line, toks, 4, "C<name> <a> <b> <value>[f|p|n]");
    const auto v = parse_capacitance(toks[3].text);
    if (!v) syntax(line, toks[3].column, "bad capacitance '" + std::string(toks[3].text) + "'");
    add_device(line, Capacitor{std::string(toks[0].text), canonical_node(toks[1].text),
                               canonical_node(toks[2].text), *v});
  }

  void source(int line, const std::vector<Token>& toks) {
    expect_count(line, toks, 3, "V<name> <node> <volts>|<ratio>*vdd");
    std::string_view value = toks[2].text;
    bool relative = false;
    if (value.size() > 4 && iequals(value.substr(value.size() - 4), "*vdd")) {
      relative = true;
      value.remove_suffix(4);
    }
    const auto v = parse_double(value);
    if (!v) syntax(line, toks[2].column, "bad source value '" + std::string(toks[2].text) + "'");
    add_device(line, FixedSource{std::string(toks[0].text), canonical_node(toks[1].text), *v, relative});
  }

  void instance(int line, const std::vector<Token>& toks) {
    if (toks.size() < 3) syntax(line, toks.back().column, "expected: X<name> <nodes...> <subckt>");
    Instance x;
    x.name = std::string(toks[0].text);
    for (std::size_t i = 1; i + 1 < toks.size(); ++i) x.connections.push_back(canonical_node(toks[i].text));
    x.subckt = std::string(toks.back().text);
    instances().push_back(std::move(x));
    scope_lines().instances.push_back(line);
  }

  std::string_view text_;
  Netlist n_;
  SourceLines lines_;
  bool current_ = false;
  bool have_title_ = false;
  bool ended_ = false;
};

void emit_devices(std::ostringstream& out, const std::vector<Device>& devices) {
  for (const Device& d : devices) {
    if (auto* m = std::get_if<Cnfet>(&d)) {
      out << m->name << ' ' << m->inst.drain << ' ' << m->inst.gate << ' ' << m->inst.source << ' '
          << device::polarity_name(m->inst.polarity) << ' ' << m->inst.chirality.n1() << ' '
          << m->inst.chirality.n2() << ' ' << m->inst.tubes << '\n';
    } else if (auto* c = std::get_if<Capacitor>(&d)) {
      out << c->name << ' ' << c->a << ' ' << c->b << ' ' << format_capacitance(c->farads) << '\n';
    } else if (auto* v = std::get_if<FixedSource>(&d)) {
      out << v->name << ' ' << v->node << ' ' << format_double(v->value) << (v->relative_to_vdd ? "*vdd" : "")
          << '\n';
    } else if (auto* p = std::get_if<Probe>(&d)) {
      out << ".probe " << p->node << '\n';
    }
  }
}

void emit_instances(std::ostringstream& out, const std::vector<Instance>& instances) {
  for (const Instance& x : instances) {
    out << x.name;
    for (const auto& c : x.connections) out << ' ' << c;
    out << ' ' << x.subckt << '\n';
  }
}

void flatten_into(const Netlist& root, const std::vector<Device>& devices, const std::vector<Instance>& instances,
                  const std::string& prefix, const std::map<std::string, std::string>& port_map, Netlist& out,
                  int depth) {
  if (depth > 64) throw Error(Errc::Semantic, "subckt nesting too deep");
  auto map_node = [&](const std::string& id) -> std::string {
    if (id == kVdd || id == kGnd) return id;
    if (auto it = port_map.find(id); it != port_map.end()) return it->second;
    return prefix + id;
  };
  for (const Device& d : devices) {
    if (auto* m = std::get_if<Cnfet>(&d)) {
      Cnfet copy = *m;
      copy.name = prefix.empty() ? m->name : "M" + prefix + m->name;
      copy.inst.drain = map_node(m->inst.drain);
      copy.inst.gate = map_node(m->inst.gate);
      copy.inst.source = map_node(m->inst.source);
      out.devices.push_back(std::move(copy));
    } else if (auto* c = std::get_if<Capacitor>(&d)) {
      out.devices.push_back(Capacitor{prefix.empty() ? c->name : "C" + prefix + c->name, map_node(c->a),
                                      map_node(c->b), c->farads});
    } else if (auto* v = std::get_if<FixedSource>(&d)) {
      out.devices.push_back(FixedSource{prefix.empty() ? v->name : "V" + prefix + v->name, map_node(v->node),
                                        v->value, v->relative_to_vdd});
    } else if (auto* p = std::get_if<Probe>(&d)) {
      out.devices.push_back(Probe{map_node(p->node)});
    }
  }
  for (const Instance& x : instances) {
    const Subckt* s = root.find_subckt(x.subckt);
    if (!s) throw Error(Errc::UnknownSubckt, "unknown subckt '" + x.subckt + "'");
    std::map<std::string, std::string> child_ports;
    for (std::size_t i = 0; i < s->ports.size() && i < x.connections.size(); ++i) {
      child_ports[s->ports[i]] = map_node(x.connections[i]);
    }
    flatten_into(root, s->devices, s->instances, prefix + x.name + ".", child_ports, out, depth + 1);
  }
}

}  // namespace

const Subckt* Netlist::find_subckt(std::string_view subckt_name) const noexcept {
  for (const auto& s : subckts) {
    if (iequals(s.name, subckt_name)) return &s;
  }
  return nullptr;
}

std::string canonical_node(std::string_view id) {
  if (iequals(id, kVdd)) return std::string(kVdd);
  if (iequals(id, kGnd)) return std::string(kGnd);
  return std::string(id);
}

std::vector<Node> nodes(const Netlist& n) {
  std::set<std::string> ids(n.inputs.begin(), n.inputs.end());
  std::set<std::string> probed;
  for (const Device& d : n.devices) {
    if (auto* m = std::get_if<Cnfet>(&d)) {
      ids.insert({m->inst.drain, m->inst.gate, m->inst.source});
    } else if (auto* c = std::get_if<Capacitor>(&d)) {
      ids.insert({c->a, c->b});
    } else if (auto* v = std::get_if<FixedSource>(&d)) {
      ids.insert(v->node);
    } else if (auto* p = std::get_if<Probe>(&d)) {
      ids.insert(p->node);
      probed.insert(p->node);
    }
  }
  for (const auto& x : n.instances) ids.insert(x.connections.begin(), x.connections.end());
  const std::set<std::string> inputs(n.inputs.begin(), n.inputs.end());
  std::vector<Node> out;
  for (const auto& id : ids) {
    NodeKind kind = NodeKind::Internal;
    if (id == kVdd) kind = NodeKind::SupplyVdd;
    else if (id == kGnd) kind = NodeKind::SupplyGnd;
    else if (inputs.count(id)) kind = NodeKind::Input;
    else if (probed.count(id)) kind = NodeKind::Output;
    out.push_back({id, kind});
  }
  return out;
}

std::vector<std::string> outputs(const Netlist& n) {
  std::vector<std::string> out;
  for (const Device& d : n.devices) {
    if (auto* p = std::get_if<Probe>(&d)) out.push_back(p->node);
  }
  return out;
}

Netlist parse(std::string_view text) { return Parser(text).run(); }

std::string serialize(const Netlist& n) {
  std::ostringstream out;
  for (const auto& note : n.notes) out << "* " << note << '\n';
  out << ".title";
  if (!n.name.empty()) out << ' ' << n.name;
  out << '\n';
  if (!n.inputs.empty()) {
    out << ".input";
    for (const auto& id : n.inputs) out << ' ' << id;
    out << '\n';
  }

  // Children before parents; otherwise definition order.
  std::set<std::string> emitted;
  std::function<void(const Subckt&)> emit = [&](const Subckt& s) {
    if (!emitted.insert(lower(s.name)).second) return;
    for (const auto& x : s.instances) {
      if (const Subckt* child = n.find_subckt(x.subckt)) emit(*child);
    }
    out << ".subckt " << s.name;
    for (const auto& p : s.ports) out << ' ' << p;
    out << '\n';
    emit_devices(out, s.devices);
    emit_instances(out, s.instances);
    out << ".ends\n";
  };
  for (const auto& s : n.subckts) emit(s);

  emit_devices(out, n.devices);
  emit_instances(out, n.instances);
  out << ".end\n";
  return out.str();
}

void validate(const Netlist& n) { Checker(n, nullptr).run(); }

Netlist flatten(const Netlist& n) {
  validate(n);
  Netlist out;
  out.name = n.name;
  out.notes = n.notes;
  out.inputs = n.inputs;
  flatten_into(n, n.devices, n.instances, "", {}, out, 0);
  return out;
}

int count_cnfets(const Netlist& n) {
  const Netlist flat = flatten(n);
  return static_cast<int>(std::count_if(flat.devices.begin(), flat.devices.end(),
                                        [](const Device& d) { return std::holds_alternative<Cnfet>(d); }));
}

int count_capacitors(const Netlist& n) {
  const Netlist flat = flatten(n);
  return static_cast<int>(std::count_if(flat.devices.begin(), flat.devices.end(),
                                        [](const Device& d) { return std::holds_alternative<Capacitor>(d); }));
}

Netlist read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Usage, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void write_file(const std::string& path, const Netlist& n) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Usage, "cannot write '" + path + "'");
  out << serialize(n);
}

}  // namespace trisim::netlist
