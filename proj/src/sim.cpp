#include "trisim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "trisim/error.hpp"

namespace trisim::sim {

namespace {

constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

enum class Role { Fixed, Input, Internal };

struct Fet {
  device::CnfetInstance inst;
  int d;
  int g;
  int s;
  double resistance;
};

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // The smaller index becomes the root so group identity is order-free.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }

  std::vector<int> parent;
};

bool same_level(double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * std::max(1.0, scale); }

}  // namespace

const char* strength_name(Strength s) noexcept {
  switch (s) {
    case Strength::Charged: return "charged";
    case Strength::Driven: return "driven";
    case Strength::Supply: return "supply";
  }
  return "?";
}

void SimConfig::validate() const {
  if (!(vdd > 0.0)) throw Error(Errc::Config, "vdd must be positive");
  if (max_iterations < 8) throw Error(Errc::Config, "max_iterations must be at least 8");
  if (!(r_on_per_tube > 0.0)) throw Error(Errc::Config, "r_on_per_tube must be positive");
  if (!(c_out_load > 0.0)) throw Error(Errc::Config, "c_out_load must be positive");
  if (level_tolerance && !(*level_tolerance > 0.0 && *level_tolerance < vdd / 4.0)) {
    throw Error(Errc::Config, "level_tolerance must lie in (0, vdd/4)");
  }
  device.validate();
}

struct Circuit::Impl {
  SimConfig cfg;
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<Role> role;
  std::vector<double> fixed_level;
  std::vector<Fet> fets;
  std::vector<std::vector<int>> channel_fets;  // fets whose drain or source touches the node
  std::vector<std::vector<std::pair<int, double>>> cap_neighbors;
  std::vector<double> capacitance;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<int> input_index;

  struct Solution {
    std::vector<Signal> sig;
    std::vector<char> on;
    std::vector<int> group;
  };

  bool is_supply(int i) const { return role[i] != Role::Internal; }

  int node(const std::string& id) const {
    auto it = index.find(id);
    if (it == index.end()) throw Error(Errc::UnknownNode, "no node '" + id + "'");
    return it->second;
  }

  void build(const netlist::Netlist& source) {
    const netlist::Netlist flat = netlist::flatten(source);
    for (const auto& n : netlist::nodes(flat)) names.push_back(n.id);
    for (int i = 0; i < static_cast<int>(names.size()); ++i) index[names[i]] = i;
    const int n = static_cast<int>(names.size());
    role.assign(n, Role::Internal);
    fixed_level.assign(n, 0.0);
    channel_fets.assign(n, {});
    cap_neighbors.assign(n, {});
    capacitance.assign(n, 0.0);

    if (auto it = index.find(std::string(netlist::kVdd)); it != index.end()) {
      role[it->second] = Role::Fixed;
      fixed_level[it->second] = cfg.vdd;
    }
    if (auto it = index.find(std::string(netlist::kGnd)); it != index.end()) role[it->second] = Role::Fixed;

    inputs = flat.inputs;
    for (const auto& id : inputs) {
      input_index.push_back(node(id));
      role[input_index.back()] = Role::Input;
    }
    outputs = netlist::outputs(flat);

    for (const auto& d : flat.devices) {
      if (auto* m = std::get_if<netlist::Cnfet>(&d)) {
        fets.push_back({m->inst, node(m->inst.drain), node(m->inst.gate), node(m->inst.source),
                        cfg.r_on_per_tube / m->inst.tubes});
        capacitance[fets.back().g] += device::gate_capacitance(m->inst.chirality, m->inst.tubes, cfg.device);
      } else if (auto* c = std::get_if<netlist::Capacitor>(&d)) {
        const int a = node(c->a);
        const int b = node(c->b);
        cap_neighbors[a].emplace_back(b, c->farads);
        cap_neighbors[b].emplace_back(a, c->farads);
        capacitance[a] += c->farads;
        capacitance[b] += c->farads;
      } else if (auto* v = std::get_if<netlist::FixedSource>(&d)) {
        const int i = node(v->node);
        role[i] = Role::Fixed;
        fixed_level[i] = v->volts(cfg.vdd);
      } else if (auto* p = std::get_if<netlist::Probe>(&d)) {
        capacitance[node(p->node)] += cfg.c_out_load;
      }
    }

    auto key = [](const Fet& f) {
      return std::make_tuple(f.d, f.g, f.s, f.inst.polarity, f.inst.chirality, f.inst.tubes);
    };
    std::stable_sort(fets.begin(), fets.end(), [&](const Fet& a, const Fet& b) { return key(a) < key(b); });
    for (int k = 0; k < static_cast<int>(fets.size()); ++k) {
      channel_fets[fets[k].d].push_back(k);
      if (fets[k].s != fets[k].d) channel_fets[fets[k].s].push_back(k);
    }
    for (auto& nb : cap_neighbors) std::sort(nb.begin(), nb.end());
  }

  std::vector<double> input_levels(const Levels& given) const {
    for (const auto& [id, v] : given) {
      if (std::find(inputs.begin(), inputs.end(), id) == inputs.end()) {
        throw Error(Errc::UnknownNode, "'" + id + "' is not a declared input");
      }
    }
    std::vector<double> out;
    for (const auto& id : inputs) {
      auto it = given.find(id);
      if (it == given.end()) throw Error(Errc::Usage, "input '" + id + "' is not assigned");
      out.push_back(it->second);
    }
    return out;
  }

  bool evaluate(const Fet& f, const std::vector<Signal>& sig) const {
    const Signal& gate = sig[f.g];
    if (!gate.has_level()) return false;
    const Signal& a = sig[f.d];
    const Signal& b = sig[f.s];
    if (!a.has_level() && !b.has_level()) return false;
    double src;
    if (a.has_level() && b.has_level()) {
      src = f.inst.polarity == device::Polarity::Nfet ? std::min(a.volts, b.volts) : std::max(a.volts, b.volts);
    } else {
      src = a.has_level() ? a.volts : b.volts;
    }
    return device::conducts(f.inst, gate.volts, src);
  }

  Solution solve(const std::vector<double>& in_levels, const std::vector<Signal>* previous) const {
    const int n = static_cast<int>(names.size());
    std::vector<Signal> cur = previous ? *previous : std::vector<Signal>(n);
    for (int i = 0; i < n; ++i) {
      if (role[i] == Role::Fixed) cur[i] = Signal::level(fixed_level[i], Strength::Supply);
    }
    for (std::size_t k = 0; k < input_index.size(); ++k) {
      cur[input_index[k]] = Signal::level(in_levels[k], Strength::Supply);
    }

    Solution sol;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      sol.on.assign(fets.size(), 0);
      for (std::size_t k = 0; k < fets.size(); ++k) sol.on[k] = evaluate(fets[k], cur);

      UnionFind uf(n);
      for (std::size_t k = 0; k < fets.size(); ++k) {
        if (sol.on[k] && !is_supply(fets[k].d) && !is_supply(fets[k].s)) uf.unite(fets[k].d, fets[k].s);
      }
      sol.group.assign(n, -1);
      std::map<int, std::vector<int>> members;
      for (int i = 0; i < n; ++i) {
        if (is_supply(i)) continue;
        sol.group[i] = uf.find(i);
        members[sol.group[i]].push_back(i);
      }
      std::map<int, std::vector<double>> drivers;
      for (std::size_t k = 0; k < fets.size(); ++k) {
        if (!sol.on[k]) continue;
        const int d = fets[k].d;
        const int s = fets[k].s;
        if (is_supply(d) && !is_supply(s)) drivers[sol.group[s]].push_back(cur[d].volts);
        if (is_supply(s) && !is_supply(d)) drivers[sol.group[d]].push_back(cur[s].volts);
      }

      std::vector<Signal> next = cur;
      for (const auto& [root, group] : members) {
        const Signal resolved = resolve(group, drivers[root], sol.group, cur);
        for (int i : group) next[i] = resolved;
      }

      bool settled = true;
      for (int i = 0; i < n && settled; ++i) {
        const Signal& a = cur[i];
        const Signal& b = next[i];
        settled = a.state == b.state && a.strength == b.strength &&
                  (!a.has_level() || same_level(a.volts, b.volts, cfg.vdd));
      }
      cur = std::move(next);
      if (settled) {
        sol.sig = std::move(cur);
        return sol;
      }
    }
    throw Error(Errc::NonConvergent, "no fixpoint after " + std::to_string(cfg.max_iterations) + " sweeps");
  }

  Signal resolve(const std::vector<int>& group, std::vector<double>& levels, const std::vector<int>& group_of,
                 const std::vector<Signal>& cur) const {
    if (!levels.empty()) {
      std::sort(levels.begin(), levels.end());
      if (same_level(levels.front(), levels.back(), cfg.vdd)) return Signal::level(levels.front(), Strength::Driven);
      return Signal::x(Strength::Driven);
    }

    // Capacitive coupling to nodes outside the group.
    const int root = group_of[group.front()];
    double q = 0.0;
    double c_total = 0.0;
    bool coupled_x = false;
    for (int i : group) {
      for (const auto& [j, c] : cap_neighbors[i]) {
        if (!is_supply(j) && group_of[j] == root) continue;
        const Signal& s = cur[j];
        if (s.state == Signal::State::X) coupled_x = true;
        if (!s.has_level()) continue;
        q += c * s.volts;
        c_total += c;
      }
    }
    if (coupled_x) return Signal::x(Strength::Charged);
    if (c_total > 0.0) return Signal::level(q / c_total, Strength::Charged);

    // Isolated: share whatever charge the members already hold.
    double weighted = 0.0;
    double weight = 0.0;
    int count = 0;
    double plain = 0.0;
    for (int i : group) {
      const Signal& s = cur[i];
      if (s.state == Signal::State::X) return Signal::x(Strength::Charged);
      if (!s.has_level()) continue;
      weighted += capacitance[i] * s.volts;
      weight += capacitance[i];
      plain += s.volts;
      ++count;
    }
    if (count == 0) return Signal::z();
    return Signal::level(weight > 0.0 ? weighted / weight : plain / count, Strength::Charged);
  }

  // Arrival times -----------------------------------------------------------

  struct PathTree {
    std::map<int, int> parent;             // node -> previous node on the least-resistance path
    std::map<int, double> edge_resistance;  // node -> resistance of the edge to its parent
  };

  PathTree path_tree(const Solution& sol, int root) const {
    // Parallel conducting devices between one node pair combine as conductances.
    std::map<std::pair<int, int>, double> conductance;
    std::set<int> frontier;
    for (std::size_t k = 0; k < fets.size(); ++k) {
      if (!sol.on[k]) continue;
      const int d = fets[k].d;
      const int s = fets[k].s;
      const bool d_in = !is_supply(d) && sol.group[d] == root;
      const bool s_in = !is_supply(s) && sol.group[s] == root;
      if (!d_in && !s_in) continue;
      conductance[{std::min(d, s), std::max(d, s)}] += 1.0 / fets[k].resistance;
      if (is_supply(d)) frontier.insert(d);
      if (is_supply(s)) frontier.insert(s);
    }
    std::map<int, std::vector<std::pair<int, double>>> adj;
    for (const auto& [edge, g] : conductance) {
      adj[edge.first].emplace_back(edge.second, 1.0 / g);
      adj[edge.second].emplace_back(edge.first, 1.0 / g);
    }

    PathTree tree;
    std::map<int, double> dist;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int s : frontier) {
      dist[s] = 0.0;
      pq.push({0.0, s});
    }
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      // Supplies start paths but never relay them.
      if (is_supply(u) && d > 0.0) continue;
      for (const auto& [v, r] : adj[u]) {
        if (is_supply(v)) continue;
        const double nd = d + r;
        auto it = dist.find(v);
        if (it == dist.end() || nd < it->second) {
          dist[v] = nd;
          tree.parent[v] = u;
          tree.edge_resistance[v] = r;
          pq.push({nd, v});
        }
      }
    }
    return tree;
  }

  std::vector<double> arrivals(const Solution& sol) const {
    const int n = static_cast<int>(names.size());
    std::vector<double> arrival(n, kNone);
    std::vector<char> state(n, 0);
    std::map<int, PathTree> trees;

    std::function<double(int)> visit = [&](int i) -> double {
      if (is_supply(i)) return 0.0;
      if (state[i] == 2) return arrival[i];
      if (state[i] == 1) return 0.0;  // feedback: do not count the loop twice
      state[i] = 1;
      const Signal& s = sol.sig[i];
      double result = kNone;
      if (s.has_level() && s.strength == Strength::Driven) {
        const int root = sol.group[i];
        auto it = trees.find(root);
        if (it == trees.end()) it = trees.emplace(root, path_tree(sol, root)).first;
        const PathTree& tree = it->second;
        if (tree.parent.count(i)) {
          std::vector<int> path{i};
          std::vector<double> res;
          while (!is_supply(path.back())) {
            res.push_back(tree.edge_resistance.at(path.back()));
            path.push_back(tree.parent.at(path.back()));
          }
          // path: target ... supply; res[m] joins path[m] to path[m+1].
          double elmore = 0.0;
          double downstream = 0.0;
          for (std::size_t m = 0; m < res.size(); ++m) {
            downstream += capacitance[path[m]];
            elmore += res[m] * downstream;
          }
          double gates = 0.0;
          for (std::size_t m = 0; m + 1 < path.size(); ++m) {
            const int a = std::min(path[m], path[m + 1]);
            const int b = std::max(path[m], path[m + 1]);
            for (int k : channel_fets[path[m]]) {
              if (!sol.on[k]) continue;
              if (std::min(fets[k].d, fets[k].s) != a || std::max(fets[k].d, fets[k].s) != b) continue;
              const double g = visit(fets[k].g);
              if (!std::isnan(g)) gates = std::max(gates, g);
            }
          }
          result = gates + elmore;
        }
      } else if (s.has_level()) {
        double latest = kNone;
        for (const auto& [j, c] : cap_neighbors[i]) {
          if (!sol.sig[j].has_level()) continue;
          const double a = visit(j);
          if (!std::isnan(a)) latest = std::isnan(latest) ? a : std::max(latest, a);
        }
        result = latest;
      }
      arrival[i] = result;
      state[i] = 2;
      return result;
    };
    for (int i = 0; i < n; ++i) {
      arrival[i] = visit(i);
    }
    return arrival;
  }

  std::vector<Signal> to_vector(const NodeSignals& m) const {
    std::vector<Signal> out(names.size());
    for (const auto& [id, s] : m) {
      if (auto it = index.find(id); it != index.end()) out[it->second] = s;
    }
    return out;
  }

  NodeSignals to_map(const std::vector<Signal>& v) const {
    NodeSignals out;
    for (std::size_t i = 0; i < names.size(); ++i) out.emplace(names[i], v[i]);
    return out;
  }
};

Circuit::Circuit(const netlist::Netlist& n, const SimConfig& cfg) : impl_(std::make_unique<Impl>()) {
  cfg.validate();
  impl_->cfg = cfg;
  impl_->build(n);
}

Circuit::~Circuit() = default;
Circuit::Circuit(Circuit&&) noexcept = default;
Circuit& Circuit::operator=(Circuit&&) noexcept = default;

const SimConfig& Circuit::config() const noexcept { return impl_->cfg; }
const std::vector<std::string>& Circuit::inputs() const noexcept { return impl_->inputs; }
const std::vector<std::string>& Circuit::outputs() const noexcept { return impl_->outputs; }
bool Circuit::has_node(const std::string& id) const noexcept { return impl_->index.count(id) != 0; }

double Circuit::node_capacitance(const std::string& id) const { return impl_->capacitance[impl_->node(id)]; }

NodeSignals Circuit::steady_state(const Levels& inputs) const {
  return impl_->to_map(impl_->solve(impl_->input_levels(inputs), nullptr).sig);
}

Circuit::Settled Circuit::settle(const Levels& inputs, const NodeSignals* previous) const {
  const auto levels = impl_->input_levels(inputs);
  std::vector<Signal> prev;
  if (previous) prev = impl_->to_vector(*previous);
  const auto sol = impl_->solve(levels, previous ? &prev : nullptr);
  const auto arr = impl_->arrivals(sol);
  Settled out;
  out.signals = impl_->to_map(sol.sig);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!std::isnan(arr[i])) out.arrival.emplace(impl_->names[i], arr[i]);
  }
  return out;
}

NodeSignals steady_state(const netlist::Netlist& n, const Levels& inputs, const SimConfig& cfg) {
  return Circuit(n, cfg).steady_state(inputs);
}

std::vector<std::string> contention_nodes(const NodeSignals& s) {
  std::vector<std::string> out;
  for (const auto& [id, sig] : s) {
    if (sig.state == Signal::State::X) out.push_back(id);
  }
  return out;
}

std::vector<Levels> ternary_assignments(const std::vector<std::string>& inputs, double vdd) {
  constexpr std::size_t kMaxInputs = 10;
  if (inputs.size() > kMaxInputs) {
    throw Error(Errc::Usage, "too many inputs to enumerate (" + std::to_string(inputs.size()) + ")");
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < inputs.size(); ++i) total *= 3;
  std::vector<Levels> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    Levels l;
    std::size_t rest = code;
    for (std::size_t i = inputs.size(); i-- > 0;) {
      l[inputs[i]] = vdd * static_cast<double>(rest % 3) / 2.0;
      rest /= 3;
    }
    out.push_back(std::move(l));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool changed(const Signal& a, const Signal& b, double vdd) {
  if (a.state != b.state) return true;
  return a.has_level() && !same_level(a.volts, b.volts, vdd);
}

double transition_energy(const Signal& from, const Signal& to, double c) {
  if (!from.has_level() || !to.has_level()) return 0.0;
  const double dv = to.volts - from.volts;
  return 0.5 * c * dv * dv;
}

}  // namespace

Waveform transient(const Circuit& c, const std::vector<StimulusEdge>& stimulus) {
  Waveform w;
  w.outputs = c.outputs();
  if (stimulus.empty()) return w;
  for (std::size_t k = 1; k < stimulus.size(); ++k) {
    if (!(stimulus[k].time > stimulus[k - 1].time)) {
      throw Error(Errc::Usage, "stimulus times must be strictly increasing");
    }
  }
  const double vdd = c.config().vdd;

  auto settle_at = [&](const StimulusEdge& e, const NodeSignals* prev) {
    try {
      return c.settle(e.inputs, prev);
    } catch (const Error& err) {
      std::string what = err.what();
      what = what.substr(what.find(": ") + 2);
      std::ostringstream msg;
      msg << "at t=" << e.time << " s: " << what;
      throw Error(err.code(), msg.str());
    }
  };

  NodeSignals state = settle_at(stimulus.front(), nullptr).signals;
  std::map<std::string, std::size_t> last;
  std::vector<bool> dropped;
  for (std::size_t k = 1; k < stimulus.size(); ++k) {
    const StimulusEdge& edge = stimulus[k];
    auto settled = settle_at(edge, &state);
    for (const auto& [id, sig] : settled.signals) {
      if (sig.strength == Strength::Supply) continue;
      const Signal& before = state.at(id);
      if (!changed(before, sig, vdd)) continue;
      auto it = settled.arrival.find(id);
      const double delay = it == settled.arrival.end() ? 0.0 : it->second;
      const double cap = c.node_capacitance(id);
      Event ev{edge.time + delay, id, before, sig, transition_energy(before, sig, cap), delay};
      auto prev = last.find(id);
      if (prev != last.end() && !dropped[prev->second] && w.events[prev->second].time >= ev.time) {
        // Inertial: the newer transition swallows the pending one.
        Event& old = w.events[prev->second];
        ev.old_level = old.old_level;
        ev.energy = transition_energy(ev.old_level, sig, cap);
        dropped[prev->second] = true;
        if (!changed(ev.old_level, sig, vdd)) {
          last.erase(prev);
          continue;
        }
      }
      last[id] = w.events.size();
      w.events.push_back(std::move(ev));
      dropped.push_back(false);
    }
    state = std::move(settled.signals);
  }

  std::vector<Event> kept;
  for (std::size_t i = 0; i < w.events.size(); ++i) {
    if (!dropped[i]) kept.push_back(std::move(w.events[i]));
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const Event& a, const Event& b) { return std::tie(a.time, a.node) < std::tie(b.time, b.node); });
  w.events = std::move(kept);
  return w;
}

Waveform transient(const netlist::Netlist& n, const std::vector<StimulusEdge>& stimulus, const SimConfig& cfg) {
  return transient(Circuit(n, cfg), stimulus);
}

double delay_estimate(const Circuit& c, const std::string& output) {
  if (!c.has_node(output)) throw Error(Errc::UnknownNode, "no node '" + output + "'");
  double worst = kNone;
  for (const auto& levels : ternary_assignments(c.inputs(), c.config().vdd)) {
    const auto settled = c.settle(levels);
    const Signal& s = settled.signals.at(output);
    if (!s.has_level() || s.strength == Strength::Charged) continue;
    auto it = settled.arrival.find(output);
    if (it == settled.arrival.end()) continue;
    worst = std::isnan(worst) ? it->second : std::max(worst, it->second);
  }
  if (std::isnan(worst)) throw Error(Errc::NoPath, "'" + output + "' is never driven");
  return worst;
}

double delay_estimate(const netlist::Netlist& n, const std::string& output, const SimConfig& cfg) {
  const auto probed = netlist::outputs(n);
  if (std::find(probed.begin(), probed.end(), output) != probed.end()) {
    return delay_estimate(Circuit(n, cfg), output);
  }
  netlist::Netlist loaded = n;
  loaded.devices.push_back(netlist::Probe{output});
  return delay_estimate(Circuit(loaded, cfg), output);
}

Metrics measure(const Waveform& w, double duration) {
  if (!(duration > 0.0)) throw Error(Errc::OutOfRange, "duration must be positive");
  const std::set<std::string> outs(w.outputs.begin(), w.outputs.end());
  Metrics m;
  double energy = 0.0;
  for (const auto& e : w.events) {
    energy += e.energy;
    if (outs.empty() || outs.count(e.node)) m.worst_delay = std::max(m.worst_delay, e.delay);
  }
  m.avg_power = energy / duration;
  m.pdp = m.avg_power * m.worst_delay;
  return m;
}

namespace {

std::string level_text(const Signal& s) {
  if (s.state == Signal::State::X) return "x";
  if (s.state == Signal::State::Z) return "z";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", s.volts);
  return buf;
}

char vcd_value(const Signal& s, double vdd, double tol) {
  if (s.state == Signal::State::X) return 'x';
  if (s.state == Signal::State::Z) return 'z';
  const double step = vdd / 2.0;
  const long k = std::lround(s.volts / step);
  if (k < 0 || k > 2 || std::abs(s.volts - k * step) > tol) return 'x';
  return static_cast<char>('0' + k);
}

std::string vcd_id(std::size_t k) {
  std::string id;
  do {
    id.push_back(static_cast<char>('!' + k % 94));
    k /= 94;
  } while (k > 0);
  return id;
}

}  // namespace

std::string waveform_csv(const Waveform& w) {
  std::ostringstream out;
  out << "time_s,node,level_v,energy_j\n";
  char buf[64];
  for (const auto& e : w.events) {
    std::snprintf(buf, sizeof buf, "%.6e", e.time);
    out << buf << ',' << e.node << ',' << level_text(e.new_level) << ',';
    std::snprintf(buf, sizeof buf, "%.6e", e.energy);
    out << buf << '\n';
  }
  return out.str();
}

std::string waveform_vcd(const Waveform& w, const SimConfig& cfg) {
  std::map<std::string, std::string> ids;
  std::map<std::string, Signal> initial;
  for (const auto& e : w.events) {
    if (!initial.count(e.node)) initial.emplace(e.node, e.old_level);
  }
  std::size_t k = 0;
  for (const auto& [node, sig] : initial) ids[node] = vcd_id(k++);

  std::ostringstream out;
  out << "$comment ternary levels 0/1/2, x = contention or between levels $end\n";
  out << "$timescale 1fs $end\n$scope module top $end\n";
  for (const auto& [node, id] : ids) out << "$var wire 1 " << id << ' ' << node << " $end\n";
  out << "$upscope $end\n$enddefinitions $end\n$dumpvars\n";
  const double tol = cfg.tolerance();
  for (const auto& [node, sig] : initial) out << vcd_value(sig, cfg.vdd, tol) << ids[node] << '\n';
  out << "$end\n";
  long long current = -1;
  for (const auto& e : w.events) {
    const long long t = std::llround(e.time * 1e15);
    if (t != current) {
      out << '#' << t << '\n';
      current = t;
    }
    out << vcd_value(e.new_level, cfg.vdd, tol) << ids[e.node] << '\n';
  }
  return out.str();
}

}  // namespace trisim::sim
