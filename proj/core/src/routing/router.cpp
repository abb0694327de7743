#include "nassc/routing/router.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "nassc/error.hpp"
#include "nassc/ir/metrics.hpp"

namespace nassc::routing {

using commutation::DecompositionLabel;
using ir::Gate;
using ir::NodeId;
using topology::Edge;

namespace {

constexpr double kTieTol = 1e-9;
constexpr std::uint64_t kRouteSeedMix = 0x9E3779B97F4A7C15ULL;

using MinHeap = std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>>;

}  // namespace

OptFlags RouterConfig::effective_opts() const {
  if (algorithm == Algorithm::SABRE) return OptFlags{false, false, false};
  return opts;
}

void RouterConfig::validate() const {
  if (!(extended_weight >= 0.0)) throw ConfigError("extended_weight must be >= 0");
  if (traversals < 1) throw ConfigError("traversals must be >= 1");
  if (post_rounds < 0) throw ConfigError("post_rounds must be >= 0");
  if (distance == DistanceKind::Noise && !noise) throw ConfigError("noise distance needs a noise profile");
}

topology::DistanceMatrix distance_matrix(const topology::CouplingMap& map, const RouterConfig& cfg) {
  if (cfg.distance == DistanceKind::Noise) {
    if (!cfg.noise) throw ConfigError("noise distance needs a noise profile");
    return topology::noise_distance(map, *cfg.noise);
  }
  return topology::all_pairs_distance(map);
}

ir::Circuit pad_to_device(const ir::Circuit& c, const topology::CouplingMap& map) {
  if (c.num_qubits > map.num_qubits()) {
    throw TooFewPhysicalQubits("circuit needs " + std::to_string(c.num_qubits) + " qubits, device has " +
                               std::to_string(map.num_qubits()));
  }
  ir::Circuit out = c;
  out.num_qubits = map.num_qubits();
  return out;
}

double predicted_reduction(const SwapCandidate& c) {
  // A CX cancelled against the SWAP on its own pair sits in the open block of
  // that pair, so C_2q already counts it.
  return static_cast<double>(std::max(c.c2q, c.ccommute1) + c.ccommute2);
}

double heuristic_cost(double front_sum, std::size_t front_size, double ext_sum, std::size_t ext_size,
                      double reduction, double extended_weight) {
  double h = front_size > 0 ? (3.0 * front_sum - reduction) / static_cast<double>(front_size) : 0.0;
  if (ext_size > 0) h += extended_weight * ext_sum / static_cast<double>(ext_size);
  return h;
}

std::vector<Edge> enumerate_candidates(const std::vector<Gate>& front, const QubitMapping& mapping,
                                       const topology::CouplingMap& map) {
  std::vector<Edge> out;
  for (const Gate& g : front) {
    if (!ir::is_two_qubit_unitary(g)) continue;
    const int p0 = mapping.phys(g.qubits[0]), p1 = mapping.phys(g.qubits[1]);
    if (map.coupled(p0, p1)) continue;
    for (int p : {p0, p1}) {
      for (int nb : map.neighbors(p)) out.emplace_back(std::min(p, nb), std::max(p, nb));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SwapSearch::SwapSearch(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg,
                       const topology::DistanceMatrix& dist, const QubitMapping& initial, bool emit,
                       std::uint64_t seed)
    : map_(map),
      cfg_(cfg),
      opts_(cfg.effective_opts()),
      dist_(dist),
      logical_(ir::build_dag(circuit)),
      initial_(initial),
      mapping_(initial),
      emit_(emit),
      resolved_(map.num_qubits(), circuit.num_clbits),
      blocks_(map.num_qubits()),
      rng_(seed) {
  if (circuit.num_qubits != map.num_qubits() || initial.size() != map.num_qubits()) {
    throw ConfigError("circuit and layout must be padded to the device size");
  }
  remaining_.assign(logical_.num_nodes_total(), 0);
  visit_stamp_.assign(logical_.num_nodes_total(), 0);
  for (NodeId n = 0; n < static_cast<NodeId>(logical_.num_nodes_total()); ++n) {
    if (!logical_.is_op(n)) continue;
    remaining_[static_cast<std::size_t>(n)] = static_cast<int>(logical_.predecessors(n).size());
    if (remaining_[static_cast<std::size_t>(n)] == 0) front_.push_back(n);
  }
  const std::size_t gates = std::max<std::size_t>(1, logical_.num_ops());
  iteration_cap_ = 10 * static_cast<std::size_t>(map.num_qubits()) * gates;
}

bool SwapSearch::executable(NodeId n) const {
  const Gate& g = logical_.node(n).gate;
  if (!ir::is_two_qubit_unitary(g)) return true;
  return map_.coupled(mapping_.phys(g.qubits[0]), mapping_.phys(g.qubits[1]));
}

void SwapSearch::append_resolved(Gate g) {
  const NodeId id = resolved_.append(std::move(g));
  if (opts_.b_2q) blocks_.on_append(resolved_, id);
  if (opts_.b_commute1 || opts_.b_commute2) commute_.on_append(resolved_, id);
}

void SwapSearch::emit_gate(Gate g) {
  for (int& q : g.qubits) q = mapping_.phys(q);
  g.origin = -1;
  append_resolved(std::move(g));
}

std::size_t SwapSearch::advance() {
  MinHeap heap(std::greater<>{}, front_);
  std::vector<NodeId> waiting;
  std::size_t count = 0;
  while (!heap.empty()) {
    const NodeId n = heap.top();
    heap.pop();
    if (!executable(n)) {
      waiting.push_back(n);
      continue;
    }
    if (emit_) emit_gate(logical_.node(n).gate);
    ++count;
    for (NodeId s : logical_.successors(n)) {
      if (--remaining_[static_cast<std::size_t>(s)] == 0) heap.push(s);
    }
  }
  std::sort(waiting.begin(), waiting.end());
  front_ = std::move(waiting);
  if (count > 0) {
    extended_dirty_ = true;
    stalled_ = 0;
    last_swap_.reset();
  }
  return count;
}

const std::vector<NodeId>& SwapSearch::extended() {
  if (!extended_dirty_) return extended_;
  extended_dirty_ = false;
  extended_.clear();
  if (cfg_.extended_size == 0) return extended_;
  ++stamp_;
  MinHeap heap;
  auto visit = [&](NodeId n) {
    for (NodeId s : logical_.successors(n)) {
      auto& st = visit_stamp_[static_cast<std::size_t>(s)];
      if (st == stamp_) continue;
      st = stamp_;
      heap.push(s);
    }
  };
  for (NodeId f : front_) visit(f);
  while (!heap.empty() && extended_.size() < cfg_.extended_size) {
    const NodeId n = heap.top();
    heap.pop();
    if (ir::is_two_qubit_unitary(logical_.node(n).gate)) extended_.push_back(n);
    visit(n);
  }
  return extended_;
}

int SwapSearch::cached_c2q(int block) {
  const std::uint64_t v = blocks_.version(block);
  auto it = c2q_cache_.find(block);
  if (it != c2q_cache_.end() && it->second.first == v) return it->second.second;
  const int value = synthesis::c2q_reduction(blocks_.unitary(resolved_, block));
  c2q_cache_[block] = {v, value};
  return value;
}

SwapCandidate SwapSearch::score(const Edge& e) {
  const int p = e.first, q = e.second;
  auto after = [&](int l) {
    const int ph = mapping_.phys(l);
    return ph == p ? q : (ph == q ? p : ph);
  };
  auto dist_sum = [&](const std::vector<NodeId>& nodes) {
    double sum = 0.0;
    for (NodeId n : nodes) {
      const Gate& g = logical_.node(n).gate;
      sum += dist_(after(g.qubits[0]), after(g.qubits[1]));
    }
    return sum;
  };

  SwapCandidate c;
  c.edge = e;
  if (emit_) {
    if (opts_.b_2q) {
      const int b = blocks_.open_block(p);
      if (b >= 0 && b == blocks_.open_block(q)) {
        const auto& pair = blocks_.blocks()[static_cast<std::size_t>(b)].qubit_pair;
        if (std::minmax(pair.first, pair.second) == std::minmax(p, q)) c.c2q = cached_c2q(b);
      }
    }
    const auto lookup = [this](NodeId n) {
      auto it = labels_.find(n);
      return it == labels_.end() ? DecompositionLabel{} : it->second;
    };
    if (opts_.b_commute1) {
      const auto pr = commutation::predict_ccommute1(resolved_, p, q, lookup);
      c.ccommute1 = pr.value;
      if (pr.value > 0) c.label = pr.label;
    }
    if (c.ccommute1 == 0 && opts_.b_commute2) {
      const auto pr = commutation::predict_ccommute2(resolved_, p, q, lookup);
      c.ccommute2 = pr.value;
      if (pr.value > 0) {
        c.label = pr.label;
        c.partner = pr.partner;
        c.partner_label = pr.partner_label;
      }
    }
  }
  const auto& ext = extended();
  c.cost = heuristic_cost(dist_sum(front_), front_.size(), dist_sum(ext), ext.size(), predicted_reduction(c),
                          cfg_.extended_weight);
  return c;
}

std::vector<SwapCandidate> SwapSearch::candidates() {
  std::vector<Gate> gates;
  gates.reserve(front_.size());
  for (NodeId n : front_) gates.push_back(logical_.node(n).gate);
  std::vector<Edge> edges = enumerate_candidates(gates, mapping_, map_);
  // Undoing the previous SWAP with nothing executed in between is pointless.
  if (last_swap_ && edges.size() > 1) {
    edges.erase(std::remove(edges.begin(), edges.end(), *last_swap_), edges.end());
  }
  std::vector<SwapCandidate> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.push_back(score(e));
  return out;
}

const SwapCandidate& SwapSearch::choose(const std::vector<SwapCandidate>& scored) {
  if (scored.empty()) throw NonTermination("no SWAP candidates for a blocked front layer");
  double best = scored.front().cost;
  for (const auto& c : scored) best = std::min(best, c.cost);
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (scored[i].cost <= best + kTieTol) ties.push_back(i);
  }
  const std::size_t pick = ties.size() == 1 ? 0 : static_cast<std::size_t>(rng_() % ties.size());
  return scored[ties[pick]];
}

void SwapSearch::insert_swap(const SwapCandidate& c) {
  const int p = c.edge.first, q = c.edge.second;
  if (emit_) {
    std::vector<Gate> moved[2];
    if (c.label.labeled()) {
      const int wires[2] = {p, q};
      for (int i = 0; i < 2; ++i) {
        for (NodeId m = resolved_.last_on(wires[i]);
             resolved_.is_op(m) && ir::is_single_qubit_unitary(resolved_.node(m).gate);
             m = resolved_.last_on(wires[i])) {
          Gate g = resolved_.node(m).gate;
          g.qubits[0] = wires[1 - i];
          moved[i].push_back(std::move(g));
          if (opts_.b_2q) blocks_.on_remove(resolved_, m);
          resolved_.remove(m);
        }
        std::reverse(moved[i].begin(), moved[i].end());
      }
    }
    append_resolved(ir::swap(p, q));
    const NodeId id = resolved_.last_on(p);
    if (c.label.labeled()) labels_[id] = c.label;
    if (c.partner != ir::kNoNode && !labels_.count(c.partner)) labels_[c.partner] = c.partner_label;
    for (auto& run : moved) {
      for (Gate& g : run) append_resolved(std::move(g));
    }
  }
  chosen_.push_back(c);
  mapping_.swap_physical(p, q);
  if (++iterations_ > iteration_cap_) {
    throw NonTermination("routing exceeded " + std::to_string(iteration_cap_) + " SWAP insertions");
  }
}

void SwapSearch::apply(const SwapCandidate& c) {
  insert_swap(c);
  ++stalled_;
  last_swap_ = c.edge;
}

void SwapSearch::force_route() {
  NodeId target = ir::kNoNode;
  double best = 0.0;
  for (NodeId n : front_) {
    const Gate& g = logical_.node(n).gate;
    const double d = dist_(mapping_.phys(g.qubits[0]), mapping_.phys(g.qubits[1]));
    if (target == ir::kNoNode || d < best) {
      target = n;
      best = d;
    }
  }
  const Gate& g = logical_.node(target).gate;
  const auto path = topology::shortest_path(map_, mapping_.phys(g.qubits[0]), mapping_.phys(g.qubits[1]));
  for (std::size_t i = 0; i + 2 < path.size(); ++i) {
    SwapCandidate c;
    c.edge = std::minmax(path[i], path[i + 1]);
    insert_swap(c);
  }
  stalled_ = 0;
  last_swap_.reset();
}

void SwapSearch::run() {
  const std::size_t stall_limit = 10 * static_cast<std::size_t>(map_.num_qubits());
  advance();
  while (!done()) {
    if (stalled_ >= stall_limit) {
      force_route();
    } else {
      const auto scored = candidates();
      apply(choose(scored));
    }
    advance();
  }
}

RoutedDag SwapSearch::take_result() {
  RoutedDag r;
  r.dag = std::move(resolved_);
  r.labels = std::move(labels_);
  r.chosen = std::move(chosen_);
  r.initial_mapping = initial_;
  r.final_mapping = mapping_;
  return r;
}

QubitMapping initial_mapping(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg) {
  cfg.validate();
  const ir::Circuit forward = pad_to_device(circuit, map);
  const ir::Circuit backward = ir::reversed(forward);
  RouterConfig layout_cfg = cfg;
  layout_cfg.algorithm = Algorithm::SABRE;
  const auto dist = distance_matrix(map, cfg);
  std::mt19937_64 rng(cfg.seed);
  QubitMapping mapping = QubitMapping::random(map.num_qubits(), rng);
  for (int t = 0; t + 1 < cfg.traversals; ++t) {
    SwapSearch s(t % 2 == 0 ? forward : backward, map, layout_cfg, dist, mapping, false, rng());
    s.run();
    mapping = s.mapping();
  }
  return mapping;
}

QubitMapping starting_layout(const ir::Circuit& padded, const topology::CouplingMap& map, const RouterConfig& cfg) {
  if (!cfg.initial_layout) return initial_mapping(padded, map, cfg);
  std::vector<int> l2p = *cfg.initial_layout;
  const int n = map.num_qubits();
  if (static_cast<int>(l2p.size()) > n) throw ConfigError("initial layout longer than the device");
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (int p : l2p) {
    if (p < 0 || p >= n || used[static_cast<std::size_t>(p)]) throw ConfigError("initial layout is not injective");
    used[static_cast<std::size_t>(p)] = 1;
  }
  for (int p = 0; p < n && static_cast<int>(l2p.size()) < n; ++p) {
    if (!used[static_cast<std::size_t>(p)]) l2p.push_back(p);
  }
  return QubitMapping(std::move(l2p));
}

RoutedDag route_dag(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg,
                    const QubitMapping& initial) {
  cfg.validate();
  const auto dist = distance_matrix(map, cfg);
  SwapSearch s(circuit, map, cfg, dist, initial, true, cfg.seed ^ kRouteSeedMix);
  s.run();
  return s.take_result();
}

ir::Circuit decompose_swaps(const ir::CircuitDag& dag, const std::map<NodeId, DecompositionLabel>& labels) {
  ir::Circuit out;
  out.num_qubits = dag.num_qubits();
  out.num_clbits = dag.num_clbits();
  int index = 0;
  for (NodeId n : dag.topological_order()) {
    const Gate& g = dag.node(n).gate;
    if (g.kind != ir::GateKind::SWAP) {
      out.add(g);
      continue;
    }
    const int a = g.qubits[0], b = g.qubits[1];
    auto it = labels.find(n);
    const int c = commutation::first_control(a, b, it == labels.end() ? DecompositionLabel{} : it->second);
    const int t = c == a ? b : a;
    for (Gate cx : {ir::cx(c, t), ir::cx(t, c), ir::cx(c, t)}) {
      cx.origin = index;
      out.add(std::move(cx));
    }
    ++index;
  }
  return out;
}

RoutingResult route(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg) {
  const ir::Circuit padded = pad_to_device(circuit, map);
  const QubitMapping layout = starting_layout(padded, map, cfg);
  RoutedDag routed = route_dag(padded, map, cfg, layout);
  RoutingResult r;
  r.circuit = decompose_swaps(routed.dag, routed.labels);
  r.initial_mapping = routed.initial_mapping;
  r.final_mapping = routed.final_mapping;
  r.stats.swaps_inserted = routed.chosen.size();
  for (const auto& c : routed.chosen) {
    if (c.c2q > 0) ++r.stats.swaps_predicted_2q;
    if (c.ccommute1 > 0 || c.ccommute2 > 0) ++r.stats.swaps_predicted_commute;
  }
  const auto m = ir::metrics(r.circuit);
  r.stats.cnot_total = m.cnot_count;
  r.stats.depth_total = m.depth;
  return r;
}

}  // namespace nassc::routing
