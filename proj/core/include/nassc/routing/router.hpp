#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "nassc/commutation/commutation.hpp"
#include "nassc/ir/circuit.hpp"
#include "nassc/ir/dag.hpp"
#include "nassc/routing/mapping.hpp"
#include "nassc/synthesis/blocks.hpp"
#include "nassc/topology/coupling_map.hpp"

namespace nassc::routing {

enum class Algorithm { SABRE, NASSC };
enum class DistanceKind { Hops, Noise };

struct OptFlags {
  bool b_2q = true;
  bool b_commute1 = true;
  bool b_commute2 = true;
};

struct RouterConfig {
  Algorithm algorithm = Algorithm::NASSC;
  std::size_t extended_size = 20;
  double extended_weight = 0.5;
  OptFlags opts;
  std::uint64_t seed = 0;
  DistanceKind distance = DistanceKind::Hops;
  std::optional<topology::NoiseProfile> noise;
  int traversals = 3;
  // Logical -> physical; skips the layout search when set. Shorter vectors
  // are padded with the unused physical qubits in increasing order.
  std::optional<std::vector<int>> initial_layout;
  int post_rounds = 10;

  // Flags with the algorithm applied (SABRE clears all of them).
  OptFlags effective_opts() const;
  void validate() const;
};

struct SwapCandidate {
  topology::Edge edge{-1, -1};
  int c2q = 0;
  int ccommute1 = 0;
  int ccommute2 = 0;
  commutation::DecompositionLabel label;
  // Earlier SWAP of a sandwich and the label it must carry.
  ir::NodeId partner = ir::kNoNode;
  commutation::DecompositionLabel partner_label;
  double cost = 0.0;
};

struct RoutingStats {
  std::size_t swaps_inserted = 0;
  std::size_t cnot_total_orig = 0;
  std::size_t depth_orig = 0;
  std::size_t cnot_total = 0;
  long cnot_add = 0;
  std::size_t depth_total = 0;
  long depth_add = 0;
  std::size_t swaps_opt_by_2q = 0;
  std::size_t swaps_opt_by_commute = 0;
  // SWAPs chosen while a predictor reported a reduction.
  std::size_t swaps_predicted_2q = 0;
  std::size_t swaps_predicted_commute = 0;
  double wall_time_s = 0.0;
};

struct RoutingResult {
  ir::Circuit circuit;
  QubitMapping initial_mapping;
  QubitMapping final_mapping;
  RoutingStats stats;
};

// Output of the SWAP search before decomposition.
struct RoutedDag {
  ir::CircuitDag dag;  // physical, SWAP nodes kept
  std::map<ir::NodeId, commutation::DecompositionLabel> labels;
  std::vector<SwapCandidate> chosen;  // in insertion order
  QubitMapping initial_mapping;
  QubitMapping final_mapping;
};

topology::DistanceMatrix distance_matrix(const topology::CouplingMap& map, const RouterConfig& cfg);

// Pads the circuit to the device size; throws TooFewPhysicalQubits.
ir::Circuit pad_to_device(const ir::Circuit& c, const topology::CouplingMap& map);

QubitMapping initial_mapping(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg);

// Coupling edges incident to the physical qubits of the given unsatisfied
// logical gates, sorted and deduplicated.
std::vector<topology::Edge> enumerate_candidates(const std::vector<ir::Gate>& front, const QubitMapping& mapping,
                                                 const topology::CouplingMap& map);

// Summed C_k of a scored candidate.
double predicted_reduction(const SwapCandidate& c);

// H for one candidate: sums of front/extended distances after the tentative
// SWAP, their sizes and the summed predicted reduction.
double heuristic_cost(double front_sum, std::size_t front_size, double ext_sum, std::size_t ext_size,
                      double reduction, double extended_weight);

// One routing pass. With emit = false only the mapping evolves (layout search).
class SwapSearch {
 public:
  SwapSearch(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg,
             const topology::DistanceMatrix& dist, const QubitMapping& initial, bool emit, std::uint64_t seed);

  // Executes every executable front gate; returns how many ran.
  std::size_t advance();
  bool done() const { return front_.empty(); }

  const std::vector<ir::NodeId>& front() const { return front_; }
  const std::vector<ir::NodeId>& extended();
  const QubitMapping& mapping() const { return mapping_; }
  const ir::CircuitDag& logical() const { return logical_; }
  const ir::CircuitDag& resolved() const { return resolved_; }

  std::vector<SwapCandidate> candidates();
  const SwapCandidate& choose(const std::vector<SwapCandidate>& scored);
  void apply(const SwapCandidate& c);

  // Runs the loop to completion.
  void run();

  RoutedDag take_result();

 private:
  bool executable(ir::NodeId n) const;
  void emit_gate(ir::Gate g);
  void append_resolved(ir::Gate g);
  SwapCandidate score(const topology::Edge& e);
  int cached_c2q(int block);
  void force_route();
  void insert_swap(const SwapCandidate& c);

  const topology::CouplingMap& map_;
  RouterConfig cfg_;
  OptFlags opts_;
  topology::DistanceMatrix dist_;
  ir::CircuitDag logical_;
  std::vector<int> remaining_;
  std::vector<ir::NodeId> front_;
  std::vector<ir::NodeId> extended_;
  bool extended_dirty_ = true;
  std::vector<std::uint32_t> visit_stamp_;
  std::uint32_t stamp_ = 0;
  QubitMapping initial_;
  QubitMapping mapping_;
  bool emit_;
  ir::CircuitDag resolved_;
  synthesis::BlockTracker blocks_;
  commutation::CommuteTracker commute_;
  std::map<ir::NodeId, commutation::DecompositionLabel> labels_;
  std::vector<SwapCandidate> chosen_;
  std::unordered_map<int, std::pair<std::uint64_t, int>> c2q_cache_;
  std::mt19937_64 rng_;
  std::optional<topology::Edge> last_swap_;
  std::size_t stalled_ = 0;
  std::size_t iterations_ = 0;
  std::size_t iteration_cap_ = 0;
};

// The layered search from a given layout. The circuit must already be padded.
RoutedDag route_dag(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg,
                    const QubitMapping& initial);

// Each SWAP becomes three CX following its label (unlabeled: control on the
// lower index). The CXs carry origin = SWAP index in topological order.
ir::Circuit decompose_swaps(const ir::CircuitDag& dag, const std::map<ir::NodeId, commutation::DecompositionLabel>& labels);

// cfg.initial_layout when set, otherwise initial_mapping().
QubitMapping starting_layout(const ir::Circuit& padded, const topology::CouplingMap& map, const RouterConfig& cfg);

// Layout search, SWAP search and decomposition; no optimization passes.
RoutingResult route(const ir::Circuit& circuit, const topology::CouplingMap& map, const RouterConfig& cfg);

}  // namespace nassc::routing
