#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nassc/ir/circuit.hpp"
#include "nassc/ir/dag.hpp"

namespace nassc::commutation {

// Both the commute-set size and the predictor look-back window.
inline constexpr std::size_t kSetCap = 20;

enum class Orientation { FirstCxControlOnA, FirstCxControlOnB, Unlabeled };
enum class Rationale { Commute1, Commute2, None };

struct DecompositionLabel {
  Orientation orientation = Orientation::Unlabeled;
  Rationale rationale = Rationale::None;

  bool labeled() const { return orientation != Orientation::Unlabeled; }
  bool operator==(const DecompositionLabel&) const = default;
};

// Label whose first CX is controlled on `control` for a SWAP on (a, b).
DecompositionLabel label_for(int a, int b, int control, Rationale why);
// Control qubit of the first CX for a SWAP on (a, b); lower index if unlabeled.
int first_control(int a, int b, const DecompositionLabel& l);

bool gates_commute(const ir::Gate& g1, const ir::Gate& g2);

// Writes commute_set annotations (per node, per wire) and returns them.
using CommuteMap = std::map<std::pair<ir::NodeId, int>, int>;
CommuteMap commutation_analysis(ir::CircuitDag& dag);

// Per-node incremental version of commutation_analysis; set ids stay unique.
class CommuteTracker {
 public:
  void on_append(ir::CircuitDag& dag, ir::NodeId n);

 private:
  int next_id_ = 0;
};

// Removes pairs of identical self-inverse gates that share a commute set on
// every wire. Needs annotations; origins of removed gates are appended.
ir::CircuitDag commutative_cancellation(const ir::CircuitDag& dag, std::vector<int>* removed_origins = nullptr);

// Analysis + cancellation repeated until nothing changes.
ir::Circuit cancel_commuting(const ir::Circuit& c, std::vector<int>* removed_origins = nullptr);

struct Prediction {
  int value = 0;  // 0 or 2
  DecompositionLabel label;
  // For the sandwich case: the earlier SWAP and the label it must carry.
  ir::NodeId partner = ir::kNoNode;
  DecompositionLabel partner_label;
};

// Last node on the wire once trailing one-qubit gates are skipped.
ir::NodeId skip_trailing_1q(const ir::CircuitDag& dag, int wire);

using LabelLookup = std::function<DecompositionLabel(ir::NodeId)>;

// Candidate SWAP on (a, b) appended after the current end of the DAG. Labels
// of earlier SWAPs decide whether their CXs already spend a matching CX.
Prediction predict_ccommute1(const ir::CircuitDag& dag, int a, int b, const LabelLookup& labels = {});
Prediction predict_ccommute2(const ir::CircuitDag& dag, int a, int b, const LabelLookup& labels);

// One-qubit gates right before the SWAP move to the opposite wire after it;
// the run they join there is merged into one gate.
ir::CircuitDag move_1q_through_swap(const ir::CircuitDag& dag, ir::NodeId swap_node);

}  // namespace nassc::commutation
