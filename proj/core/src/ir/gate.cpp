#include "nassc/ir/gate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nassc/error.hpp"

namespace nassc::ir {

std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::ID: return "id";
    case GateKind::X: return "x";
    case GateKind::SX: return "sx";
    case GateKind::RZ: return "rz";
    case GateKind::H: return "h";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::U3: return "u3";
    case GateKind::CX: return "cx";
    case GateKind::CY: return "cy";
    case GateKind::CZ: return "cz";
    case GateKind::CRX: return "crx";
    case GateKind::SWAP: return "swap";
    case GateKind::MEASURE: return "measure";
    case GateKind::BARRIER: return "barrier";
  }
  return "?";
}

int param_count(GateKind k) {
  switch (k) {
    case GateKind::RZ:
    case GateKind::CRX: return 1;
    case GateKind::U3: return 3;
    default: return 0;
  }
}

bool is_unitary(GateKind k) {
  return k != GateKind::MEASURE && k != GateKind::BARRIER;
}

bool is_single_qubit_unitary(const Gate& g) {
  return is_unitary(g.kind) && g.qubits.size() == 1;
}

bool is_two_qubit_unitary(const Gate& g) {
  return is_unitary(g.kind) && g.qubits.size() == 2;
}

bool is_self_inverse(GateKind k) {
  switch (k) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::CX:
    case GateKind::CY:
    case GateKind::CZ: return true;
    default: return false;
  }
}

bool is_diagonal(const Gate& g, double tol) {
  switch (g.kind) {
    case GateKind::ID:
    case GateKind::RZ:
    case GateKind::Z:
    case GateKind::CZ: return true;
    case GateKind::U3: return std::abs(std::sin(g.params[0] / 2)) < tol;
    default: return false;
  }
}

static int arity(GateKind k) {
  switch (k) {
    case GateKind::CX:
    case GateKind::CY:
    case GateKind::CZ:
    case GateKind::CRX:
    case GateKind::SWAP: return 2;
    case GateKind::BARRIER: return -1;
    default: return 1;
  }
}

void validate(const Gate& g) {
  const int n = arity(g.kind);
  if (n >= 0 && static_cast<int>(g.qubits.size()) != n) {
    throw InvalidCircuit(std::string(gate_name(g.kind)) + ": expected " +
                         std::to_string(n) + " qubits");
  }
  if (g.qubits.empty()) {
    throw InvalidCircuit(std::string(gate_name(g.kind)) + ": no qubits");
  }
  if (static_cast<int>(g.params.size()) != param_count(g.kind)) {
    throw InvalidCircuit(std::string(gate_name(g.kind)) + ": wrong parameter count");
  }
  std::vector<int> q = g.qubits;
  std::sort(q.begin(), q.end());
  if (std::adjacent_find(q.begin(), q.end()) != q.end()) {
    throw InvalidCircuit(std::string(gate_name(g.kind)) + ": repeated qubit");
  }
  if (q.front() < 0) throw InvalidCircuit("negative qubit index");
  if (g.kind == GateKind::MEASURE && g.clbit < 0) {
    throw InvalidCircuit("measure without classical bit");
  }
}

Gate make_1q(GateKind k, int q, std::vector<double> params) {
  Gate g;
  g.kind = k;
  g.qubits = {q};
  g.params = std::move(params);
  return g;
}

Gate make_2q(GateKind k, int a, int b, std::vector<double> params) {
  Gate g;
  g.kind = k;
  g.qubits = {a, b};
  g.params = std::move(params);
  return g;
}

Gate measure(int q, int c) {
  Gate g;
  g.kind = GateKind::MEASURE;
  g.qubits = {q};
  g.clbit = c;
  return g;
}

Gate barrier(std::vector<int> qubits) {
  Gate g;
  g.kind = GateKind::BARRIER;
  g.qubits = std::move(qubits);
  return g;
}

std::string to_string(const Gate& g) {
  std::ostringstream os;
  os.precision(17);
  os << gate_name(g.kind);
  if (!g.params.empty()) {
    os << '(';
    for (std::size_t i = 0; i < g.params.size(); ++i) {
      if (i) os << ',';
      os << g.params[i];
    }
    os << ')';
  }
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    os << (i ? "," : " ") << "q[" << g.qubits[i] << ']';
  }
  if (g.kind == GateKind::MEASURE) os << " -> c[" << g.clbit << ']';
  return os.str();
}

}  // namespace nassc::ir
