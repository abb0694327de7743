#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "nassc/error.hpp"
#include "nassc/ir/dag.hpp"
#include "nassc/ir/equivalence.hpp"
#include "nassc/ir/metrics.hpp"
#include "nassc/ir/qasm.hpp"
#include "nassc/ir/statevector.hpp"
#include "test_support.hpp"

using namespace nassc;
using namespace nassc::ir;
using nassc::testing::dense_unitary;

namespace {

constexpr double kPi = std::numbers::pi;

const char* kHeader = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

Circuit parse(const std::string& body) { return parse_qasm(std::string(kHeader) + body); }

Statevector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<cplx> amps(std::size_t{1} << n);
  double norm = 0;
  for (auto& a : amps) {
    a = cplx(d(rng), d(rng));
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return Statevector(n, amps);
}

}  // namespace

TEST(Qasm, ParsesSingleCx) {
  const Circuit c = parse("qreg q[2];\ncx q[0],q[1];\n");
  EXPECT_EQ(c.num_qubits, 2);
  ASSERT_EQ(c.gates.size(), 1u);
  EXPECT_EQ(c.gates[0], cx(0, 1));
}

TEST(Qasm, ParsesAngleExpression) {
  const Circuit c = parse("qreg q[1];\nrz(pi/2) q[0];\n");
  ASSERT_EQ(c.gates.size(), 1u);
  EXPECT_EQ(c.gates[0].kind, GateKind::RZ);
  EXPECT_DOUBLE_EQ(c.gates[0].params[0], kPi / 2);
}

TEST(Qasm, EvalAngle) {
  EXPECT_DOUBLE_EQ(eval_angle("pi/2"), kPi / 2);
  EXPECT_DOUBLE_EQ(eval_angle("-3*pi/4"), -3 * kPi / 4);
  EXPECT_DOUBLE_EQ(eval_angle("(1+2)*pi"), 3 * kPi);
  EXPECT_DOUBLE_EQ(eval_angle("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(eval_angle("1e-3"), 1e-3);
  EXPECT_THROW(eval_angle("pi+"), Error);
}

TEST(Qasm, ToffoliMatchesPermutationMatrix) {
  const Circuit c = parse("qreg q[3];\nccx q[0],q[1],q[2];\n");
  EXPECT_EQ(count_kind(c, GateKind::CX), 6u);
  // Controls q0, q1 (bits 0, 1); target q2 (bit 2): swaps |011> and |111>.
  MatX toffoli = MatX::Identity(8, 8);
  toffoli(3, 3) = toffoli(7, 7) = 0;
  toffoli(3, 7) = toffoli(7, 3) = 1;
  EXPECT_TRUE(equal_up_to_phase(dense_unitary(c), toffoli, 1e-10));
}

TEST(Qasm, RewritesNamedPhases) {
  const Circuit c = parse("qreg q[1];\nt q[0];\nsdg q[0];\nu1(0.3) q[0];\nry(0.5) q[0];\n");
  ASSERT_EQ(c.gates.size(), 4u);
  EXPECT_EQ(c.gates[0], u3(0, 0, kPi / 4, 0));
  EXPECT_EQ(c.gates[1], u3(0, 0, -kPi / 2, 0));
  EXPECT_EQ(c.gates[2], u3(0, 0, 0.3, 0));
  EXPECT_EQ(c.gates[3], u3(0.5, 0, 0, 0));
}

TEST(Qasm, ControlledPhaseIsDiagonal) {
  const Circuit c = parse("qreg q[2];\ncu1(0.7) q[0],q[1];\n");
  MatX expected = MatX::Identity(4, 4);
  expected(3, 3) = std::polar(1.0, 0.7);
  EXPECT_TRUE(equal_up_to_phase(dense_unitary(c), expected, 1e-12));
}

TEST(Qasm, BroadcastsOverRegister) {
  const Circuit c = parse("qreg q[3];\nh q;\n");
  ASSERT_EQ(c.gates.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(c.gates[static_cast<std::size_t>(i)], h(i));
}

TEST(Qasm, MeasureAndCregs) {
  const Circuit c = parse("qreg q[2];\ncreg a[1];\ncreg b[1];\nmeasure q[1] -> b[0];\n");
  EXPECT_EQ(c.num_clbits, 2);
  ASSERT_EQ(c.gates.size(), 1u);
  EXPECT_EQ(c.gates[0], measure(1, 1));
}

TEST(Qasm, Errors) {
  try {
    parse("qreg q[2];\nfoo q[0];\n");
    FAIL() << "expected UnsupportedGate";
  } catch (const UnsupportedGate& e) {
    EXPECT_EQ(e.name(), "foo");
  }
  EXPECT_THROW(parse("qreg q[2];\ngate g a { x a; }\n"), ParseError);
  EXPECT_THROW(parse("qreg q[2];\ncx q[0],q[2];\n"), ParseError);
  EXPECT_THROW(parse("qreg q[2];\ncx q[0],q[0];\n"), ParseError);
  try {
    parse("qreg q[2];\nx q[0];\nreset q[0];\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
  }
}

TEST(Qasm, RoundTripsFixtures) {
  for (const char* name : {"grover4", "vqe8", "qft15", "adder10", "qpe9"}) {
    const Circuit c = load_qasm(nassc::testing::fixture(std::string("circuits/") + name + ".qasm"));
    EXPECT_EQ(parse_qasm(to_qasm(c)), c) << name;
  }
}

TEST(Dag, NodeCountIncludesSentinels) {
  Circuit c(3);
  c.add(cx(0, 1)).add(h(2)).add(cx(1, 2));
  const CircuitDag dag = build_dag(c);
  EXPECT_EQ(dag.num_nodes(), 3u + 6u);
  EXPECT_EQ(dag.num_ops(), 3u);
}

TEST(Dag, SharedQubitCreatesEdge) {
  Circuit c(3);
  c.add(cx(0, 1)).add(cx(1, 2));
  const CircuitDag dag = build_dag(c);
  const auto order = dag.topological_order();
  ASSERT_EQ(order.size(), 2u);
  EXPECT_EQ(dag.successors(order[0]), std::vector<NodeId>{order[1]});
  EXPECT_EQ(dag.predecessors(order[1]), std::vector<NodeId>{order[0]});
}

TEST(Dag, DisjointGatesAreIndependent) {
  Circuit c(2);
  c.add(x(0)).add(x(1));
  const CircuitDag dag = build_dag(c);
  for (NodeId n : dag.topological_order()) {
    EXPECT_TRUE(dag.successors(n).empty());
    EXPECT_TRUE(dag.predecessors(n).empty());
  }
}

TEST(Dag, FrontLayerOfLayeredExample) {
  // CX(q2,q1), CRx(q0,q1), then the blocked CX(q0,q2).
  Circuit c(3);
  c.add(cx(2, 1)).add(crx(0.8, 0, 1)).add(cx(0, 2));
  const CircuitDag dag = build_dag(c);
  const auto order = dag.topological_order();
  std::vector<NodeId> resolved{order[0], order[1]};
  std::vector<NodeId> front;
  for (NodeId n : order) {
    if (std::find(resolved.begin(), resolved.end(), n) != resolved.end()) continue;
    bool ready = true;
    for (NodeId p : dag.predecessors(n)) {
      ready = ready && std::find(resolved.begin(), resolved.end(), p) != resolved.end();
    }
    if (ready) front.push_back(n);
  }
  ASSERT_EQ(front.size(), 1u);
  EXPECT_EQ(dag.node(front[0]).gate, cx(0, 2));
}

TEST(Dag, RemoveAndInsertKeepLinks) {
  Circuit c(2);
  c.add(h(0)).add(cx(0, 1)).add(x(1));
  CircuitDag dag = build_dag(c);
  const auto order = dag.topological_order();
  dag.remove(order[0]);
  EXPECT_EQ(dag.prev_on(order[1], 0), dag.input(0));
  dag.insert_after(order[1], 1, z(1));
  Circuit expected(2);
  expected.add(cx(0, 1)).add(z(1)).add(x(1));
  EXPECT_EQ(dag.to_circuit(), expected);
  EXPECT_EQ(dag.wire_nodes(1).size(), 3u);
}

TEST(Metrics, SerialChain) {
  Circuit c(2);
  c.add(cx(0, 1)).add(cx(0, 1)).add(cx(0, 1));
  const auto m = metrics(c);
  EXPECT_EQ(m.cnot_count, 3u);
  EXPECT_EQ(m.depth, 3u);
}

TEST(Metrics, ParallelLayer) {
  Circuit c(2);
  c.add(x(0)).add(x(1));
  EXPECT_EQ(metrics(c).depth, 1u);
}

TEST(Metrics, BarrierSynchronizesWithoutLayer) {
  Circuit c(2);
  c.add(x(0)).add(barrier({0, 1})).add(x(1));
  const auto m = metrics(c);
  EXPECT_EQ(m.depth, 2u);
  EXPECT_EQ(m.gate_count, 2u);
}

TEST(Metrics, SwapMustBeDecomposed) {
  Circuit c(2);
  c.add(swap(0, 1));
  EXPECT_THROW(metrics(c), UndecomposedSwap);
}

TEST(Metrics, DagLinearizationPreservesCounts) {
  const Circuit c = load_qasm(nassc::testing::fixture("circuits/qft15.qasm"));
  const auto a = metrics(c);
  const auto b = metrics(build_dag(c).to_circuit());
  EXPECT_EQ(a.cnot_count, b.cnot_count);
  EXPECT_EQ(a.depth, b.depth);
  EXPECT_EQ(a.gate_count, b.gate_count);
}

TEST(Statevector, XFlipsQubit) {
  Circuit c(1);
  c.add(x(0));
  const auto s = simulate(c);
  EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-12);
}

TEST(Statevector, ControlFires) {
  Circuit c(2);
  c.add(cx(0, 1));
  const auto s = simulate(c, Statevector::basis(2, 1));
  EXPECT_NEAR(std::abs(s[3]), 1.0, 1e-12);
}

TEST(Statevector, BellState) {
  Circuit c(2);
  c.add(h(0)).add(cx(0, 1));
  const auto s = simulate(c);
  EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s[3].real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(s[1]) + std::abs(s[2]), 0.0, 1e-12);
}

TEST(Statevector, EveryGateMatchesDenseMatrix) {
  std::mt19937_64 rng(11);
  const std::vector<Gate> gates = {id(1),           x(0),       sx(2),      rz(0.3, 1),        h(0),
                                   y(2),            z(1),       u3(0.4, -1.1, 2.3, 0), cx(2, 0), cy(0, 1),
                                   cz(1, 2),        crx(0.9, 1, 0),        swap(0, 2)};
  for (const Gate& g : gates) {
    Circuit c(3);
    c.add(g);
    const Statevector in = random_state(3, rng);
    const Statevector out = simulate(c, in);
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 8; ++i) v(i) = in[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd expected = dense_unitary(c) * v;
    for (int i = 0; i < 8; ++i) {
      EXPECT_NEAR(std::abs(out[static_cast<std::size_t>(i)] - expected(i)), 0.0, 1e-10) << to_string(g);
    }
    EXPECT_NEAR(out.norm(), 1.0, 1e-10);
  }
}

TEST(Statevector, Limits) {
  EXPECT_THROW(simulate(Circuit(15)), TooManyQubits);
  Circuit m(1, 1);
  m.add(measure(0, 0));
  EXPECT_THROW(simulate(m), MeasurementUnsupported);
}

TEST(Equivalence, IdenticalCircuits) {
  Circuit a(2);
  a.add(cx(0, 1));
  EXPECT_TRUE(equivalent_up_to_permutation(a, a, {0, 1}));
}

TEST(Equivalence, Relabeling) {
  Circuit a(2), b(2);
  a.add(cx(0, 1));
  b.add(cx(1, 0));
  EXPECT_TRUE(equivalent_up_to_permutation(a, b, {1, 0}, {1, 0}));
  EXPECT_FALSE(equivalent_up_to_permutation(a, b, {0, 1}));
}

TEST(Equivalence, GlobalPhaseIgnored) {
  Circuit a(1), b(1);
  a.add(z(0));
  b.add(rz(kPi, 0));
  EXPECT_TRUE(equivalent_up_to_permutation(a, b, {0}));
}

TEST(Equivalence, LayeredRoutedExample) {
  // Source CX(1,2), CX(0,1), CX(0,2) on a line; routed with SWAP(0,1) after
  // CX(0,1), whose first CX cancels, leaving one extra CX.
  Circuit a(3), b(3);
  a.add(cx(1, 2)).add(cx(0, 1)).add(cx(0, 2));
  b.add(cx(1, 2)).add(cx(1, 0)).add(cx(0, 1)).add(cx(1, 2));
  EXPECT_EQ(metrics(b).cnot_count, metrics(a).cnot_count + 1);
  EXPECT_TRUE(equivalent_up_to_permutation(a, b, {1, 0, 2}));
  EXPECT_FALSE(equivalent_up_to_permutation(a, b, {0, 1, 2}));
}

TEST(Equivalence, AncillaMustReturnToZero) {
  Circuit a(1), b(2);
  a.add(x(0));
  b.add(x(0)).add(x(1));
  EXPECT_FALSE(equivalent_up_to_permutation(a, b, {0}));
  Circuit c(2);
  c.add(x(0));
  EXPECT_TRUE(equivalent_up_to_permutation(a, c, {0}));
}
