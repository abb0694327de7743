#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "nassc/bench/bench.hpp"
#include "nassc/error.hpp"
#include "test_support.hpp"

using namespace nassc;
using namespace nassc::bench;
using nassc::testing::fixture;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Drops the wall_time_s and time_ratio columns.
std::string without_time(const std::string& csv) {
  std::stringstream in(csv), out;
  std::string line;
  std::vector<std::size_t> drop;
  bool header = true;
  while (std::getline(in, line)) {
    const auto cells = split(line);
    if (header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "wall_time_s" || cells[i] == "time_ratio") drop.push_back(i);
      }
      header = false;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (std::find(drop.begin(), drop.end(), i) == drop.end()) out << cells[i] << ',';
    }
    out << '\n';
  }
  return out.str();
}

BenchSpec two_router_spec(std::vector<std::string> names, int trials = 2) {
  BenchSpec s;
  for (const auto& n : names) s.circuits.push_back(fixture("circuits/" + n + ".qasm"));
  RouterEntry sabre{"sabre", {}};
  sabre.cfg.algorithm = routing::Algorithm::SABRE;
  s.routers = {sabre, RouterEntry{"nassc", {}}};
  s.trials = trials;
  return s;
}

}  // namespace

TEST(Fidelity, EmptyCircuitIsOne) {
  const auto m = topology::linear(2);
  EXPECT_DOUBLE_EQ(estimate_fidelity(ir::Circuit(2), topology::NoiseProfile::uniform(m, 0.01)), 1.0);
}

TEST(Fidelity, ProductRule) {
  const auto m = topology::linear(2);
  const auto c = ir::Circuit(2).add(ir::cx(0, 1)).add(ir::h(0)).add(ir::cx(1, 0));
  EXPECT_NEAR(estimate_fidelity(c, topology::NoiseProfile::uniform(m, 0.01)), 0.9801, 1e-12);
}

TEST(Fidelity, MissingEdge) {
  topology::NoiseProfile p;
  EXPECT_THROW(estimate_fidelity(ir::Circuit(2).add(ir::cx(0, 1)), p), MissingEdgeData);
}

TEST(Spec, ParsesJson) {
  const auto s = bench_spec_from_json(R"({
    "circuits": ["circuits/grover4.qasm"],
    "topology": "linear:25",
    "trials": 3,
    "routers": [
      {"name": "base", "algorithm": "sabre"},
      {"name": "mine", "algorithm": "nassc", "extended_size": 10, "extended_weight": 0.25,
       "opts": "2q,commute2", "traversals": 5}
    ]
  })", "/data");
  ASSERT_EQ(s.circuits.size(), 1u);
  EXPECT_EQ(s.circuits[0], "/data/circuits/grover4.qasm");
  EXPECT_EQ(s.topology, "linear:25");
  EXPECT_EQ(s.trials, 3);
  ASSERT_EQ(s.routers.size(), 2u);
  EXPECT_EQ(s.routers[0].cfg.algorithm, routing::Algorithm::SABRE);
  const auto& r = s.routers[1].cfg;
  EXPECT_EQ(r.extended_size, 10u);
  EXPECT_DOUBLE_EQ(r.extended_weight, 0.25);
  EXPECT_EQ(r.traversals, 5);
  EXPECT_TRUE(r.opts.b_2q);
  EXPECT_FALSE(r.opts.b_commute1);
  EXPECT_TRUE(r.opts.b_commute2);
}

TEST(Spec, DefaultsAndValidation) {
  const auto s = bench_spec_from_json(R"({"circuits": ["/x.qasm"]})");
  EXPECT_EQ(s.trials, 10);
  EXPECT_EQ(s.topology, "montreal");
  ASSERT_EQ(s.routers.size(), 2u);
  EXPECT_EQ(s.routers[0].name, "sabre");
  EXPECT_EQ(s.routers[1].name, "nassc");
  EXPECT_THROW(bench_spec_from_json(R"({"circuits": []})"), ConfigError);
  EXPECT_THROW(bench_spec_from_json(R"({"circuits": ["/x.qasm"], "trials": 0})"), ConfigError);
  EXPECT_THROW(bench_spec_from_json("not json"), ConfigError);
}

TEST(Spec, OptLists) {
  const auto f = parse_opt_list("commute1");
  EXPECT_FALSE(f.b_2q);
  EXPECT_TRUE(f.b_commute1);
  EXPECT_FALSE(f.b_commute2);
  EXPECT_EQ(opt_list(routing::OptFlags{}), "2q,commute1,commute2");
  EXPECT_THROW(parse_opt_list("2q,bogus"), ConfigError);
  EXPECT_EQ(parse_algorithm("SABRE"), routing::Algorithm::SABRE);
  EXPECT_THROW(parse_algorithm("astar"), ConfigError);
}

TEST(Sweep, EightCombinationsAllEnabledFirst) {
  const auto sweep = opt_sweep(routing::RouterConfig{});
  ASSERT_EQ(sweep.size(), 8u);
  EXPECT_EQ(sweep.front().name, "nassc[2q,commute1,commute2]");
  EXPECT_EQ(sweep.back().name, "nassc[none]");
  std::set<std::string> names;
  for (const auto& e : sweep) {
    names.insert(e.name);
    EXPECT_EQ(e.cfg.algorithm, routing::Algorithm::NASSC);
  }
  EXPECT_EQ(names.size(), 8u);
}

TEST(Run, OneCircuitTwoRoutersPlusSummary) {
  const auto rows = run_bench(two_router_spec({"grover4"}));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].router, "sabre");
  EXPECT_EQ(rows[1].router, "nassc");
  EXPECT_TRUE(rows[2].summary);
  EXPECT_DOUBLE_EQ(rows[0].delta_cnot_add, 0.0);
  EXPECT_NEAR(rows[1].delta_cnot_add, 1.0 - rows[1].cnot_add / rows[0].cnot_add, 1e-12);
  EXPECT_NEAR(rows[1].delta_cnot_total, 1.0 - rows[1].cnot_total / rows[0].cnot_total, 1e-12);
}

TEST(Run, SummaryIsGeometricMeanOfRatios) {
  const auto rows = run_bench(two_router_spec({"grover4", "vqe8", "adder10"}));
  double log_add = 0, log_total = 0;
  int n = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    log_add += std::log(rows[i + 1].cnot_add / rows[i].cnot_add);
    log_total += std::log(rows[i + 1].cnot_total / rows[i].cnot_total);
    ++n;
  }
  const auto& summary = rows.back();
  ASSERT_TRUE(summary.summary);
  EXPECT_NEAR(summary.delta_cnot_add, 1.0 - std::exp(log_add / n), 1e-12);
  EXPECT_NEAR(summary.delta_cnot_total, 1.0 - std::exp(log_total / n), 1e-12);
}

TEST(Run, FailedRowRecordedAndRunContinues) {
  auto spec = two_router_spec({"grover4"}, 1);
  spec.circuits.insert(spec.circuits.begin(), "/nonexistent/missing.qasm");
  const auto rows = run_bench(spec);
  ASSERT_GE(rows.size(), 4u);
  EXPECT_NE(rows[0].status, "ok");
  EXPECT_EQ(rows[2].status, "ok");
}

TEST(Run, CsvHeaderAndDeterminism) {
  const auto spec = two_router_spec({"bv19", "qpe9"});
  const std::string a = rows_to_csv(run_bench(spec));
  const std::string b = rows_to_csv(run_bench(spec));
  EXPECT_EQ(a.substr(0, a.find('\n')),
            "name,router,qubits,cnot_total_orig,cnot_total,cnot_add,depth_total,depth_add,wall_time_s,time_ratio,"
            "delta_cnot_total,delta_cnot_add,swaps_opt_fraction_2q,swaps_opt_fraction_commute,est_fidelity,status");
  EXPECT_EQ(without_time(a), without_time(b));
}

TEST(Run, FewerCnotsMeansHigherFidelity) {
  const auto rows = run_bench(two_router_spec({"grover6"}, 10));
  ASSERT_LT(rows[1].cnot_total, rows[0].cnot_total);
  EXPECT_GT(rows[1].est_fidelity, rows[0].est_fidelity);
}
