#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nassc/ir/circuit.hpp"
#include "nassc/routing/router.hpp"
#include "nassc/topology/coupling_map.hpp"

namespace nassc::bench {

struct RouterEntry {
  std::string name;
  routing::RouterConfig cfg;
};

struct BenchSpec {
  std::vector<std::string> circuits;
  std::string topology = "montreal";
  std::vector<RouterEntry> routers;
  int trials = 10;
  std::string output;
  std::optional<std::string> noise;  // profile path, used for noise distance and fidelity
  std::string reference;             // router the deltas compare against; first router if empty
  unsigned threads = 0;              // 0 = hardware concurrency

  void validate() const;
};

// Paths in the JSON are resolved against base_dir.
BenchSpec bench_spec_from_json(const std::string& text, const std::string& base_dir = ".");
BenchSpec load_bench_spec(const std::string& path);

// Parses "sabre" / "nassc" plus optional settings into a router entry.
routing::Algorithm parse_algorithm(const std::string& s);
// "2q,commute1" -> flags; names not listed are cleared.
routing::OptFlags parse_opt_list(const std::string& csv);
std::string opt_list(const routing::OptFlags& f);

struct BenchRow {
  std::string name;
  std::string router;
  int qubits = 0;
  double cnot_total_orig = 0;
  double cnot_total = 0;
  double cnot_add = 0;
  double depth_total = 0;
  double depth_add = 0;
  double wall_time_s = 0;
  double time_ratio = 1;
  double delta_cnot_total = 0;
  double delta_cnot_add = 0;
  double swaps_opt_fraction_2q = 0;
  double swaps_opt_fraction_commute = 0;
  double est_fidelity = 1;
  std::string status = "ok";
  bool summary = false;
};

// Product of (1 - eps) over CX gates.
double estimate_fidelity(const ir::Circuit& c, const topology::NoiseProfile& p);

// Per (circuit, router) rows in spec order, then one geometric-mean row per
// non-reference router.
std::vector<BenchRow> run_bench(const BenchSpec& spec);

std::string rows_to_csv(const std::vector<BenchRow>& rows);
void write_csv(const std::vector<BenchRow>& rows, const std::string& path);

// The eight b_k combinations, all-enabled first.
std::vector<RouterEntry> opt_sweep(const routing::RouterConfig& base);

}  // namespace nassc::bench
