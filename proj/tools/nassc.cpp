// nassc: route, verify and benchmark OpenQASM circuits.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nassc/bench/bench.hpp"
#include "nassc/error.hpp"
#include "nassc/ir/equivalence.hpp"
#include "nassc/ir/qasm.hpp"
#include "nassc/routing/pipeline.hpp"

namespace {

using json = nlohmann::json;
using namespace nassc;

struct RouteArgs {
  std::string in, coupling, router = "nassc", disable, noise, out, stats;
  std::uint64_t seed = 0;
  std::size_t extended_size = 20;
  double extended_weight = 0.5;
};

json stats_json(const routing::RoutingResult& r) {
  const auto& s = r.stats;
  return json{{"swaps_inserted", s.swaps_inserted},
              {"cnot_total_orig", s.cnot_total_orig},
              {"cnot_add", s.cnot_add},
              {"cnot_total", s.cnot_total},
              {"depth_total", s.depth_total},
              {"depth_add", s.depth_add},
              {"swaps_opt_by_2q", s.swaps_opt_by_2q},
              {"swaps_opt_by_commute", s.swaps_opt_by_commute},
              {"swaps_predicted_2q", s.swaps_predicted_2q},
              {"swaps_predicted_commute", s.swaps_predicted_commute},
              {"wall_time_s", s.wall_time_s},
              {"initial_mapping", r.initial_mapping.log_to_phys()},
              {"final_mapping", r.final_mapping.log_to_phys()}};
}

int run_route(const RouteArgs& a) {
  const ir::Circuit c = ir::load_qasm(a.in);
  const auto map = topology::resolve_map(a.coupling);
  routing::RouterConfig cfg;
  cfg.algorithm = bench::parse_algorithm(a.router);
  cfg.seed = a.seed;
  cfg.extended_size = a.extended_size;
  cfg.extended_weight = a.extended_weight;
  if (!a.disable.empty()) {
    const auto off = bench::parse_opt_list(a.disable);
    cfg.opts = {!off.b_2q, !off.b_commute1, !off.b_commute2};
  }
  if (!a.noise.empty()) {
    cfg.noise = topology::load_noise_profile(a.noise);
    cfg.distance = routing::DistanceKind::Noise;
  }
  cfg.validate();
  const auto r = routing::full_pipeline(c, map, cfg);
  ir::save_qasm(r.circuit, a.out);
  const json st = stats_json(r);
  if (!a.stats.empty()) {
    std::ofstream f(a.stats);
    if (!f) throw ConfigError("cannot write " + a.stats);
    f << st.dump(2) << '\n';
  }
  std::cout << "swaps " << r.stats.swaps_inserted << ", cnot_add " << r.stats.cnot_add << ", cnot_total "
            << r.stats.cnot_total << ", depth " << r.stats.depth_total << '\n';
  return 0;
}

int run_bench(const std::string& spec_path, const std::string& out) {
  auto spec = bench::load_bench_spec(spec_path);
  if (!out.empty()) spec.output = out;
  const auto rows = bench::run_bench(spec);
  if (spec.output.empty()) {
    std::cout << bench::rows_to_csv(rows);
  } else {
    bench::write_csv(rows, spec.output);
    std::cerr << "wrote " << rows.size() << " rows to " << spec.output << '\n';
  }
  return 0;
}

// Accepts a bare final layout [p0, p1, ...] or
// {"initial_layout": [...], "final_layout": [...]}; the stats JSON written by
// `route` also works ("initial_mapping" / "final_mapping").
int run_verify(const std::string& a_path, const std::string& b_path, const std::string& perm_path) {
  std::ifstream f(perm_path);
  if (!f) throw ConfigError("cannot read " + perm_path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("perm: ") + e.what());
  }
  std::vector<int> initial, final_map;
  if (j.is_array()) {
    final_map = j.get<std::vector<int>>();
  } else {
    const auto pick = [&](const char* k1, const char* k2) -> std::vector<int> {
      if (j.contains(k1)) return j.at(k1).get<std::vector<int>>();
      if (j.contains(k2)) return j.at(k2).get<std::vector<int>>();
      return {};
    };
    initial = pick("initial_layout", "initial_mapping");
    final_map = pick("final_layout", "final_mapping");
    if (final_map.empty()) throw ConfigError("perm: missing final_layout");
  }
  const ir::Circuit a = ir::load_qasm(a_path);
  const ir::Circuit b = ir::load_qasm(b_path);
  const bool ok = ir::equivalent_up_to_permutation(a, b, final_map, initial);
  std::cout << (ok ? "equivalent" : "NOT equivalent") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimization-aware qubit routing"};
  app.require_subcommand(1);

  RouteArgs ra;
  auto* route = app.add_subcommand("route", "Route a circuit onto a coupling map");
  route->add_option("--in", ra.in, "Input OpenQASM 2.0 file")->required();
  route->add_option("--coupling", ra.coupling, "montreal, linear:N, grid:RxC or a JSON map file")->required();
  route->add_option("--router", ra.router, "sabre or nassc")->capture_default_str();
  route->add_option("--seed", ra.seed, "Layout and tie-break seed")->capture_default_str();
  route->add_option("--extended-size", ra.extended_size, "Extended layer size |E|")->capture_default_str();
  route->add_option("--extended-weight", ra.extended_weight, "Extended layer weight W")->capture_default_str();
  route->add_option("--disable-opt", ra.disable, "Comma list of 2q, commute1, commute2 to switch off");
  route->add_option("--noise", ra.noise, "Noise profile JSON; enables noise-aware distance");
  route->add_option("--out", ra.out, "Routed OpenQASM output")->required();
  route->add_option("--stats", ra.stats, "Statistics JSON output");

  std::string spec, bench_out;
  auto* bench = app.add_subcommand("bench", "Run a benchmark spec and write CSV");
  bench->add_option("--spec", spec, "Bench spec JSON")->required();
  bench->add_option("--out", bench_out, "CSV path (overrides the spec)");

  std::string va, vb, perm;
  auto* verify = app.add_subcommand("verify", "Check a routed circuit against the original");
  verify->add_option("--a", va, "Original circuit")->required();
  verify->add_option("--b", vb, "Routed circuit")->required();
  verify->add_option("--perm", perm, "Layout JSON")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*route) return run_route(ra);
    if (*bench) return run_bench(spec, bench_out);
    if (*verify) return run_verify(va, vb, perm);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
