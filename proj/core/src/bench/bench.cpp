#include "nassc/bench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "nassc/error.hpp"
#include "nassc/ir/qasm.hpp"
#include "nassc/routing/pipeline.hpp"

namespace nassc::bench {

namespace fs = std::filesystem;
using nlohmann::json;

void BenchSpec::validate() const {
  if (circuits.empty()) throw ConfigError("bench spec lists no circuits");
  if (routers.empty()) throw ConfigError("bench spec lists no routers");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  for (const auto& r : routers) {
    routing::RouterConfig cfg = r.cfg;
    // The spec's profile is attached at run time.
    if (cfg.distance == routing::DistanceKind::Noise && !cfg.noise && noise) cfg.noise.emplace();
    cfg.validate();
  }
}

routing::Algorithm parse_algorithm(const std::string& s) {
  std::string v = s;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (v == "sabre") return routing::Algorithm::SABRE;
  if (v == "nassc") return routing::Algorithm::NASSC;
  throw ConfigError("unknown router '" + s + "'");
}

routing::OptFlags parse_opt_list(const std::string& csv) {
  routing::OptFlags f{false, false, false};
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    if (item.empty()) continue;
    if (item == "2q") {
      f.b_2q = true;
    } else if (item == "commute1") {
      f.b_commute1 = true;
    } else if (item == "commute2") {
      f.b_commute2 = true;
    } else {
      throw ConfigError("unknown optimization '" + item + "'");
    }
  }
  return f;
}

std::string opt_list(const routing::OptFlags& f) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(f.b_2q, "2q");
  add(f.b_commute1, "commute1");
  add(f.b_commute2, "commute2");
  return out;
}

namespace {

std::string resolve_path(const std::string& p, const std::string& base) {
  const fs::path path(p);
  return path.is_absolute() ? p : (fs::path(base) / path).lexically_normal().string();
}

RouterEntry router_from_json(const json& j) {
  RouterEntry e;
  const std::string algo = j.value("algorithm", j.value("name", std::string("nassc")));
  e.cfg.algorithm = parse_algorithm(algo);
  e.name = j.value("name", algo);
  e.cfg.extended_size = j.value("extended_size", e.cfg.extended_size);
  e.cfg.extended_weight = j.value("extended_weight", e.cfg.extended_weight);
  e.cfg.traversals = j.value("traversals", e.cfg.traversals);
  if (j.contains("opts")) {
    const json& o = j.at("opts");
    if (o.is_string()) {
      e.cfg.opts = parse_opt_list(o.get<std::string>());
    } else {
      std::string csv;
      for (const auto& item : o) csv += item.get<std::string>() + ",";
      e.cfg.opts = parse_opt_list(csv);
    }
  }
  const std::string dist = j.value("distance", std::string("hops"));
  if (dist == "noise") {
    e.cfg.distance = routing::DistanceKind::Noise;
  } else if (dist != "hops") {
    throw ConfigError("unknown distance '" + dist + "'");
  }
  return e;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double geomean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) {
    if (x <= 0.0) return 0.0;
    s += std::log(x);
  }
  return std::exp(s / static_cast<double>(v.size()));
}

struct Trial {
  routing::RoutingStats stats;
  double fidelity = 1.0;
  std::string error;
};

}  // namespace

BenchSpec bench_spec_from_json(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bench spec: ") + e.what());
  }
  BenchSpec s;
  try {
    for (const auto& c : j.at("circuits")) s.circuits.push_back(resolve_path(c.get<std::string>(), base_dir));
    s.topology = j.value("topology", s.topology);
    if (s.topology.size() > 5 && s.topology.substr(s.topology.size() - 5) == ".json") {
      s.topology = resolve_path(s.topology, base_dir);
    }
    if (j.contains("routers")) {
      for (const auto& r : j.at("routers")) s.routers.push_back(router_from_json(r));
    } else {
      s.routers.push_back(router_from_json(json{{"name", "sabre"}}));
      s.routers.push_back(router_from_json(json{{"name", "nassc"}}));
    }
    s.trials = j.value("trials", s.trials);
    if (j.contains("output")) s.output = resolve_path(j.at("output").get<std::string>(), base_dir);
    if (j.contains("noise")) s.noise = resolve_path(j.at("noise").get<std::string>(), base_dir);
    s.reference = j.value("reference", std::string());
    s.threads = j.value("threads", 0u);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bench spec: ") + e.what());
  }
  s.validate();
  return s;
}

BenchSpec load_bench_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return bench_spec_from_json(ss.str(), fs::path(path).parent_path().string());
}

double estimate_fidelity(const ir::Circuit& c, const topology::NoiseProfile& p) {
  double f = 1.0;
  for (const auto& g : c.gates) {
    if (g.kind == ir::GateKind::CX) f *= 1.0 - p.error(g.qubits[0], g.qubits[1]);
  }
  return f;
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  spec.validate();
  const topology::CouplingMap map = topology::resolve_map(spec.topology);
  std::optional<topology::NoiseProfile> noise;
  if (spec.noise) noise = topology::load_noise_profile(*spec.noise);
  const topology::NoiseProfile fidelity_profile = noise ? *noise : topology::NoiseProfile::uniform(map, 0.01);

  std::vector<RouterEntry> routers = spec.routers;
  for (auto& r : routers) {
    if (r.cfg.distance == routing::DistanceKind::Noise) {
      if (!noise) throw ConfigError("router '" + r.name + "' needs a noise profile");
      r.cfg.noise = noise;
    }
  }
  std::size_t ref = 0;
  if (!spec.reference.empty()) {
    auto it = std::find_if(routers.begin(), routers.end(), [&](const RouterEntry& r) { return r.name == spec.reference; });
    if (it == routers.end()) throw ConfigError("reference router '" + spec.reference + "' not in spec");
    ref = static_cast<std::size_t>(it - routers.begin());
  }

  const std::size_t nc = spec.circuits.size(), nr = routers.size(), nt = static_cast<std::size_t>(spec.trials);
  std::vector<std::optional<ir::Circuit>> circuits(nc);
  std::vector<std::string> load_errors(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    try {
      circuits[i] = ir::load_qasm(spec.circuits[i]);
    } catch (const std::exception& e) {
      load_errors[i] = e.what();
    }
  }

  std::vector<Trial> trials(nc * nr * nt);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < trials.size(); k = next++) {
      const std::size_t ci = k / (nr * nt), ri = (k / nt) % nr, ti = k % nt;
      Trial& t = trials[k];
      if (!circuits[ci]) {
        t.error = load_errors[ci];
        continue;
      }
      try {
        routing::RouterConfig cfg = routers[ri].cfg;
        cfg.seed = ti;
        const auto r = routing::full_pipeline(*circuits[ci], map, cfg);
        t.stats = r.stats;
        t.fidelity = estimate_fidelity(r.circuit, fidelity_profile);
      } catch (const std::exception& e) {
        t.error = e.what();
      }
    }
  };
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, trials.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<BenchRow> rows;
  std::vector<std::vector<BenchRow>> by_circuit(nc, std::vector<BenchRow>(nr));
  for (std::size_t ci = 0; ci < nc; ++ci) {
    for (std::size_t ri = 0; ri < nr; ++ri) {
      BenchRow& row = by_circuit[ci][ri];
      row.name = fs::path(spec.circuits[ci]).stem().string();
      row.router = routers[ri].name;
      row.qubits = circuits[ci] ? circuits[ci]->num_qubits : 0;
      std::vector<double> orig, total, add, depth, dadd, wall, f2q, fcom, fid;
      for (std::size_t ti = 0; ti < nt; ++ti) {
        const Trial& t = trials[(ci * nr + ri) * nt + ti];
        if (!t.error.empty()) {
          row.status = "error: " + t.error;
          break;
        }
        const auto& s = t.stats;
        orig.push_back(static_cast<double>(s.cnot_total_orig));
        total.push_back(static_cast<double>(s.cnot_total));
        add.push_back(static_cast<double>(s.cnot_add));
        depth.push_back(static_cast<double>(s.depth_total));
        dadd.push_back(static_cast<double>(s.depth_add));
        wall.push_back(s.wall_time_s);
        const double sw = static_cast<double>(s.swaps_inserted);
        f2q.push_back(sw > 0 ? static_cast<double>(s.swaps_opt_by_2q) / sw : 0.0);
        fcom.push_back(sw > 0 ? static_cast<double>(s.swaps_opt_by_commute) / sw : 0.0);
        fid.push_back(t.fidelity);
      }
      if (row.status != "ok") continue;
      row.cnot_total_orig = mean(orig);
      row.cnot_total = mean(total);
      row.cnot_add = mean(add);
      row.depth_total = mean(depth);
      row.depth_add = mean(dadd);
      row.wall_time_s = mean(wall);
      row.swaps_opt_fraction_2q = mean(f2q);
      row.swaps_opt_fraction_commute = mean(fcom);
      row.est_fidelity = mean(fid);
    }
    const BenchRow& base = by_circuit[ci][ref];
    for (std::size_t ri = 0; ri < nr; ++ri) {
      BenchRow& row = by_circuit[ci][ri];
      if (row.status != "ok" || base.status != "ok") {
        row.time_ratio = row.delta_cnot_total = row.delta_cnot_add = std::nan("");
        continue;
      }
      row.time_ratio = base.wall_time_s > 0 ? row.wall_time_s / base.wall_time_s : std::nan("");
      row.delta_cnot_total = base.cnot_total > 0 ? 1.0 - row.cnot_total / base.cnot_total : std::nan("");
      row.delta_cnot_add = base.cnot_add > 0 ? 1.0 - row.cnot_add / base.cnot_add : std::nan("");
    }
    rows.insert(rows.end(), by_circuit[ci].begin(), by_circuit[ci].end());
  }

  for (std::size_t ri = 0; ri < nr; ++ri) {
    if (ri == ref) continue;
    BenchRow s;
    s.name = "geomean";
    s.router = routers[ri].name;
    s.summary = true;
    s.status = "summary";
    std::vector<double> r_total, r_add, r_time;
    for (std::size_t ci = 0; ci < nc; ++ci) {
      const BenchRow& row = by_circuit[ci][ri];
      const BenchRow& base = by_circuit[ci][ref];
      if (row.status != "ok" || base.status != "ok") continue;
      if (base.cnot_total > 0) r_total.push_back(row.cnot_total / base.cnot_total);
      if (base.cnot_add > 0) r_add.push_back(row.cnot_add / base.cnot_add);
      if (base.wall_time_s > 0) r_time.push_back(row.wall_time_s / base.wall_time_s);
    }
    s.delta_cnot_total = 1.0 - geomean(r_total);
    s.delta_cnot_add = 1.0 - geomean(r_add);
    s.time_ratio = geomean(r_time);
    rows.push_back(s);
  }
  return rows;
}

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "name,router,qubits,cnot_total_orig,cnot_total,cnot_add,depth_total,depth_add,wall_time_s,time_ratio,"
        "delta_cnot_total,delta_cnot_add,swaps_opt_fraction_2q,swaps_opt_fraction_commute,est_fidelity,status\n";
  os.imbue(std::locale::classic());
  os << std::fixed;
  auto num = [&](double v, int prec) {
    if (std::isnan(v)) return;
    os << std::setprecision(prec) << v;
  };
  auto quoted = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch == '\n' ? ' ' : ch;
    }
    return out + "\"";
  };
  for (const auto& r : rows) {
    os << quoted(r.name) << ',' << quoted(r.router) << ',';
    if (r.summary) {
      os << ",,,,,,,";
    } else {
      os << r.qubits << ',';
      num(r.cnot_total_orig, 2);
      os << ',';
      num(r.cnot_total, 2);
      os << ',';
      num(r.cnot_add, 2);
      os << ',';
      num(r.depth_total, 2);
      os << ',';
      num(r.depth_add, 2);
      os << ',';
      num(r.wall_time_s, 6);
      os << ',';
    }
    num(r.time_ratio, 4);
    os << ',';
    num(r.delta_cnot_total, 6);
    os << ',';
    num(r.delta_cnot_add, 6);
    os << ',';
    if (!r.summary) {
      num(r.swaps_opt_fraction_2q, 6);
      os << ',';
      num(r.swaps_opt_fraction_commute, 6);
      os << ',';
      // Deep circuits land far below 1e-6.
      os << std::scientific << std::setprecision(6) << r.est_fidelity << std::fixed;
    } else {
      os << ",,";
    }
    os << ',' << quoted(r.status) << '\n';
  }
  return os.str();
}

void write_csv(const std::vector<BenchRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << rows_to_csv(rows);
}

std::vector<RouterEntry> opt_sweep(const routing::RouterConfig& base) {
  std::vector<RouterEntry> out;
  for (int mask = 7; mask >= 0; --mask) {
    RouterEntry e;
    e.cfg = base;
    e.cfg.algorithm = routing::Algorithm::NASSC;
    e.cfg.opts = routing::OptFlags{(mask & 4) != 0, (mask & 2) != 0, (mask & 1) != 0};
    const std::string opts = opt_list(e.cfg.opts);
    e.name = "nassc[" + (opts.empty() ? std::string("none") : opts) + "]";
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace nassc::bench
