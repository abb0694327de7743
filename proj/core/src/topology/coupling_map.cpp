#include "nassc/topology/coupling_map.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nassc/error.hpp"

namespace nassc::topology {

namespace {

Edge norm_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

CouplingMap::CouplingMap(int num_qubits, std::vector<Edge> edges, std::string name)
    : n_(num_qubits), name_(std::move(name)) {
  if (num_qubits < 2) throw InvalidSize("coupling map needs at least 2 qubits");
  adj_.resize(static_cast<std::size_t>(n_));
  coupled_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
  for (auto [a, b] : edges) {
    if (a == b) throw InvalidSize("self-loop on qubit " + std::to_string(a));
    if (a < 0 || b < 0 || a >= n_ || b >= n_) throw InvalidSize("edge endpoint out of range");
    const Edge e = norm_edge(a, b);
    if (coupled(e.first, e.second)) throw InvalidSize("duplicate edge");
    edges_.push_back(e);
    coupled_[static_cast<std::size_t>(a * n_ + b)] = coupled_[static_cast<std::size_t>(b * n_ + a)] = 1;
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  // Reachability check.
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    for (int q : adj_[static_cast<std::size_t>(p)]) {
      if (!seen[static_cast<std::size_t>(q)]) {
        seen[static_cast<std::size_t>(q)] = 1;
        stack.push_back(q);
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != n_) {
    throw DisconnectedGraph("coupling map '" + name_ + "' is not connected");
  }
}

bool CouplingMap::coupled(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return false;
  return coupled_[static_cast<std::size_t>(a * n_ + b)] != 0;
}

int CouplingMap::max_degree() const {
  std::size_t best = 0;
  for (const auto& nb : adj_) best = std::max(best, nb.size());
  return static_cast<int>(best);
}

CouplingMap linear(int n) {
  if (n < 2) throw InvalidSize("linear map needs n >= 2");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return CouplingMap(n, std::move(e), "linear(" + std::to_string(n) + ")");
}

CouplingMap grid(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2) throw InvalidSize("grid needs rows*cols >= 2");
  std::vector<Edge> e;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int p = r * cols + c;
      if (c + 1 < cols) e.emplace_back(p, p + 1);
      if (r + 1 < rows) e.emplace_back(p, p + cols);
    }
  }
  return CouplingMap(rows * cols, std::move(e),
                     "grid(" + std::to_string(rows) + "," + std::to_string(cols) + ")");
}

CouplingMap montreal() {
  // 27-qubit heavy-hex lattice.
  std::vector<Edge> e = {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},
                         {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12}, {11, 14}, {12, 13},
                         {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18}, {18, 21},
                         {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}};
  return CouplingMap(27, std::move(e), "montreal");
}

CouplingMap builtin_map(const std::string& name) {
  std::smatch m;
  if (name == "montreal" || name == "montreal_heavy_hex_27") return montreal();
  static const std::regex lin(R"(linear[:(]\s*(\d+)\s*\)?)");
  static const std::regex grd(R"(grid[:(]\s*(\d+)\s*[x,]\s*(\d+)\s*\)?)");
  if (std::regex_match(name, m, lin)) return linear(std::stoi(m[1]));
  if (std::regex_match(name, m, grd)) return grid(std::stoi(m[1]), std::stoi(m[2]));
  throw ConfigError("unknown topology '" + name + "'");
}

CouplingMap resolve_map(const std::string& name_or_path) {
  if (name_or_path.size() > 5 && name_or_path.substr(name_or_path.size() - 5) == ".json") {
    return coupling_map_from_json(read_file(name_or_path));
  }
  return builtin_map(name_or_path);
}

CouplingMap coupling_map_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return CouplingMap(j.at("n").get<int>(), std::move(edges), j.value("name", std::string("custom")));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("coupling map JSON: ") + e.what());
  }
}

std::string coupling_map_to_json(const CouplingMap& m) {
  nlohmann::json j;
  j["name"] = m.name();
  j["n"] = m.num_qubits();
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : m.edges()) j["edges"].push_back({a, b});
  return j.dump();
}

DistanceMatrix all_pairs_distance(const CouplingMap& m) {
  const int n = m.num_qubits();
  DistanceMatrix d(n, -1.0);
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    d.at(s, s) = 0.0;
    while (!q.empty()) {
      const int p = q.front();
      q.pop();
      for (int r : m.neighbors(p)) {
        if (d(s, r) < 0) {
          d.at(s, r) = d(s, p) + 1.0;
          q.push(r);
        }
      }
    }
    for (int t = 0; t < n; ++t) {
      if (d(s, t) < 0) throw DisconnectedGraph("no path between " + std::to_string(s) + " and " + std::to_string(t));
    }
  }
  return d;
}

std::vector<int> shortest_path(const CouplingMap& m, int a, int b) {
  std::vector<int> parent(static_cast<std::size_t>(m.num_qubits()), -1);
  std::queue<int> q;
  q.push(a);
  parent[static_cast<std::size_t>(a)] = a;
  while (!q.empty()) {
    const int p = q.front();
    q.pop();
    if (p == b) break;
    for (int r : m.neighbors(p)) {
      if (parent[static_cast<std::size_t>(r)] < 0) {
        parent[static_cast<std::size_t>(r)] = p;
        q.push(r);
      }
    }
  }
  if (parent[static_cast<std::size_t>(b)] < 0) throw DisconnectedGraph("no path");
  std::vector<int> path{b};
  while (path.back() != a) path.push_back(parent[static_cast<std::size_t>(path.back())]);
  std::reverse(path.begin(), path.end());
  return path;
}

NoiseProfile NoiseProfile::uniform(const CouplingMap& m, double cx_error, double swap_time) {
  NoiseProfile p;
  for (const Edge& e : m.edges()) {
    p.cx_error[e] = cx_error;
    p.swap_time[e] = swap_time;
  }
  return p;
}

double NoiseProfile::error(int a, int b) const {
  auto it = cx_error.find(norm_edge(a, b));
  if (it == cx_error.end()) {
    throw MissingEdgeData("no cx_error for edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  return it->second;
}

double NoiseProfile::time(int a, int b) const {
  auto it = swap_time.find(norm_edge(a, b));
  if (it == swap_time.end()) {
    throw MissingEdgeData("no swap_time for edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  return it->second;
}

NoiseProfile noise_profile_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    NoiseProfile p;
    for (const auto& e : j.at("edges")) {
      const Edge k = norm_edge(e.at("a").get<int>(), e.at("b").get<int>());
      p.cx_error[k] = e.at("cx_error").get<double>();
      p.swap_time[k] = e.value("swap_time", 0.0);
    }
    if (j.contains("alphas")) {
      const auto& a = j.at("alphas");
      if (a.size() != 3) throw ConfigError("noise profile: alphas needs three values");
      for (std::size_t i = 0; i < 3; ++i) p.alphas[i] = a.at(i).get<double>();
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("noise profile JSON: ") + e.what());
  }
}

NoiseProfile load_noise_profile(const std::string& path) { return noise_profile_from_json(read_file(path)); }

DistanceMatrix noise_distance(const CouplingMap& m, const NoiseProfile& p) {
  const int n = m.num_qubits();
  const auto [a1, a2, a3] = p.alphas;
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : m.edges()) {
    const double w = a1 * p.error(a, b) + a2 * p.time(a, b) + a3 * 1.0;
    adj[static_cast<std::size_t>(a)].emplace_back(b, w);
    adj[static_cast<std::size_t>(b)].emplace_back(a, w);
  }
  const double inf = std::numeric_limits<double>::infinity();
  DistanceMatrix d(n, inf);
  using Item = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d.at(s, s) = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
      auto [dist, u] = pq.top();
      pq.pop();
      if (dist > d(s, u)) continue;
      for (auto [v, w] : adj[static_cast<std::size_t>(u)]) {
        if (dist + w < d(s, v)) {
          d.at(s, v) = dist + w;
          pq.emplace(dist + w, v);
        }
      }
    }
  }
  return d;
}

}  // namespace nassc::topology
