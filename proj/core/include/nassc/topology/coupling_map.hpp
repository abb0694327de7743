#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nassc::topology {

using Edge = std::pair<int, int>;

// Undirected, connected device graph over physical qubits 0..N-1.
class CouplingMap {
 public:
  CouplingMap() = default;
  // Edges are normalized to (min, max); self-loops, duplicates, out-of-range
  // endpoints and disconnected graphs are rejected.
  CouplingMap(int num_qubits, std::vector<Edge> edges, std::string name = "custom");

  int num_qubits() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int p) const { return adj_[static_cast<std::size_t>(p)]; }
  bool coupled(int a, int b) const;
  int max_degree() const;
  const std::string& name() const { return name_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<char> coupled_;
  std::string name_;
};

CouplingMap linear(int n);
CouplingMap grid(int rows, int cols);
CouplingMap montreal();

// "montreal", "linear:N", "linear(N)", "grid:RxC", "grid(R,C)" or a JSON
// file {"n": N, "edges": [[a,b], ...]}.
CouplingMap builtin_map(const std::string& name);
CouplingMap resolve_map(const std::string& name_or_path);
CouplingMap coupling_map_from_json(const std::string& text);
std::string coupling_map_to_json(const CouplingMap& m);

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n, double fill = 0.0)
      : n_(n), d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  int size() const { return n_; }
  double operator()(int i, int j) const {
    return d_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }
  double& at(int i, int j) {
    return d_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }
  bool operator==(const DistanceMatrix& o) const { return n_ == o.n_ && d_ == o.d_; }

 private:
  int n_ = 0;
  std::vector<double> d_;
};

// BFS hop counts; throws DisconnectedGraph if some pair is unreachable.
DistanceMatrix all_pairs_distance(const CouplingMap& m);

// Fewest-hop path from a to b inclusive of both endpoints.
std::vector<int> shortest_path(const CouplingMap& m, int a, int b);

struct NoiseProfile {
  std::map<Edge, double> cx_error;
  std::map<Edge, double> swap_time;
  std::array<double, 3> alphas{0.5, 0.0, 0.5};

  static NoiseProfile uniform(const CouplingMap& m, double cx_error, double swap_time = 1.0);
  // Throws MissingEdgeData if the edge has no entry.
  double error(int a, int b) const;
  double time(int a, int b) const;
};

NoiseProfile noise_profile_from_json(const std::string& text);
NoiseProfile load_noise_profile(const std::string& path);

// Weighted shortest paths with w(i,j) = a1*eps + a2*T + a3*1 per edge.
DistanceMatrix noise_distance(const CouplingMap& m, const NoiseProfile& p);

}  // namespace nassc::topology
