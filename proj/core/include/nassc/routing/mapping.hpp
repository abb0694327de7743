#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace nassc::routing {

// Bijection between logical and physical qubits of equal count.
class QubitMapping {
 public:
  QubitMapping() = default;
  explicit QubitMapping(std::vector<int> log_to_phys);

  static QubitMapping identity(int n);
  static QubitMapping random(int n, std::mt19937_64& rng);

  int size() const { return static_cast<int>(l2p_.size()); }
  int phys(int logical) const { return l2p_[static_cast<std::size_t>(logical)]; }
  int logical(int physical) const { return p2l_[static_cast<std::size_t>(physical)]; }
  const std::vector<int>& log_to_phys() const { return l2p_; }
  const std::vector<int>& phys_to_log() const { return p2l_; }

  void swap_physical(int p, int q);

  bool operator==(const QubitMapping& o) const { return l2p_ == o.l2p_; }

 private:
  std::vector<int> l2p_, p2l_;
};

}  // namespace nassc::routing
