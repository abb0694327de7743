#include "nassc/routing/mapping.hpp"

#include <algorithm>
#include <numeric>

#include "nassc/error.hpp"

namespace nassc::routing {

QubitMapping::QubitMapping(std::vector<int> log_to_phys) : l2p_(std::move(log_to_phys)) {
  p2l_.assign(l2p_.size(), -1);
  for (std::size_t l = 0; l < l2p_.size(); ++l) {
    const int p = l2p_[l];
    if (p < 0 || static_cast<std::size_t>(p) >= l2p_.size() || p2l_[static_cast<std::size_t>(p)] >= 0) {
      throw ConfigError("layout is not a permutation");
    }
    p2l_[static_cast<std::size_t>(p)] = static_cast<int>(l);
  }
}

QubitMapping QubitMapping::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return QubitMapping(std::move(v));
}

QubitMapping QubitMapping::random(int n, std::mt19937_64& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  // Fisher-Yates with an explicit modulus keeps layouts identical across
  // standard library implementations.
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
  return QubitMapping(std::move(v));
}

void QubitMapping::swap_physical(int p, int q) {
  const int lp = p2l_[static_cast<std::size_t>(p)], lq = p2l_[static_cast<std::size_t>(q)];
  std::swap(p2l_[static_cast<std::size_t>(p)], p2l_[static_cast<std::size_t>(q)]);
  l2p_[static_cast<std::size_t>(lp)] = q;
  l2p_[static_cast<std::size_t>(lq)] = p;
}

}  // namespace nassc::routing
