#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chargeq/error.hpp"

namespace chargeq {

struct IdleQubit {
  int qubit = 0;
  int future_distance = 1;  // k, slots until next use (>= 1)
};

// Partition of the device into resonant clusters and idle qubits.
struct ResonantLayout {
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<int>> groups;  // each of size >= 3
  std::vector<IdleQubit> idle;

  std::size_t n_qubits() const {
    return 2 * pairs.size() + idle.size() +
           [this] {
             std::size_t s = 0;
             for (const auto& g : groups) s += g.size();
             return s;
           }();
  }

  // Clusters = pairs then groups, in declaration order.
  std::vector<std::vector<int>> clusters() const {
    std::vector<std::vector<int>> out;
    for (const auto& p : pairs) out.push_back({p.first, p.second});
    for (const auto& g : groups) out.push_back(g);
    return out;
  }

  bool is_active(int q) const {
    for (const auto& p : pairs)
      if (p.first == q || p.second == q) return true;
    for (const auto& g : groups)
      if (std::find(g.begin(), g.end(), q) != g.end()) return true;
    return false;
  }

  // -1 when idle; otherwise the cluster index in clusters() order.
  int cluster_of(int q) const {
    int c = 0;
    for (const auto& p : pairs) {
      if (p.first == q || p.second == q) return c;
      ++c;
    }
    for (const auto& g : groups) {
      if (std::find(g.begin(), g.end(), q) != g.end()) return c;
      ++c;
    }
    return -1;
  }

  static ResonantLayout all_idle(int n, int future_distance = 1) {
    ResonantLayout layout;
    for (int q = 0; q < n; ++q) layout.idle.push_back({q, future_distance});
    return layout;
  }
};

// Checks mutual disjointness and exact cover of 0..n-1.
inline void check_layout(const ResonantLayout& layout, std::size_t n) {
  std::vector<int> seen(n, 0);
  auto mark = [&](int q) {
    if (q < 0 || static_cast<std::size_t>(q) >= n)
      throw Error(ErrorKind::invalid_input,
                  "layout qubit index " + std::to_string(q) + " out of range");
    if (seen[q]++)
      throw Error(ErrorKind::invalid_input,
                  "layout qubit " + std::to_string(q) +
                      " appears in more than one place");
  };
  for (const auto& p : layout.pairs) {
    if (p.first == p.second)
      throw Error(ErrorKind::invalid_input, "pair with repeated qubit index");
    mark(p.first);
    mark(p.second);
  }
  for (const auto& g : layout.groups) {
    if (g.size() < 3)
      throw Error(ErrorKind::invalid_input, "group must contain at least 3 qubits");
    for (int q : g) mark(q);
  }
  for (const auto& iq : layout.idle) {
    if (iq.future_distance < 1)
      throw Error(ErrorKind::invalid_input, "idle future distance must be >= 1");
    mark(iq.qubit);
  }
  for (std::size_t q = 0; q < n; ++q)
    if (!seen[q])
      throw Error(ErrorKind::invalid_input,
                  "layout does not cover qubit " + std::to_string(q));
}

}  // namespace chargeq
