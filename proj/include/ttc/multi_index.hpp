#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ttc {

/// 3D multi-index. Tables over multi-indices use the canonical ordering:
/// by total order, then lexicographic in (k1, k2, k3).
struct MultiIndex {
  int k1 = 0, k2 = 0, k3 = 0;

  int order() const { return k1 + k2 + k3; }
  bool operator==(const MultiIndex&) const = default;
};

/// Number of multi-indices with order <= p: (p+1)(p+2)(p+3)/6.
constexpr size_t table_size(int p) {
  return size_t(p + 1) * (p + 2) * (p + 3) / 6;
}

/// Position of k in the canonical ordering.
constexpr size_t table_index(int k1, int k2, int k3) {
  const int n = k1 + k2 + k3;
  const size_t block = size_t(n) * (n + 1) * (n + 2) / 6;
  return block + size_t(k1) * (n + 1) - size_t(k1) * (k1 - 1) / 2 + k2;
}

std::vector<MultiIndex> multi_index_enumerate(int p);

/// Per-entry links into lower-order table slots: steps[i] = index of k - e_i
/// (or -1), steps2[i] = index of k - 2 e_i (or -1). Shared by the
/// coefficient recurrence and the monomial tables.
struct IndexGraph {
  int max_order = -1;
  std::vector<MultiIndex> indices;
  std::vector<std::array<int32_t, 3>> minus_one;
  std::vector<std::array<int32_t, 3>> minus_two;
};

/// Returns a graph covering orders <= p. The result references a grow-only
/// process-wide cache; calls are thread-safe.
const IndexGraph& index_graph(int p);

}  // namespace ttc
