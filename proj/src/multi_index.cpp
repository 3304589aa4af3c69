#include "ttc/multi_index.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace ttc {

std::vector<MultiIndex> multi_index_enumerate(int p) {
  if (p < 0) throw std::invalid_argument("multi_index_enumerate: p < 0");
  std::vector<MultiIndex> out;
  out.reserve(table_size(p));
  for (int n = 0; n <= p; ++n)
    for (int k1 = 0; k1 <= n; ++k1)
      for (int k2 = 0; k2 <= n - k1; ++k2)
        out.push_back({k1, k2, n - k1 - k2});
  return out;
}

namespace {

std::unique_ptr<IndexGraph> build_graph(int p) {
  auto g = std::make_unique<IndexGraph>();
  g->max_order = p;
  g->indices = multi_index_enumerate(p);
  const size_t n = g->indices.size();
  g->minus_one.resize(n);
  g->minus_two.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const MultiIndex& k = g->indices[i];
    const int c[3] = {k.k1, k.k2, k.k3};
    for (int ax = 0; ax < 3; ++ax) {
      int m[3] = {c[0], c[1], c[2]};
      m[ax] -= 1;
      g->minus_one[i][ax] =
          m[ax] < 0 ? -1 : int32_t(table_index(m[0], m[1], m[2]));
      m[ax] -= 1;
      g->minus_two[i][ax] =
          m[ax] < 0 ? -1 : int32_t(table_index(m[0], m[1], m[2]));
    }
  }
  return g;
}

}  // namespace

const IndexGraph& index_graph(int p) {
  static std::mutex mutex;
  static std::unordered_map<int, std::unique_ptr<IndexGraph>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[p];
  if (!slot) slot = build_graph(p);
  return *slot;
}

}  // namespace ttc
