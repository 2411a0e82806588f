#include "dihom/homalg.hpp"

#include <numeric>

namespace dihom {

namespace {

struct UnionFind {
  std::vector<int> parent, size;
  explicit UnionFind(int n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    int root = x;
    while (parent[root] != root) root = parent[root];
    while (parent[x] != root) {
      int next = parent[x];
      parent[x] = root;
      x = next;
    }
    return root;
  }
  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

PathComponents path_components(const ChainComplexSlice& slice) {
  const int n = static_cast<int>(slice.basis[0].size());
  UnionFind uf(n);
  if (slice.max_dim >= 1) {
    // each dimension-1 chain's boundary joins its two dimension-0 faces
    std::vector<int> touched(slice.bnd[1].cols, -1);
    for (const auto& e : slice.bnd[1].entries) {
      if (touched[e.c] < 0)
        touched[e.c] = e.r;
      else
        uf.merge(touched[e.c], e.r);
    }
  }
  PathComponents out;
  out.comp.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int root = uf.find(i);
    if (out.comp[root] < 0) out.comp[root] = out.count++;
    out.comp[i] = out.comp[root];
  }
  return out;
}

}  // namespace dihom
