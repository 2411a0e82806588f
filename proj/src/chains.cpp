#include "dihom/chains.hpp"

#include <algorithm>
#include <map>

namespace dihom {

bool ChainLess::operator()(const CubeChain& a, const CubeChain& b) const {
  int la = a.length(), lb = b.length();
  if (la != lb) return la < lb;
  auto ta = a.type(), tb = b.type();
  if (ta != tb) return ta < tb;
  if (a.cubes != b.cubes) return a.cubes < b.cubes;
  if (a.v != b.v) return a.v < b.v;
  return a.w < b.w;
}

int sgn_of(unsigned dir_mask) {
  int sum = 0, r = 0;
  for (unsigned m = dir_mask, i = 0; m; m >>= 1, ++i)
    if (m & 1) {
      sum += static_cast<int>(i);
      ++r;
    }
  return ((sum - r * (r + 1) / 2) % 2 == 0) ? 1 : -1;
}

int split_sign(unsigned dir_mask) {
  // parity of inversions of the shuffle listing I before its complement,
  // i.e. #{(a, b) : a not in I, b in I, a < b}; equals sum(I) - r(r-1)/2
  int sum = 0, r = 0;
  for (unsigned m = dir_mask, i = 0; m; m >>= 1, ++i)
    if (m & 1) {
      sum += static_cast<int>(i);
      ++r;
    }
  return ((sum - r * (r - 1) / 2) % 2 == 0) ? 1 : -1;
}

bool chain_is_valid(const PrecubicalSet& X, const CubeChain& c) {
  if (c.cubes.empty()) return c.v == c.w;
  if (X.lower_corner(c.cubes.front()) != c.v) return false;
  if (X.upper_corner(c.cubes.back()) != c.w) return false;
  for (std::size_t i = 0; i + 1 < c.cubes.size(); ++i)
    if (X.upper_corner(c.cubes[i]) != X.lower_corner(c.cubes[i + 1]))
      return false;
  for (CellId q : c.cubes)
    if (q.dim < 1) return false;
  return true;
}

CubeChain chain_face(const PrecubicalSet& X, const CubeChain& c, int k,
                     unsigned dir_mask) {
  if (k < 1 || k > static_cast<int>(c.cubes.size()))
    throw DomainError("chain_face position out of range");
  CellId cube = c.cubes[k - 1];
  const unsigned full = (1u << cube.dim) - 1;
  if (dir_mask == 0 || dir_mask == full || (dir_mask & ~full))
    throw DomainError("chain_face needs a proper nonempty direction subset");
  CubeChain out;
  out.v = c.v;
  out.w = c.w;
  out.cubes.reserve(c.cubes.size() + 1);
  out.cubes.insert(out.cubes.end(), c.cubes.begin(), c.cubes.begin() + k - 1);
  out.cubes.push_back(X.iterated_face(cube, 0, full & ~dir_mask));
  out.cubes.push_back(X.iterated_face(cube, 1, dir_mask));
  out.cubes.insert(out.cubes.end(), c.cubes.begin() + k, c.cubes.end());
  return out;
}

std::vector<BoundaryTerm> boundary(const PrecubicalSet& X,
                                   const CubeChain& c) {
  // Summand sign: (-1)^{n_1+...+n_{k-1}+k+r} times the inversion parity of
  // the (I, complement) shuffle.  On square splits (r = 1) this agrees with
  // the familiar two-term convention; the r-dependence is what makes the
  // operator square to zero on higher cubes (checked by the property suite).
  std::map<CubeChain, long long, ChainLess> acc;
  int prefix = 0;  // n_1 + ... + n_{k-1}
  for (int k = 1; k <= static_cast<int>(c.cubes.size()); ++k) {
    const int nk = c.cubes[k - 1].dim;
    const unsigned full = (1u << nk) - 1;
    for (unsigned I = 1; I < full; ++I) {
      const int r = __builtin_popcount(I);
      const int exp = prefix + k + r;
      const long long s =
          static_cast<long long>((exp % 2 == 0) ? 1 : -1) * split_sign(I);
      acc[chain_face(X, c, k, I)] += s;
    }
    prefix += nk;
  }
  std::vector<BoundaryTerm> out;
  out.reserve(acc.size());
  for (auto& [chain, coeff] : acc)
    if (coeff != 0) out.push_back(BoundaryTerm{chain, coeff});
  return out;
}

std::vector<std::vector<CubeChain>> enumerate_chains(
    const PrecubicalSet& X, int v, int w, int max_dim,
    const ReachablePairs& reach) {
  if (max_dim < 0) throw DomainError("max_dim must be >= 0");
  std::vector<std::vector<CubeChain>> out(max_dim + 1);
  if (!reach(v, w)) return out;

  std::vector<CellId> stack;
  // Depth-first over cubes keyed by lower corner; dimension only grows, so
  // pruning on max_dim keeps the search exhaustive for the window.  On a
  // loop-free complex a chain visits each vertex at most once, bounding the
  // stack; a deeper stack means the input has a directed loop.
  const std::size_t depth_limit = static_cast<std::size_t>(X.vertex_count());
  std::function<void(int, int)> dfs = [&](int at, int dim) {
    if (stack.size() > depth_limit)
      throw ModelError(
          "chain enumeration exceeded the loop-free depth bound; the "
          "complex has a directed loop");
    if (at == w) {
      CubeChain c;
      c.v = v;
      c.w = w;
      c.cubes = stack;
      out[dim].push_back(std::move(c));
      // fall through: w may still lead onward only via loops, which are
      // excluded, so stopping here would also be correct; continuing costs
      // nothing because cubes_from(w) cannot return to w.
    }
    for (CellId q : X.cubes_from(at)) {
      const int nd = dim + q.dim - 1;
      if (nd > max_dim) continue;
      const int next = X.upper_corner(q);
      if (!reach(next, w)) continue;
      stack.push_back(q);
      dfs(next, nd);
      stack.pop_back();
    }
  };
  dfs(v, 0);
  ChainLess less;
  for (auto& chains : out) std::sort(chains.begin(), chains.end(), less);
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw DomainError("matrix shape mismatch");
  // column-major walk of b against row lists of a
  std::vector<std::vector<std::pair<int, long long>>> a_cols(a.cols);
  for (const auto& t : a.entries) a_cols[t.c].push_back({t.r, t.val});
  std::map<std::pair<int, int>, long long> acc;
  for (const auto& t : b.entries)
    for (auto [r, val] : a_cols[t.r]) acc[{r, t.c}] += val * t.val;
  IntMatrix out;
  out.rows = a.rows;
  out.cols = b.cols;
  for (auto& [rc, val] : acc)
    if (val != 0) out.entries.push_back({rc.first, rc.second, val});
  return out;
}

int ChainComplexSlice::find(const CubeChain& c) const {
  const int d = c.dimension();
  if (d < 0 || d > max_dim) return -1;
  auto it = index_[d].find(c);
  return it == index_[d].end() ? -1 : it->second;
}

ChainComplexSlice complex_slice(const PrecubicalSet& X, int v, int w,
                                int max_dim, const ReachablePairs& reach) {
  ChainComplexSlice s;
  s.v = v;
  s.w = w;
  s.max_dim = max_dim;
  s.basis = enumerate_chains(X, v, w, max_dim, reach);
  s.index_.resize(max_dim + 1);
  for (int d = 0; d <= max_dim; ++d) {
    s.index_[d].reserve(s.basis[d].size() * 2);
    for (int i = 0; i < static_cast<int>(s.basis[d].size()); ++i)
      s.index_[d].emplace(s.basis[d][i], i);
  }
  s.bnd.resize(max_dim + 1);
  for (int d = 1; d <= max_dim; ++d) {
    IntMatrix& m = s.bnd[d];
    m.rows = static_cast<int>(s.basis[d - 1].size());
    m.cols = static_cast<int>(s.basis[d].size());
    for (int col = 0; col < m.cols; ++col)
      for (const BoundaryTerm& t : boundary(X, s.basis[d][col])) {
        auto it = s.index_[d - 1].find(t.chain);
        if (it == s.index_[d - 1].end())
          throw IntegrityError(
              "boundary term missing from the exhaustive basis");
        m.entries.push_back({it->second, col, t.coeff});
      }
  }
  return s;
}

std::optional<std::pair<int, int>> verify_dd_zero(
    const ChainComplexSlice& slice) {
  for (int d = 2; d <= slice.max_dim; ++d) {
    IntMatrix prod = multiply(slice.bnd[d - 1], slice.bnd[d]);
    if (!prod.entries.empty())
      return std::make_pair(d, prod.entries.front().c);
  }
  return std::nullopt;
}

EqualLengthReport check_equal_length(
    const PrecubicalSet& X, const ReachablePairs& reach, int max_dim,
    std::optional<std::pair<int, int>> pair) {
  std::vector<std::pair<int, int>> scope;
  if (pair)
    scope.push_back(*pair);
  else
    scope = reach.all();
  for (auto [v, w] : scope) {
    auto chains = enumerate_chains(X, v, w, max_dim, reach);
    for (int d = 0; d <= max_dim; ++d) {
      if (chains[d].empty()) continue;
      const int len = chains[d].front().length();
      for (const CubeChain& c : chains[d])
        if (c.length() != len) {
          EqualLengthReport r;
          r.ok = false;
          r.v = v;
          r.w = w;
          r.dim = d;
          r.a = chains[d].front();
          r.b = c;
          return r;
        }
    }
  }
  return EqualLengthReport{};
}

}  // namespace dihom
