#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dihom/precubical.hpp"

namespace dihom {

// Cube chains: corner-to-corner sequences of cubes, the combinatorial model
// of traces.  R_{i+1}[X]_v^w is generated by the chains of dimension i; the
// signed boundary below makes the per-pair slices chain complexes.

/// A cube chain from v to w.  Empty exactly when v == w (a constant path).
struct CubeChain {
  std::int32_t v = 0, w = 0;
  std::vector<CellId> cubes;

  bool is_empty_chain() const { return cubes.empty(); }
  /// dim = sum(n_k) - l; 0 for the empty chain.
  int dimension() const {
    int d = 0;
    for (CellId c : cubes) d += c.dim - 1;
    return d;
  }
  /// length = sum(n_k).
  int length() const {
    int s = 0;
    for (CellId c : cubes) s += c.dim;
    return s;
  }
  std::vector<int> type() const {
    std::vector<int> t;
    t.reserve(cubes.size());
    for (CellId c : cubes) t.push_back(c.dim);
    return t;
  }

  friend bool operator==(const CubeChain& a, const CubeChain& b) {
    return a.v == b.v && a.w == b.w && a.cubes == b.cubes;
  }
};

/// Canonical basis order: length, then type (lexicographic), then cube ids.
struct ChainLess {
  bool operator()(const CubeChain& a, const CubeChain& b) const;
};

struct ChainHash {
  std::size_t operator()(const CubeChain& c) const {
    std::size_t h = std::hash<std::int64_t>()(
        (static_cast<std::int64_t>(c.v) << 32) ^ c.w);
    for (CellId q : c.cubes) {
      std::size_t k = std::hash<std::int64_t>()(
          (static_cast<std::int64_t>(q.dim) << 32) ^ q.idx);
      h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Sign of a direction subset: +1 iff sum(I) == |I|(|I|+1)/2 mod 2.
int sgn_of(unsigned dir_mask);

/// Shuffle sign of a direction subset: the inversion parity of listing I
/// before its complement.  This is the subset sign the boundary operator
/// uses; it matches sgn_of up to the factor (-1)^|I|.
int split_sign(unsigned dir_mask);

/// Whether the chain's cube corners match up (and endpoints agree).
bool chain_is_valid(const PrecubicalSet& X, const CubeChain& c);

/// d_{k,I}: replace c_k by the pair (d^0 over the complement of I, d^1 over
/// I).  k is 1-based; requires 0 < |I| < dim(c_k).
CubeChain chain_face(const PrecubicalSet& X, const CubeChain& c, int k,
                     unsigned dir_mask);

/// One signed term of a boundary.
struct BoundaryTerm {
  CubeChain chain;
  long long coeff;
};

/// Signed boundary: sum over k, r, I of
/// (-1)^{n_1+...+n_{k-1}+k+r+1} sgn(I) d_{k,I}(c).  Zero for dim 0.
/// Terms are combined, zero-free, and sorted canonically.
std::vector<BoundaryTerm> boundary(const PrecubicalSet& X,
                                   const CubeChain& c);

/// Exhaustive per-dimension chain lists for a pair, canonically ordered.
/// The empty chain appears (dim 0) iff v == w.  Requires loop-free input.
std::vector<std::vector<CubeChain>> enumerate_chains(
    const PrecubicalSet& X, int v, int w, int max_dim,
    const ReachablePairs& reach);

struct IntTriplet {
  std::int32_t r, c;
  long long val;
};

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<IntTriplet> entries;
};

/// Sparse integer product a*b (for d∘d = 0 checks).
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// The chain complex of a pair up to max_dim: bases plus the boundary
/// matrices bnd[d] : R(dim d) -> R(dim d-1) in the canonical bases.
class ChainComplexSlice {
 public:
  int v = 0, w = 0;
  int max_dim = 0;
  std::vector<std::vector<CubeChain>> basis;  // dim -> chains
  std::vector<IntMatrix> bnd;                 // bnd[0] empty

  int find(const CubeChain& c) const;  // -1 when absent
  const IntMatrix& boundary_matrix(int dim) const { return bnd[dim]; }

  friend ChainComplexSlice complex_slice(const PrecubicalSet& X, int v, int w,
                                         int max_dim,
                                         const ReachablePairs& reach);

 private:
  std::vector<std::unordered_map<CubeChain, int, ChainHash>> index_;
};

ChainComplexSlice complex_slice(const PrecubicalSet& X, int v, int w,
                                int max_dim, const ReachablePairs& reach);

/// First column (if any) on which d∘d != 0; nullopt when the slice is a
/// complex, as it must be.
std::optional<std::pair<int, int>> verify_dd_zero(
    const ChainComplexSlice& slice);

struct EqualLengthReport {
  bool ok = true;
  int v = 0, w = 0, dim = 0;
  CubeChain a, b;  // first counterexample: same dim, different lengths
};

/// Equal-length hypothesis: within each pair in scope and each dimension,
/// all chains share one length.  Scope is one pair or all reachable pairs.
EqualLengthReport check_equal_length(
    const PrecubicalSet& X, const ReachablePairs& reach, int max_dim,
    std::optional<std::pair<int, int>> pair = std::nullopt);

}  // namespace dihom
