#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dihom/errors.hpp"

namespace dihom {

// Finite precubical sets: cells graded by dimension with lower/upper face
// maps d^0_i, d^1_i (0-based directions) satisfying the precubical identity
//   d^eps_i d^delta_j = d^delta_{j-1} d^eps_i   for i < j.
// Grid models (products of intervals minus some top cells) are built here as
// the geometric semantics of semaphore programs.

/// Handle of a cell: dimension + index into that dimension's cell list.
struct CellId {
  std::int32_t dim = 0;
  std::int32_t idx = 0;

  friend bool operator==(CellId a, CellId b) {
    return a.dim == b.dim && a.idx == b.idx;
  }
  friend bool operator!=(CellId a, CellId b) { return !(a == b); }
  friend bool operator<(CellId a, CellId b) {
    return a.dim != b.dim ? a.dim < b.dim : a.idx < b.idx;
  }
};

struct GridSpec {
  std::vector<int> extents;                 // (k_1,...,k_n), all >= 1
  std::set<std::vector<int>> forbidden;     // removed top-cell indices
};

class ReachablePairs {
 public:
  ReachablePairs() = default;
  ReachablePairs(int n_vertices);

  int vertex_count() const { return n_; }
  bool operator()(int v, int w) const {
    return (bits_[static_cast<std::size_t>(v) * words_ + (w >> 6)] >>
            (w & 63)) & 1u;
  }
  void set(int v, int w) {
    bits_[static_cast<std::size_t>(v) * words_ + (w >> 6)] |= 1ull << (w & 63);
  }
  /// All ordered pairs (v, w) with w reachable from v, lexicographic.
  std::vector<std::pair<int, int>> all() const;

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

class PrecubicalSet {
 public:
  PrecubicalSet() = default;

  // Raw construction from per-dimension global ids and face tables.
  // faces[n][i] holds the lower faces then the upper faces of the i-th
  // n-cell, each as n indices into dimension n-1.  Validates shape only;
  // the precubical identity is checked by verify_precubical_identity().
  struct FaceRow {
    std::vector<std::int32_t> d0, d1;
  };
  PrecubicalSet(std::vector<std::vector<std::int64_t>> cell_ids,
                std::vector<std::vector<FaceRow>> faces);

  int top_dim() const { return static_cast<int>(cell_ids_.size()) - 1; }
  int size(int dim) const {
    return dim >= 0 && dim <= top_dim()
               ? static_cast<int>(cell_ids_[dim].size())
               : 0;
  }
  int total_cells() const;
  int vertex_count() const { return size(0); }

  std::int64_t cell_id(CellId c) const { return cell_ids_[c.dim][c.idx]; }
  std::optional<CellId> find_id(std::int64_t id) const;

  /// Single face d^eps_i(c); requires dim(c) >= 1 and 0 <= i < dim(c).
  CellId face(CellId c, int eps, int i) const;

  /// Iterated face over the direction set given as a bitmask, applied in
  /// strictly decreasing direction order (the canonical order; any order
  /// agrees by the precubical identity).
  CellId iterated_face(CellId c, int eps, unsigned dirs) const;

  /// (d^0(c), d^1(c)) as vertex indices; a vertex yields (c, c).
  std::pair<int, int> corners(CellId c) const;

  int lower_corner(CellId c) const { return corners_[c.dim][c.idx].first; }
  int upper_corner(CellId c) const { return corners_[c.dim][c.idx].second; }

  /// Cubes of dimension >= 1 whose lower corner is the given vertex,
  /// ordered by (dim, idx).
  const std::vector<CellId>& cubes_from(int vertex) const {
    return cubes_from_[vertex];
  }

  // Optional vertex geometry (populated for grid models).
  bool has_coords() const { return !vertex_coords_.empty(); }
  const std::vector<int>& coords(int vertex) const {
    return vertex_coords_[vertex];
  }
  const std::vector<int>& extents() const { return extents_; }
  std::optional<int> vertex_at(const std::vector<int>& coords) const;
  std::string vertex_label(int vertex) const;

  /// First violation of the precubical identity, if any.
  struct IdentityViolation {
    CellId cell;
    int i, j, eps, delta;
  };
  std::optional<IdentityViolation> verify_precubical_identity() const;

  friend PrecubicalSet build_grid(const GridSpec& spec);
  friend PrecubicalSet length_covering(const PrecubicalSet& base, int lo,
                                       int hi);

 private:
  void finalize();  // corner cache, cubes_from index, id lookup

  std::vector<std::vector<std::int64_t>> cell_ids_;
  std::vector<std::vector<FaceRow>> faces_;  // faces_[0] unused
  std::vector<std::vector<std::pair<int, int>>> corners_;
  std::vector<std::vector<CellId>> cubes_from_;
  std::map<std::int64_t, CellId> id_lookup_;
  std::vector<std::vector<int>> vertex_coords_;
  std::vector<int> extents_;
};

/// Grid model on prod [0,k_l]: all sub-cubes of the subdivided box except the
/// forbidden top cells; faces of a removed top cell are retained.
PrecubicalSet build_grid(const GridSpec& spec);

/// Finite window [lo, hi] of the length covering: cells (c, k) with faces
/// d^eps_i(c, k) = (d^eps_i(c), k + eps); cells whose faces exit the window
/// are dropped.  Global ids are base_id * W + (k - lo) with W = hi - lo + 1.
PrecubicalSet length_covering(const PrecubicalSet& base, int lo, int hi);

struct ProperReport {
  bool proper = true;
  CellId a, b;  // colliding cells when not proper
};

/// A complex is proper when cells are distinguished by their corner sets
/// {d^0(c), d^1(c)} (a loop edge collides with its own vertex).
ProperReport is_proper(const PrecubicalSet& X);

/// Transitive-reflexive closure of the 1-cube relation.
ReachablePairs reachable_pairs(const PrecubicalSet& X);

/// True when some directed edge path returns to its start (v -> w -> v with
/// v != w, or a self-loop edge).  Chain enumeration requires loop-free input.
bool has_directed_loop(const PrecubicalSet& X, const ReachablePairs& reach);

}  // namespace dihom
