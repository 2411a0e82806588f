#include "dihom/precubical.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace dihom {

ReachablePairs::ReachablePairs(int n_vertices)
    : n_(n_vertices), words_((n_vertices + 63) / 64) {
  bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

std::vector<std::pair<int, int>> ReachablePairs::all() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < n_; ++v)
    for (int w = 0; w < n_; ++w)
      if ((*this)(v, w)) out.emplace_back(v, w);
  return out;
}

PrecubicalSet::PrecubicalSet(std::vector<std::vector<std::int64_t>> cell_ids,
                             std::vector<std::vector<FaceRow>> faces)
    : cell_ids_(std::move(cell_ids)), faces_(std::move(faces)) {
  if (faces_.size() < cell_ids_.size()) faces_.resize(cell_ids_.size());
  for (int n = 1; n <= top_dim(); ++n) {
    if (faces_[n].size() != cell_ids_[n].size())
      throw ModelError("face table size mismatch in dimension " +
                       std::to_string(n));
    for (std::size_t i = 0; i < faces_[n].size(); ++i) {
      const FaceRow& row = faces_[n][i];
      if (static_cast<int>(row.d0.size()) != n ||
          static_cast<int>(row.d1.size()) != n)
        throw ModelError("cell " + std::to_string(cell_ids_[n][i]) +
                         " needs " + std::to_string(n) +
                         " lower and upper faces");
      for (int k = 0; k < n; ++k)
        if (row.d0[k] < 0 || row.d0[k] >= size(n - 1) || row.d1[k] < 0 ||
            row.d1[k] >= size(n - 1))
          throw ModelError("face of cell " + std::to_string(cell_ids_[n][i]) +
                           " references a missing cell");
    }
  }
  finalize();
}

int PrecubicalSet::total_cells() const {
  int t = 0;
  for (int n = 0; n <= top_dim(); ++n) t += size(n);
  return t;
}

std::optional<CellId> PrecubicalSet::find_id(std::int64_t id) const {
  auto it = id_lookup_.find(id);
  if (it == id_lookup_.end()) return std::nullopt;
  return it->second;
}

CellId PrecubicalSet::face(CellId c, int eps, int i) const {
  if (c.dim < 1) throw DomainError("face of a vertex");
  if (i < 0 || i >= c.dim)
    throw DomainError("face direction " + std::to_string(i) +
                      " out of range for a " + std::to_string(c.dim) +
                      "-cube");
  if (eps != 0 && eps != 1) throw DomainError("face side must be 0 or 1");
  const FaceRow& row = faces_[c.dim][c.idx];
  return CellId{c.dim - 1, eps == 0 ? row.d0[i] : row.d1[i]};
}

CellId PrecubicalSet::iterated_face(CellId c, int eps, unsigned dirs) const {
  if (dirs >> c.dim)
    throw DomainError("direction set not a subset of the cube's directions");
  for (int i = c.dim - 1; i >= 0; --i)
    if (dirs & (1u << i)) c = face(c, eps, i);
  return c;
}

std::pair<int, int> PrecubicalSet::corners(CellId c) const {
  return corners_[c.dim][c.idx];
}

std::optional<int> PrecubicalSet::vertex_at(
    const std::vector<int>& coords) const {
  if (!has_coords()) return std::nullopt;
  for (int v = 0; v < vertex_count(); ++v)
    if (vertex_coords_[v] == coords) return v;
  return std::nullopt;
}

std::string PrecubicalSet::vertex_label(int vertex) const {
  if (!has_coords()) return std::to_string(cell_ids_[0][vertex]);
  std::ostringstream os;
  os << '(';
  const auto& c = vertex_coords_[vertex];
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ')';
  return os.str();
}

std::optional<PrecubicalSet::IdentityViolation>
PrecubicalSet::verify_precubical_identity() const {
  for (int n = 2; n <= top_dim(); ++n)
    for (int idx = 0; idx < size(n); ++idx) {
      CellId c{n, idx};
      for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
          for (int eps = 0; eps < 2; ++eps)
            for (int delta = 0; delta < 2; ++delta) {
              CellId lhs = face(face(c, delta, j), eps, i);
              CellId rhs = face(face(c, eps, i), delta, j - 1);
              if (lhs != rhs)
                return IdentityViolation{c, i, j, eps, delta};
            }
    }
  return std::nullopt;
}

void PrecubicalSet::finalize() {
  corners_.assign(cell_ids_.size(), {});
  for (int n = 0; n <= top_dim(); ++n) {
    corners_[n].resize(cell_ids_[n].size());
    for (int idx = 0; idx < size(n); ++idx) {
      if (n == 0) {
        corners_[n][idx] = {idx, idx};
        continue;
      }
      // lower/upper corner of an n-cube = corner of any face; recurse via
      // the already-filled dimension n-1.
      CellId lo = face(CellId{n, idx}, 0, n - 1);
      CellId hi = face(CellId{n, idx}, 1, n - 1);
      corners_[n][idx] = {corners_[n - 1][lo.idx].first,
                          corners_[n - 1][hi.idx].second};
    }
  }
  cubes_from_.assign(vertex_count(), {});
  for (int n = 1; n <= top_dim(); ++n)
    for (int idx = 0; idx < size(n); ++idx)
      cubes_from_[corners_[n][idx].first].push_back(CellId{n, idx});
  for (auto& v : cubes_from_) std::sort(v.begin(), v.end());
  id_lookup_.clear();
  for (int n = 0; n <= top_dim(); ++n)
    for (int idx = 0; idx < size(n); ++idx) {
      auto [it, fresh] =
          id_lookup_.emplace(cell_ids_[n][idx], CellId{n, idx});
      if (!fresh)
        throw ModelError("duplicate cell id " +
                         std::to_string(cell_ids_[n][idx]));
    }
}

namespace {

// Mixed-radix rank of a base corner within prod [0, k_l]; used with the
// direction bitmask as a deterministic cube key.
std::uint64_t grid_key(const std::vector<int>& base, unsigned dirs,
                       const std::vector<int>& extents) {
  std::uint64_t r = 0;
  for (std::size_t l = 0; l < base.size(); ++l)
    r = r * static_cast<std::uint64_t>(extents[l] + 1) +
        static_cast<std::uint64_t>(base[l]);
  return (r << extents.size()) | dirs;
}

}  // namespace

PrecubicalSet build_grid(const GridSpec& spec) {
  const int n = static_cast<int>(spec.extents.size());
  for (int k : spec.extents)
    if (k < 1) throw DomainError("grid extents must all be >= 1");
  for (const auto& cell : spec.forbidden) {
    if (static_cast<int>(cell.size()) != n)
      throw DomainError("forbidden cell arity does not match the grid");
    for (int l = 0; l < n; ++l)
      if (cell[l] < 0 || cell[l] >= spec.extents[l])
        throw DomainError("forbidden cell index out of range");
  }

  PrecubicalSet X;
  X.extents_ = spec.extents;
  X.cell_ids_.assign(n + 1, {});
  X.faces_.assign(n + 1, {});

  // Enumerate cubes (base, dirs) per dimension in lexicographic order.
  std::vector<std::map<std::uint64_t, std::int32_t>> index(n + 1);
  std::int64_t next_id = 0;
  std::vector<std::vector<std::pair<std::vector<int>, unsigned>>> cubes(n + 1);

  std::vector<int> base(n, 0);
  bool done = n == 0;
  auto advance = [&]() {
    for (int l = n - 1; l >= 0; --l) {
      if (++base[l] <= spec.extents[l]) return true;
      base[l] = 0;
    }
    return false;
  };
  // n == 0: a single point.
  if (n == 0) {
    X.cell_ids_[0].push_back(0);
    X.vertex_coords_.push_back({});
    X.finalize();
    return X;
  }
  while (!done) {
    for (unsigned dirs = 0; dirs < (1u << n); ++dirs) {
      int m = __builtin_popcount(dirs);
      bool fits = true;
      for (int l = 0; l < n && fits; ++l)
        if ((dirs & (1u << l)) && base[l] + 1 > spec.extents[l]) fits = false;
      if (!fits) continue;
      if (m == n && spec.forbidden.count(base)) continue;  // removed top cell
      cubes[m].push_back({base, dirs});
    }
    done = !advance();
  }
  // Lexicographic (base, dirs) order within each dimension; assign ids
  // dimension-major so global ids are deterministic.
  for (int m = 0; m <= n; ++m) {
    std::sort(cubes[m].begin(), cubes[m].end());
    for (auto& [b, dirs] : cubes[m]) {
      index[m][grid_key(b, dirs, spec.extents)] =
          static_cast<std::int32_t>(X.cell_ids_[m].size());
      X.cell_ids_[m].push_back(next_id++);
      if (m == 0) X.vertex_coords_.push_back(b);
    }
  }
  for (int m = 1; m <= n; ++m) {
    X.faces_[m].resize(cubes[m].size());
    for (std::size_t i = 0; i < cubes[m].size(); ++i) {
      const auto& [b, dirs] = cubes[m][i];
      PrecubicalSet::FaceRow row;
      row.d0.resize(m);
      row.d1.resize(m);
      int local = 0;
      for (int l = 0; l < n; ++l) {
        if (!(dirs & (1u << l))) continue;
        unsigned sub = dirs & ~(1u << l);
        auto lo = index[m - 1].find(grid_key(b, sub, spec.extents));
        std::vector<int> shifted = b;
        shifted[l] += 1;
        auto hi = index[m - 1].find(grid_key(shifted, sub, spec.extents));
        if (lo == index[m - 1].end() || hi == index[m - 1].end())
          throw IntegrityError("grid face lookup failed");
        row.d0[local] = lo->second;
        row.d1[local] = hi->second;
        ++local;
      }
      X.faces_[m][i] = std::move(row);
    }
  }
  X.finalize();
  return X;
}

PrecubicalSet length_covering(const PrecubicalSet& base, int lo, int hi) {
  if (lo > hi) throw DomainError("length covering window is empty");
  const std::int64_t W = hi - lo + 1;

  PrecubicalSet X;
  X.cell_ids_.assign(base.top_dim() + 1, {});
  X.faces_.assign(base.top_dim() + 1, {});

  // Cell (c, k) keeps id base_id * W + (k - lo).  Vertices exist at every
  // level; a positive-dimensional cell needs both levels k and k+1 inside
  // the window because d^1 lands at k+1.
  std::vector<std::vector<std::int32_t>> level_index(base.top_dim() + 1);
  for (int n = 0; n <= base.top_dim(); ++n) {
    const int levels = n == 0 ? hi - lo + 1 : hi - lo;
    level_index[n].assign(static_cast<std::size_t>(base.size(n)) *
                              std::max(levels, 0),
                          -1);
    for (int idx = 0; idx < base.size(n); ++idx)
      for (int k = 0; k < levels; ++k) {
        level_index[n][static_cast<std::size_t>(idx) * levels + k] =
            static_cast<std::int32_t>(X.cell_ids_[n].size());
        X.cell_ids_[n].push_back(base.cell_id(CellId{n, idx}) * W + k);
      }
    if (n == 0) continue;
    const int vlevels = hi - lo + 1;
    X.faces_[n].resize(X.cell_ids_[n].size());
    for (int idx = 0; idx < base.size(n); ++idx)
      for (int k = 0; k < levels; ++k) {
        PrecubicalSet::FaceRow row;
        row.d0.resize(n);
        row.d1.resize(n);
        for (int i = 0; i < n; ++i) {
          CellId f0 = base.face(CellId{n, idx}, 0, i);
          CellId f1 = base.face(CellId{n, idx}, 1, i);
          const int sub_levels = n - 1 == 0 ? vlevels : hi - lo;
          row.d0[i] = level_index[n - 1][static_cast<std::size_t>(f0.idx) *
                                             sub_levels + k];
          row.d1[i] = level_index[n - 1][static_cast<std::size_t>(f1.idx) *
                                             sub_levels + k + 1];
          if (row.d0[i] < 0 || row.d1[i] < 0)
            throw IntegrityError("length covering face exits the window");
        }
        X.faces_[n][static_cast<std::size_t>(
            level_index[n][static_cast<std::size_t>(idx) * levels + k])] =
            std::move(row);
      }
  }
  X.finalize();
  return X;
}

ProperReport is_proper(const PrecubicalSet& X) {
  std::map<std::pair<int, int>, CellId> seen;
  for (int n = 0; n <= X.top_dim(); ++n)
    for (int idx = 0; idx < X.size(n); ++idx) {
      CellId c{n, idx};
      auto [a, b] = X.corners(c);
      std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto [it, fresh] = seen.emplace(key, c);
      if (!fresh) return ProperReport{false, it->second, c};
    }
  return ProperReport{};
}

ReachablePairs reachable_pairs(const PrecubicalSet& X) {
  const int n = X.vertex_count();
  std::vector<std::vector<int>> succ(n);
  for (int e = 0; e < X.size(1); ++e) {
    auto [v, w] = X.corners(CellId{1, e});
    succ[v].push_back(w);
  }
  ReachablePairs r(n);
  std::deque<int> queue;
  std::vector<char> seen(n);
  for (int v = 0; v < n; ++v) {
    std::fill(seen.begin(), seen.end(), 0);
    queue.assign(1, v);
    seen[v] = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      r.set(v, u);
      for (int w : succ[u])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
  }
  return r;
}

bool has_directed_loop(const PrecubicalSet& X, const ReachablePairs& reach) {
  for (int e = 0; e < X.size(1); ++e) {
    auto [v, w] = X.corners(CellId{1, e});
    if (v == w) return true;  // self-loop edge
  }
  const int n = X.vertex_count();
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (reach(v, w) && reach(w, v)) return true;
  return false;
}

}  // namespace dihom
