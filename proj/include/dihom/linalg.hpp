#pragma once

#include <algorithm>
#include <vector>

#include "dihom/chains.hpp"
#include "dihom/errors.hpp"

namespace dihom {

// Exact sparse Gaussian elimination, templated on the coefficient field.
// Rows are sorted sparse vectors; pivots are chosen column-by-column taking
// the sparsest candidate row, which keeps the incidence-like boundary
// matrices near-linear and makes every result deterministic.

template <class F>
using SparseVec = std::vector<std::pair<int, typename F::Elem>>;  // sorted

template <class F>
SparseVec<F> sparse_scale(const F& fld, const SparseVec<F>& v,
                          const typename F::Elem& s) {
  SparseVec<F> out;
  if (fld.is_zero(s)) return out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.push_back({i, fld.mul(x, s)});
  return out;
}

// a + s*b
template <class F>
SparseVec<F> sparse_axpy(const F& fld, const SparseVec<F>& a,
                         const typename F::Elem& s, const SparseVec<F>& b) {
  SparseVec<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      auto x = fld.mul(s, b[j].second);
      if (!fld.is_zero(x)) out.push_back({b[j].first, x});
      ++j;
    } else {
      auto x = fld.add(a[i].second, fld.mul(s, b[j].second));
      if (!fld.is_zero(x)) out.push_back({a[i].first, x});
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
const typename F::Elem* sparse_at(const SparseVec<F>& v, int col) {
  auto it = std::lower_bound(
      v.begin(), v.end(), col,
      [](const auto& e, int c) { return e.first < c; });
  if (it == v.end() || it->first != col) return nullptr;
  return &it->second;
}

/// Row-echelon form.  Rows are normalized (pivot = 1) and listed in
/// increasing pivot-column order; with `reduced`, entries above pivots are
/// cleared as well (RREF), which is what kernel extraction needs.
template <class F>
struct Echelon {
  int cols = 0;
  std::vector<SparseVec<F>> rows;   // pivot cols strictly increasing
  std::vector<int> pivot_col;       // per row
  std::vector<int> pivot_of_col;    // col -> row index or -1

  int rank() const { return static_cast<int>(rows.size()); }

  /// Residue of v after eliminating every pivot coordinate.  Echelon rows
  /// lead with their pivot, so one left-to-right pass suffices.
  SparseVec<F> reduce(const F& fld, SparseVec<F> v) const {
    SparseVec<F> residue;
    std::size_t i = 0;
    while (i < v.size()) {
      const int c = v[i].first;
      const int r = c < cols ? pivot_of_col[c] : -1;
      if (r < 0) {
        residue.push_back(v[i++]);
        continue;
      }
      SparseVec<F> tail(v.begin() + i, v.end());
      tail = sparse_axpy<F>(fld, tail, fld.neg(v[i].second), rows[r]);
      v.resize(i);
      v.insert(v.end(), tail.begin(), tail.end());
    }
    return residue;
  }

  bool contains(const F& fld, const SparseVec<F>& v) const {
    return reduce(fld, v).empty();
  }
};

/// Echelonize a list of sparse rows over `fld`.
template <class F>
Echelon<F> echelonize(const F& fld, std::vector<SparseVec<F>> work, int cols,
                      bool reduced) {
  Echelon<F> e;
  e.cols = cols;
  e.pivot_of_col.assign(cols, -1);
  // candidates[j]: rows that may hold a nonzero in column j (lazily stale)
  std::vector<std::vector<int>> candidates(cols);
  for (int r = 0; r < static_cast<int>(work.size()); ++r)
    for (const auto& [c, x] : work[r]) candidates[c].push_back(r);
  std::vector<char> done(work.size(), 0);

  for (int j = 0; j < cols; ++j) {
    int pivot = -1;
    std::size_t best = 0;
    for (int r : candidates[j]) {
      if (done[r]) continue;
      const auto* x = sparse_at<F>(work[r], j);
      if (!x) continue;  // stale candidate
      if (pivot == -1 || work[r].size() < best) {
        pivot = r;
        best = work[r].size();
      }
    }
    if (pivot == -1) continue;
    // normalize and eliminate below/elsewhere
    {
      const auto* pv = sparse_at<F>(work[pivot], j);
      if (!fld.eq(*pv, fld.one()))
        work[pivot] = sparse_scale<F>(fld, work[pivot], fld.div(fld.one(), *pv));
    }
    for (int r : candidates[j]) {
      if (r == pivot || done[r]) continue;
      const auto* x = sparse_at<F>(work[r], j);
      if (!x) continue;
      auto coef = fld.neg(*x);
      work[r] = sparse_axpy<F>(fld, work[r], coef, work[pivot]);
      for (const auto& [c, val] : work[r])
        if (c > j && (candidates[c].empty() || candidates[c].back() != r))
          candidates[c].push_back(r);
    }
    done[pivot] = 1;
    e.pivot_of_col[j] = static_cast<int>(e.rows.size());
    e.pivot_col.push_back(j);
    e.rows.push_back(std::move(work[pivot]));
  }
  if (reduced) {
    // clear entries above pivots, last pivot first
    for (int i = static_cast<int>(e.rows.size()) - 1; i >= 0; --i) {
      const int pc = e.pivot_col[i];
      for (int k = 0; k < i; ++k) {
        const auto* x = sparse_at<F>(e.rows[k], pc);
        if (x) e.rows[k] = sparse_axpy<F>(fld, e.rows[k], fld.neg(*x), e.rows[i]);
      }
    }
  }
  return e;
}

template <class F>
std::vector<SparseVec<F>> rows_of(const F& fld, const IntMatrix& m) {
  std::vector<std::vector<std::pair<int, long long>>> acc(m.rows);
  for (const auto& t : m.entries) acc[t.r].push_back({t.c, t.val});
  std::vector<SparseVec<F>> rows(m.rows);
  for (int r = 0; r < m.rows; ++r) {
    std::sort(acc[r].begin(), acc[r].end());
    SparseVec<F> row;
    row.reserve(acc[r].size());
    for (std::size_t i = 0; i < acc[r].size(); ++i) {
      long long v = acc[r][i].second;
      std::size_t j = i;
      while (j + 1 < acc[r].size() && acc[r][j + 1].first == acc[r][i].first)
        v += acc[r][++j].second;
      i = j;
      auto x = fld.from_int(v);
      if (!fld.is_zero(x)) row.push_back({acc[r][i].first, x});
    }
    rows[r] = std::move(row);
  }
  return rows;
}

template <class F>
std::vector<SparseVec<F>> rows_of_transpose(const F& fld, const IntMatrix& m) {
  IntMatrix t;
  t.rows = m.cols;
  t.cols = m.rows;
  t.entries.reserve(m.entries.size());
  for (const auto& e : m.entries) t.entries.push_back({e.c, e.r, e.val});
  return rows_of<F>(fld, t);
}

template <class F>
int rank_of(const F& fld, const IntMatrix& m, bool transpose = false) {
  auto rows = transpose ? rows_of_transpose<F>(fld, m) : rows_of<F>(fld, m);
  const int cols = transpose ? m.rows : m.cols;
  return echelonize<F>(fld, std::move(rows), cols, /*reduced=*/false).rank();
}

/// Canonical kernel basis of m (columns = variables): one vector per free
/// column, unit there, reduced entries at pivot columns.
template <class F>
std::vector<SparseVec<F>> kernel_basis(const F& fld, const IntMatrix& m) {
  auto ech = echelonize<F>(fld, rows_of<F>(fld, m), m.cols, /*reduced=*/true);
  std::vector<SparseVec<F>> out;
  for (int j = 0; j < m.cols; ++j) {
    if (ech.pivot_of_col[j] >= 0) continue;
    SparseVec<F> v;
    for (int i = 0; i < ech.rank(); ++i) {
      const auto* x = sparse_at<F>(ech.rows[i], j);
      if (x) v.push_back({ech.pivot_col[i], fld.neg(*x)});
    }
    v.push_back({j, fld.one()});
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(v));
  }
  return out;
}

/// Canonical basis (RREF rows) of the column space of m, i.e. the image of
/// the linear map m represents.
template <class F>
Echelon<F> image_basis(const F& fld, const IntMatrix& m) {
  return echelonize<F>(fld, rows_of_transpose<F>(fld, m), m.rows,
                       /*reduced=*/true);
}

}  // namespace dihom
