#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dihom/linalg.hpp"

namespace dihom {

// Directed (co)homology of per-pair chain-complex slices.  HM_{i+1}[X]_v^w
// is H_i of the slice; over a field the cohomology ranks agree degreewise
// (transpose ranks), with the i = 0 edge case Im d* = 0.  A union-find pass
// over dimension-0/1 chains gives the fast HM_1 path.

struct HomologySummary {
  int v = 0, w = 0;
  // ranks[i] = rank HM_{i+1} = rank H_i of the slice, i = 0..degrees-1
  std::vector<int> ranks;
  // optional canonical representatives per degree (sparse vectors over the
  // slice basis, serialized as exact strings)
  std::vector<std::vector<std::vector<std::pair<int, std::string>>>> reps;
};

/// Connected components of dimension-0 chains under elementary square moves
/// (each dimension-1 chain links the two dimension-0 chains of its boundary).
struct PathComponents {
  std::vector<int> comp;  // per dim-0 basis chain, component ids 0..count-1
  int count = 0;
};

PathComponents path_components(const ChainComplexSlice& slice);

namespace detail {

template <class F>
std::vector<int> boundary_ranks(const F& fld, const ChainComplexSlice& s,
                                bool transpose) {
  std::vector<int> r(s.max_dim + 2, 0);  // r[d] = rank bnd[d], d = 1..max_dim
  for (int d = 1; d <= s.max_dim; ++d)
    r[d] = rank_of<F>(fld, s.bnd[d], transpose);
  return r;
}

}  // namespace detail

/// rank H_i for i = 0..degrees-1; requires the slice to extend one dimension
/// past the last degree requested (so the incoming boundary is present).
template <class F>
std::vector<int> homology_ranks(const F& fld, const ChainComplexSlice& s,
                                int degrees) {
  if (degrees > s.max_dim)
    throw DomainError("slice too shallow for the requested degrees");
  auto r = detail::boundary_ranks<F>(fld, s, /*transpose=*/false);
  std::vector<int> out(degrees);
  for (int i = 0; i < degrees; ++i)
    out[i] = static_cast<int>(s.basis[i].size()) - r[i] - r[i + 1];
  return out;
}

/// Cohomology ranks computed from the transposed matrices; equal to the
/// homology ranks over a field, which callers may assert.
template <class F>
std::vector<int> cohomology_ranks(const F& fld, const ChainComplexSlice& s,
                                  int degrees) {
  if (degrees > s.max_dim)
    throw DomainError("slice too shallow for the requested degrees");
  auto r = detail::boundary_ranks<F>(fld, s, /*transpose=*/true);
  std::vector<int> out(degrees);
  for (int i = 0; i < degrees; ++i)
    out[i] = static_cast<int>(s.basis[i].size()) - r[i] - r[i + 1];
  return out;
}

/// Canonical cocycle representatives of HM^{d+1}: kernel of bnd[d+1]^T
/// reduced against the image of bnd[d]^T, re-echelonized so printed
/// generators are canonical.
template <class F>
std::vector<SparseVec<F>> cocycle_representatives(const F& fld,
                                                  const ChainComplexSlice& s,
                                                  int dim) {
  if (dim < 0 || dim + 1 > s.max_dim)
    throw DomainError("representative degree out of range");
  IntMatrix up_t;  // bnd[dim+1]^T : cochain condition f∘d = 0
  up_t.rows = s.bnd[dim + 1].cols;
  up_t.cols = s.bnd[dim + 1].rows;
  for (const auto& e : s.bnd[dim + 1].entries)
    up_t.entries.push_back({e.c, e.r, e.val});
  auto cocycles = kernel_basis<F>(fld, up_t);

  Echelon<F> im;
  im.cols = static_cast<int>(s.basis[dim].size());
  im.pivot_of_col.assign(im.cols, -1);
  if (dim >= 1) {
    IntMatrix dn_t;
    dn_t.rows = s.bnd[dim].cols;
    dn_t.cols = s.bnd[dim].rows;
    for (const auto& e : s.bnd[dim].entries)
      dn_t.entries.push_back({e.c, e.r, e.val});
    im = image_basis<F>(fld, dn_t);  // coboundaries
  }
  std::vector<SparseVec<F>> residues;
  for (auto& v : cocycles) {
    auto r = im.reduce(fld, v);
    if (!r.empty()) residues.push_back(std::move(r));
  }
  auto ech = echelonize<F>(fld, std::move(residues),
                           static_cast<int>(s.basis[dim].size()),
                           /*reduced=*/true);
  return ech.rows;
}

/// Canonical cycle representatives of HM_{d+1} = H_d: kernel of bnd[d]
/// reduced against the image of bnd[d+1].
template <class F>
std::vector<SparseVec<F>> cycle_representatives(const F& fld,
                                                const ChainComplexSlice& s,
                                                int dim) {
  if (dim < 0 || dim + 1 > s.max_dim)
    throw DomainError("representative degree out of range");
  std::vector<SparseVec<F>> cycles;
  if (dim == 0) {
    // every dimension-0 element is a cycle
    const int n = static_cast<int>(s.basis[0].size());
    for (int i = 0; i < n; ++i) cycles.push_back({{i, fld.one()}});
  } else {
    cycles = kernel_basis<F>(fld, s.bnd[dim]);
  }
  Echelon<F> im = image_basis<F>(fld, s.bnd[dim + 1]);
  std::vector<SparseVec<F>> residues;
  for (auto& v : cycles) {
    auto r = im.reduce(fld, v);
    if (!r.empty()) residues.push_back(std::move(r));
  }
  auto ech = echelonize<F>(fld, std::move(residues),
                           static_cast<int>(s.basis[dim].size()),
                           /*reduced=*/true);
  return ech.rows;
}

template <class F>
HomologySummary summarize(const F& fld, const ChainComplexSlice& s,
                          int degrees, bool with_reps) {
  HomologySummary out;
  out.v = s.v;
  out.w = s.w;
  out.ranks = cohomology_ranks<F>(fld, s, degrees);
  if (with_reps) {
    out.reps.resize(degrees);
    for (int d = 0; d < degrees; ++d) {
      for (const auto& rep : cocycle_representatives<F>(fld, s, d)) {
        std::vector<std::pair<int, std::string>> printable;
        printable.reserve(rep.size());
        for (const auto& [i, x] : rep)
          printable.push_back({i, fld.to_string(x)});
        out.reps[d].push_back(std::move(printable));
      }
    }
  }
  return out;
}

}  // namespace dihom
