#pragma once

#include <map>
#include <optional>

#include "dihom/homalg.hpp"

namespace dihom {

// Path-algebra bimodule structure on chains and cochains, the concatenation
// tensor and its homology product, the dual tensor on cochains with the
// induced cohomology operation, and the pointwise cup product on the
// degree-0 level (locally constant functions on path components).

template <class F>
struct FormalChain {
  int v = 0, w = 0, dim = 0;
  std::map<CubeChain, typename F::Elem, ChainLess> terms;

  bool is_zero() const { return terms.empty(); }
};

template <class F>
struct Cochain {
  int v = 0, w = 0, dim = 0;
  std::map<CubeChain, typename F::Elem, ChainLess> terms;

  bool is_zero() const { return terms.empty(); }
  typename F::Elem value_on(const F& fld, const CubeChain& c) const {
    auto it = terms.find(c);
    return it == terms.end() ? fld.zero() : it->second;
  }
};

/// Element of the path algebra R[X]: a combination of quiver paths, possibly
/// with heterogeneous endpoints.
template <class F>
struct PathAlgebraElement {
  std::map<CubeChain, typename F::Elem, ChainLess> terms;
};

template <class F>
void add_term(const F& fld,
              std::map<CubeChain, typename F::Elem, ChainLess>& acc,
              const CubeChain& key, const typename F::Elem& coeff) {
  auto [it, fresh] = acc.emplace(key, coeff);
  if (!fresh) {
    it->second = fld.add(it->second, coeff);
    if (fld.is_zero(it->second)) acc.erase(it);
  } else if (fld.is_zero(coeff)) {
    acc.erase(it);
  }
}

template <class F>
PathAlgebraElement<F> path_of(const F& fld, const CubeChain& p) {
  if (p.dimension() != 0)
    throw DomainError("path algebra elements are built from dim-0 chains");
  PathAlgebraElement<F> e;
  e.terms.emplace(p, fld.one());
  return e;
}

/// Concatenation product in R[X]: composable basis paths concatenate,
/// everything else is zero.
template <class F>
PathAlgebraElement<F> pa_mul(const F& fld, const PathAlgebraElement<F>& a,
                             const PathAlgebraElement<F>& b) {
  PathAlgebraElement<F> out;
  for (const auto& [p, cp] : a.terms)
    for (const auto& [q, cq] : b.terms) {
      if (p.w != q.v) continue;
      CubeChain r;
      r.v = p.v;
      r.w = q.w;
      r.cubes = p.cubes;
      r.cubes.insert(r.cubes.end(), q.cubes.begin(), q.cubes.end());
      add_term(fld, out.terms, r, fld.mul(cp, cq));
    }
  return out;
}

/// Opposite multiplication of R[X]^op.
template <class F>
PathAlgebraElement<F> pa_mul_op(const F& fld, const PathAlgebraElement<F>& a,
                                const PathAlgebraElement<F>& b) {
  return pa_mul(fld, b, a);
}

/// Concatenation tensor on chains: zero on mismatched endpoints, dimension
/// adds.  (R_i x R_j -> R_{i+j-1} in the shifted module indexing.)
template <class F>
FormalChain<F> tensor(const F& fld, const FormalChain<F>& a,
                      const FormalChain<F>& b) {
  FormalChain<F> out;
  out.v = a.v;
  out.w = b.w;
  out.dim = a.dim + b.dim;
  if (a.w != b.v) return out;  // stated convention: 0, not an error
  for (const auto& [c, xc] : a.terms)
    for (const auto& [d, xd] : b.terms) {
      CubeChain e;
      e.v = a.v;
      e.w = b.w;
      e.cubes = c.cubes;
      e.cubes.insert(e.cubes.end(), d.cubes.begin(), d.cubes.end());
      add_term(fld, out.terms, e, fld.mul(xc, xd));
    }
  return out;
}

template <class F>
FormalChain<F> boundary_of(const F& fld, const PrecubicalSet& X,
                           const FormalChain<F>& a) {
  FormalChain<F> out;
  out.v = a.v;
  out.w = a.w;
  out.dim = a.dim - 1;
  for (const auto& [c, x] : a.terms)
    for (const BoundaryTerm& t : boundary(X, c))
      add_term(fld, out.terms, t.chain, fld.mul(x, fld.from_int(t.coeff)));
  return out;
}

/// Left/right path action on chains: p . x . q by concatenation; terms with
/// mismatched endpoints contribute zero.  The surviving terms must agree on
/// endpoints (a bimodule element has a single (start, end) pair).
template <class F>
FormalChain<F> act(const F& fld, const PathAlgebraElement<F>& p,
                   const FormalChain<F>& x, const PathAlgebraElement<F>& q) {
  FormalChain<F> out;
  out.dim = x.dim;
  bool first = true;
  for (const auto& [pp, cp] : p.terms) {
    if (pp.w != x.v) continue;
    for (const auto& [qq, cq] : q.terms) {
      if (qq.v != x.w) continue;
      if (first) {
        out.v = pp.v;
        out.w = qq.w;
        first = false;
      } else if (out.v != pp.v || out.w != qq.w) {
        throw OperandError("path action produced mixed endpoints");
      }
      for (const auto& [c, xc] : x.terms) {
        CubeChain e;
        e.v = pp.v;
        e.w = qq.w;
        e.cubes = pp.cubes;
        e.cubes.insert(e.cubes.end(), c.cubes.begin(), c.cubes.end());
        e.cubes.insert(e.cubes.end(), qq.cubes.begin(), qq.cubes.end());
        add_term(fld, out.terms, e, fld.mul(fld.mul(cp, cq), xc));
      }
    }
  }
  if (first) {
    out.v = x.v;
    out.w = x.w;
  }
  return out;
}

/// Contravariant action on cochains: (p . f . q)(y) = f(p . y . q), so a
/// cochain on (a, b) moves to (end of p, start of q).
template <class F>
Cochain<F> act(const F& fld, const PathAlgebraElement<F>& p,
               const Cochain<F>& f, const PathAlgebraElement<F>& q) {
  Cochain<F> out;
  out.dim = f.dim;
  bool first = true;
  for (const auto& [pp, cp] : p.terms) {
    if (pp.v != f.v) continue;  // p must start where f's pair starts
    for (const auto& [qq, cq] : q.terms) {
      if (qq.w != f.w) continue;
      if (first) {
        out.v = pp.w;
        out.w = qq.v;
        first = false;
      } else if (out.v != pp.w || out.w != qq.v) {
        throw OperandError("path action produced mixed endpoints");
      }
      const std::size_t np = pp.cubes.size(), nq = qq.cubes.size();
      for (const auto& [x, fx] : f.terms) {
        if (x.cubes.size() < np + nq) continue;
        if (!std::equal(pp.cubes.begin(), pp.cubes.end(), x.cubes.begin()))
          continue;
        if (!std::equal(qq.cubes.begin(), qq.cubes.end(),
                        x.cubes.end() - nq))
          continue;
        CubeChain y;
        y.v = pp.w;
        y.w = qq.v;
        y.cubes.assign(x.cubes.begin() + np, x.cubes.end() - nq);
        add_term(fld, out.terms, y, fld.mul(fld.mul(cp, cq), fx));
      }
    }
  }
  if (first) {
    out.v = f.v;
    out.w = f.w;
  }
  return out;
}

// --- slice-coordinate conversions ------------------------------------------

template <class F>
SparseVec<F> to_coords(const F&, const ChainComplexSlice& s, int dim,
                       const std::map<CubeChain, typename F::Elem,
                                      ChainLess>& terms) {
  SparseVec<F> out;
  for (const auto& [c, x] : terms) {
    int i = s.find(c);
    if (i < 0 || c.dimension() != dim)
      throw IntegrityError("chain outside the slice basis");
    out.push_back({i, x});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

template <class F>
std::map<CubeChain, typename F::Elem, ChainLess> from_coords(
    const F&, const ChainComplexSlice& s, int dim, const SparseVec<F>& v) {
  std::map<CubeChain, typename F::Elem, ChainLess> out;
  for (const auto& [i, x] : v) out.emplace(s.basis[dim][i], x);
  return out;
}

/// d* f = f∘d, materialized over the slice basis one dimension up.
template <class F>
Cochain<F> coboundary(const F& fld, const ChainComplexSlice& s,
                      const Cochain<F>& f) {
  if (f.dim + 1 > s.max_dim)
    throw DomainError("slice too shallow for the coboundary");
  Cochain<F> out;
  out.v = f.v;
  out.w = f.w;
  out.dim = f.dim + 1;
  auto fv = to_coords<F>(fld, s, f.dim, f.terms);
  std::vector<typename F::Elem> dense(s.basis[f.dim].size(), fld.zero());
  for (const auto& [i, x] : fv) dense[i] = x;
  const IntMatrix& m = s.bnd[f.dim + 1];
  std::vector<typename F::Elem> g(m.cols, fld.zero());
  for (const auto& e : m.entries)
    g[e.c] = fld.add(g[e.c],
                     fld.mul(dense[e.r], fld.from_int(e.val)));
  for (int c = 0; c < m.cols; ++c)
    if (!fld.is_zero(g[c])) out.terms.emplace(s.basis[f.dim + 1][c], g[c]);
  return out;
}

template <class F>
bool is_cocycle(const F& fld, const ChainComplexSlice& s,
                const Cochain<F>& f) {
  return coboundary<F>(fld, s, f).is_zero();
}

template <class F>
bool is_cycle(const F& fld, const PrecubicalSet& X, const FormalChain<F>& x) {
  return boundary_of<F>(fld, X, x).is_zero();
}

/// Pairing <f, c> of a cochain with a chain of the same pair and dimension.
template <class F>
typename F::Elem pairing(const F& fld, const Cochain<F>& f,
                         const FormalChain<F>& c) {
  auto acc = fld.zero();
  for (const auto& [k, x] : c.terms)
    acc = fld.add(acc, fld.mul(f.value_on(fld, k), x));
  return acc;
}

/// The dual tensor f ⊠ g on a composite slice: on a basis chain with a
/// unique factorization through beta it evaluates f(prefix) * g(suffix),
/// elsewhere zero.  Chains visiting beta more than once are rejected (only
/// possible off grid-like models).
template <class F>
Cochain<F> box_tensor(const F& fld, const PrecubicalSet& X,
                      const ChainComplexSlice& big, const Cochain<F>& f,
                      const Cochain<F>& g) {
  if (f.w != g.v) throw OperandError("dual tensor needs a shared midpoint");
  if (f.v != big.v || g.w != big.w)
    throw OperandError("dual tensor endpoints do not match the slice");
  const int beta = f.w;
  Cochain<F> out;
  out.v = f.v;
  out.w = g.w;
  out.dim = f.dim + g.dim;
  if (out.dim > big.max_dim)
    throw DomainError("slice too shallow for the dual tensor");
  for (const CubeChain& z : big.basis[out.dim]) {
    // corner sequence v = corner_0, upper(c_1), ..., upper(c_l) = w; a split
    // after k cubes is admissible when the corner there equals beta.
    int split = -1, splits = 0;
    const int l = static_cast<int>(z.cubes.size());
    for (int k = 0; k <= l; ++k) {
      const int corner = k == 0 ? z.v : X.upper_corner(z.cubes[k - 1]);
      if (corner == beta) {
        split = k;
        ++splits;
      }
    }
    if (splits == 0) continue;
    if (splits > 1)
      throw DomainError(
          "chain factors through the midpoint more than once; the dual "
          "tensor is only defined on grid-like models");
    CubeChain pre, suf;
    pre.v = z.v;
    pre.w = beta;
    pre.cubes.assign(z.cubes.begin(), z.cubes.begin() + split);
    suf.v = beta;
    suf.w = z.w;
    suf.cubes.assign(z.cubes.begin() + split, z.cubes.end());
    auto val = fld.mul(f.value_on(fld, pre), g.value_on(fld, suf));
    if (!fld.is_zero(val)) out.terms.emplace(z, val);
  }
  return out;
}

// --- (co)homology classes and products --------------------------------------

/// A homology or cohomology class: the endpoint pair, the chain dimension of
/// its representatives, and a canonical representative in slice coordinates
/// (reduced against boundaries resp. coboundaries).
template <class F>
struct BimoduleClass {
  enum class Kind { homology, cohomology };
  Kind kind = Kind::homology;
  int v = 0, w = 0, dim = 0;
  SparseVec<F> rep;  // canonical; empty means the zero class

  bool is_zero() const { return rep.empty(); }
};

/// Echelon of the boundary image (for homology classes) or the coboundary
/// image (for cohomology classes) inside chain dimension `dim` of the slice.
template <class F>
Echelon<F> boundary_image(const F& fld, const ChainComplexSlice& s, int dim) {
  if (dim + 1 > s.max_dim)
    throw DomainError("slice too shallow to reduce modulo boundaries");
  return image_basis<F>(fld, s.bnd[dim + 1]);
}

template <class F>
Echelon<F> coboundary_image(const F& fld, const ChainComplexSlice& s,
                            int dim) {
  Echelon<F> im;
  im.cols = static_cast<int>(s.basis[dim].size());
  im.pivot_of_col.assign(im.cols, -1);
  if (dim == 0) return im;  // Im d* vanishes in the lowest degree
  IntMatrix t;
  t.rows = s.bnd[dim].cols;
  t.cols = s.bnd[dim].rows;
  for (const auto& e : s.bnd[dim].entries) t.entries.push_back({e.c, e.r, e.val});
  return image_basis<F>(fld, t);
}

template <class F>
BimoduleClass<F> homology_class(const F& fld, const PrecubicalSet& X,
                                const ChainComplexSlice& s,
                                const FormalChain<F>& x) {
  if (!is_cycle<F>(fld, X, x))
    throw OperandError("representative is not a cycle");
  BimoduleClass<F> cls;
  cls.kind = BimoduleClass<F>::Kind::homology;
  cls.v = x.v;
  cls.w = x.w;
  cls.dim = x.dim;
  auto im = boundary_image<F>(fld, s, x.dim);
  cls.rep = im.reduce(fld, to_coords<F>(fld, s, x.dim, x.terms));
  return cls;
}

template <class F>
BimoduleClass<F> cohomology_class(const F& fld, const ChainComplexSlice& s,
                                  const Cochain<F>& f) {
  if (!is_cocycle<F>(fld, s, f))
    throw OperandError("representative is not a cocycle");
  BimoduleClass<F> cls;
  cls.kind = BimoduleClass<F>::Kind::cohomology;
  cls.v = f.v;
  cls.w = f.w;
  cls.dim = f.dim;
  auto im = coboundary_image<F>(fld, s, f.dim);
  cls.rep = im.reduce(fld, to_coords<F>(fld, s, f.dim, f.terms));
  return cls;
}

template <class F>
bool class_equal(const BimoduleClass<F>& a, const BimoduleClass<F>& b,
                 const F& fld) {
  if (a.kind != b.kind || a.v != b.v || a.w != b.w || a.dim != b.dim)
    return false;
  if (a.rep.size() != b.rep.size()) return false;
  for (std::size_t i = 0; i < a.rep.size(); ++i)
    if (a.rep[i].first != b.rep[i].first ||
        !fld.eq(a.rep[i].second, b.rep[i].second))
      return false;
  return true;
}

/// Conc-product [a] ⊛ [b] = [a ⊗ b]; requires the equal-length hypothesis on
/// the ambient complex (checked by callers once per model).  Endpoint
/// mismatch gives the zero class.
template <class F>
BimoduleClass<F> conc_product(const F& fld, const PrecubicalSet& X,
                              const ChainComplexSlice& slice_ab,
                              const ChainComplexSlice& slice_bc,
                              const ChainComplexSlice& slice_ac,
                              const BimoduleClass<F>& a,
                              const BimoduleClass<F>& b) {
  if (a.kind != BimoduleClass<F>::Kind::homology ||
      b.kind != BimoduleClass<F>::Kind::homology)
    throw OperandError("conc-product takes homology classes");
  BimoduleClass<F> out;
  out.kind = BimoduleClass<F>::Kind::homology;
  out.v = a.v;
  out.w = b.w;
  out.dim = a.dim + b.dim;
  if (a.w != b.v) return out;  // zero class
  FormalChain<F> ca{a.v, a.w, a.dim,
                    from_coords<F>(fld, slice_ab, a.dim, a.rep)};
  FormalChain<F> cb{b.v, b.w, b.dim,
                    from_coords<F>(fld, slice_bc, b.dim, b.rep)};
  return homology_class<F>(fld, X, slice_ac, tensor<F>(fld, ca, cb));
}

/// The concatenation operation on cohomology.  In the lowest degree both
/// factors are locally constant functions on path components and the induced
/// operation is the pushforward along concatenation of components, which is
/// the only degree the combinatorial examples use.  In higher degrees the
/// raw dual tensor of two cocycles need not be a cocycle (extension by zero
/// is not a cochain map); when it is one, its class is returned, otherwise
/// an OperandError is raised.
template <class F>
BimoduleClass<F> cap(const F& fld, const PrecubicalSet& X,
                     const ChainComplexSlice& slice_ab,
                     const ChainComplexSlice& slice_bc,
                     const ChainComplexSlice& slice_ac,
                     const BimoduleClass<F>& a, const BimoduleClass<F>& b) {
  if (a.kind != BimoduleClass<F>::Kind::cohomology ||
      b.kind != BimoduleClass<F>::Kind::cohomology)
    throw OperandError("cap takes cohomology classes");
  if (a.w != b.v) {
    BimoduleClass<F> zero;
    zero.kind = BimoduleClass<F>::Kind::cohomology;
    zero.v = a.v;
    zero.w = b.w;
    zero.dim = a.dim + b.dim;
    return zero;
  }
  if (a.dim == 0 && b.dim == 0) {
    PathComponents pa = path_components(slice_ab);
    PathComponents pb = path_components(slice_bc);
    PathComponents pc = path_components(slice_ac);
    // constant value of each factor on each component
    auto component_values = [&](const ChainComplexSlice& s,
                                const PathComponents& p,
                                const SparseVec<F>& rep) {
      std::vector<typename F::Elem> vals(p.count, fld.zero());
      std::vector<char> seen(p.count, 0);
      std::vector<typename F::Elem> dense(s.basis[0].size(), fld.zero());
      for (const auto& [i, x] : rep) dense[i] = x;
      for (int i = 0; i < static_cast<int>(s.basis[0].size()); ++i) {
        if (!seen[p.comp[i]]) {
          vals[p.comp[i]] = dense[i];
          seen[p.comp[i]] = 1;
        } else if (!fld.eq(vals[p.comp[i]], dense[i])) {
          throw IntegrityError("cocycle is not locally constant");
        }
      }
      return vals;
    };
    auto va = component_values(slice_ab, pa, a.rep);
    auto vb = component_values(slice_bc, pb, b.rep);
    // first dim-0 chain of each component, in basis order
    auto first_of = [&](const ChainComplexSlice& s, const PathComponents& p) {
      std::vector<int> first(p.count, -1);
      for (int i = 0; i < static_cast<int>(s.basis[0].size()); ++i)
        if (first[p.comp[i]] < 0) first[p.comp[i]] = i;
      return first;
    };
    auto fa = first_of(slice_ab, pa);
    auto fb = first_of(slice_bc, pb);
    std::vector<typename F::Elem> coeff(pc.count, fld.zero());
    for (int ka = 0; ka < pa.count; ++ka) {
      if (fld.is_zero(va[ka])) continue;
      for (int kb = 0; kb < pb.count; ++kb) {
        if (fld.is_zero(vb[kb])) continue;
        CubeChain cat;
        cat.v = slice_ab.v;
        cat.w = slice_bc.w;
        cat.cubes = slice_ab.basis[0][fa[ka]].cubes;
        const auto& tail = slice_bc.basis[0][fb[kb]].cubes;
        cat.cubes.insert(cat.cubes.end(), tail.begin(), tail.end());
        int idx = slice_ac.find(cat);
        if (idx < 0)
          throw IntegrityError("concatenated path missing from the slice");
        const int k = pc.comp[idx];
        coeff[k] = fld.add(coeff[k], fld.mul(va[ka], vb[kb]));
      }
    }
    Cochain<F> h;
    h.v = slice_ac.v;
    h.w = slice_ac.w;
    h.dim = 0;
    for (int i = 0; i < static_cast<int>(slice_ac.basis[0].size()); ++i)
      if (!fld.is_zero(coeff[pc.comp[i]]))
        h.terms.emplace(slice_ac.basis[0][i], coeff[pc.comp[i]]);
    return cohomology_class<F>(fld, slice_ac, h);
  }
  Cochain<F> fa{a.v, a.w, a.dim, from_coords<F>(fld, slice_ab, a.dim, a.rep)};
  Cochain<F> fb{b.v, b.w, b.dim, from_coords<F>(fld, slice_bc, b.dim, b.rep)};
  Cochain<F> prod = box_tensor<F>(fld, X, slice_ac, fa, fb);
  if (!is_cocycle<F>(fld, slice_ac, prod))
    throw OperandError(
        "dual tensor of these representatives is not a cocycle; the induced "
        "operation is undefined for the operands");
  return cohomology_class<F>(fld, slice_ac, prod);
}

/// Local cup product on the degree-0 level of the trace space: pointwise
/// multiplication of locally constant functions on path components.
template <class F>
BimoduleClass<F> cup0(const F& fld, const ChainComplexSlice& s,
                      const BimoduleClass<F>& a, const BimoduleClass<F>& b) {
  if (a.kind != BimoduleClass<F>::Kind::cohomology ||
      b.kind != BimoduleClass<F>::Kind::cohomology)
    throw OperandError("cup takes cohomology classes");
  if (a.v != b.v || a.w != b.w)
    throw DomainError("cup factors must share the endpoint pair");
  if (a.dim != 0 || b.dim != 0)
    throw DomainError(
        "the cup product is implemented on the degree-0 trace level only");
  Cochain<F> h;
  h.v = a.v;
  h.w = a.w;
  h.dim = 0;
  // pointwise product over the path basis
  std::size_t i = 0, j = 0;
  while (i < a.rep.size() && j < b.rep.size()) {
    if (a.rep[i].first < b.rep[j].first) {
      ++i;
    } else if (b.rep[j].first < a.rep[i].first) {
      ++j;
    } else {
      auto x = fld.mul(a.rep[i].second, b.rep[j].second);
      if (!fld.is_zero(x)) h.terms.emplace(s.basis[0][a.rep[i].first], x);
      ++i;
      ++j;
    }
  }
  return cohomology_class<F>(fld, s, h);
}

}  // namespace dihom
