#pragma once

#include <vector>

#include "defmorph/deformation.hpp"

namespace defmorph {

/// Post-composition with the morphism: alpha at arity k becomes an AB
/// cochain gamma . alpha of the same arity.
template <typename R>
Cochain<R> gamma_lower(const Cochain<R>& alpha, const AlgebraMorphism& m) {
  if (alpha.flavor != Flavor::AA)
    throw std::invalid_argument("gamma_lower: need AA cochain");
  Cochain<R> out = Cochain<R>::zero(Flavor::AB, alpha.gdeg + 1, m.source,
                                    m.target);
  for (const auto& [n, tensor] : alpha.comps) {
    for_each_tuple(out.sdim(), n, [&](const std::vector<std::size_t>& t) {
      auto v = alpha.value(n, t);
      for (std::size_t j = 0; j < m.source.dim(); ++j) {
        if (v[j].is_zero()) continue;
        Vec gj = m.apply_basis(j);
        for (std::size_t i = 0; i < m.target.dim(); ++i)
          if (!gj[i].is_zero()) out.entry(n, t, i) += v[j] * R(gj[i]);
      }
    });
  }
  out.drop_zero_components();
  return out;
}

/// Pre-composition with the morphism in every slot:
/// (gamma^* beta)(a_1..a_k) = beta(gamma a_1, ..., gamma a_k).
template <typename R>
Cochain<R> gamma_upper(const Cochain<R>& beta, const AlgebraMorphism& m) {
  if (beta.flavor != Flavor::BB)
    throw std::invalid_argument("gamma_upper: need BB cochain");
  Cochain<R> out = Cochain<R>::zero(Flavor::AB, beta.gdeg + 1, m.source,
                                    m.target);
  for (const auto& [n, tensor] : beta.comps) {
    for_each_tuple(m.source.dim(), n, [&](const std::vector<std::size_t>& t) {
      std::vector<std::vector<R>> args(n);
      for (unsigned k = 0; k < n; ++k) {
        Vec g = m.apply_basis(t[k]);
        args[k].resize(m.target.dim());
        for (std::size_t i = 0; i < m.target.dim(); ++i) args[k][i] = R(g[i]);
      }
      auto v = detail::eval_on_vectors(beta, args);
      for (std::size_t i = 0; i < m.target.dim(); ++i)
        if (!v[i].is_zero()) out.entry(n, t, i) += v[i];
    });
  }
  out.drop_zero_components();
  return out;
}

/// Differential of the cone of gamma-restriction between the Hochschild
/// complexes, for algebras concentrated in degree 0. A cone cochain of
/// degree n is (alpha, beta, gamma') with alpha, beta of arity n + 1 and
/// gamma' of arity n, identified with the degree-n slice of g:
///   d(alpha, beta, gamma') =
///     ((-1)^(n+1) HD(alpha), (-1)^(n+1) HD(beta),
///      gamma^*(beta) - gamma_*(alpha) + (-1)^(n+1) HD(gamma')).
/// Cross-checked elsewhere against the twisted unary operation of the
/// structure element, which it reproduces exactly.
inline GElement<Rat> cone_d(const GElement<Rat>& x, const AlgebraMorphism& m,
                            unsigned arity_cap) {
  const int n = x.gdeg;
  GElement<Rat> out = GElement<Rat>::zero(n + 1, m);
  int s = ((n + 1) % 2 == 0) ? 1 : -1;
  out.a = hochschild_differential(x.a, m, arity_cap);
  out.b = hochschild_differential(x.b, m, arity_cap);
  out.p = hochschild_differential(x.p, m, arity_cap);
  if (s < 0) {
    out.a.scale(Rat(-1));
    out.b.scale(Rat(-1));
    out.p.scale(Rat(-1));
  }
  Cochain<Rat> conn = gamma_upper(x.b, m);
  conn -= gamma_lower(x.a, m);
  out.p += conn;
  out.drop_zero_components();
  return out;
}

/// Comparison differential on the same triples, standard in the morphism
/// deformation literature:
///   d(alpha, beta, gamma') =
///     (HD(alpha), HD(beta), gamma_*(alpha) - gamma^*(beta) - HD(gamma')).
inline GElement<Rat> gs_d(const GElement<Rat>& x, const AlgebraMorphism& m,
                          unsigned arity_cap) {
  const int n = x.gdeg;
  GElement<Rat> out = GElement<Rat>::zero(n + 1, m);
  out.a = hochschild_differential(x.a, m, arity_cap);
  out.b = hochschild_differential(x.b, m, arity_cap);
  Cochain<Rat> g = hochschild_differential(x.p, m, arity_cap);
  g.scale(Rat(-1));
  g += gamma_lower(x.a, m);
  g -= gamma_upper(x.b, m);
  out.p = g;
  out.drop_zero_components();
  return out;
}

/// A cochain complex on the degree slices of g, assembled from any
/// slice-to-slice differential. Construction verifies d . d = 0.
struct SliceComplex {
  std::vector<SliceBasis> slices;  // index = degree, starting at min_deg
  std::vector<Matrix> d;           // d[i]: slices[i] -> slices[i+1]
  int min_deg = 0;

  /// Dimensions of ker/im at the inner degrees (min_deg+1 ..
  /// min_deg+slices-2).
  std::vector<std::size_t> cohomology_table() const {
    std::vector<std::size_t> dims;
    for (std::size_t i = 1; i + 1 <= d.size(); ++i)
      dims.push_back(quotient_dim(d[i], d[i - 1]));
    return dims;
  }
};

template <typename DFn>
SliceComplex build_slice_complex(const AlgebraMorphism& m, unsigned arity_cap,
                                 int min_deg, int max_deg, DFn&& dfn) {
  SliceComplex c;
  c.min_deg = min_deg;
  for (int n = min_deg; n <= max_deg; ++n)
    c.slices.push_back(build_slice(m, n, arity_cap));
  for (std::size_t i = 0; i + 1 < c.slices.size(); ++i) {
    const SliceBasis& dom = c.slices[i];
    const SliceBasis& cod = c.slices[i + 1];
    Matrix mat(cod.dim(), dom.dim());
    for (std::size_t j = 0; j < dom.dim(); ++j) {
      std::vector<Rat> e(dom.dim());
      e[j] = Rat(1);
      GElement<Rat> y = slice_element(dom, e, m);
      GElement<Rat> dy = dfn(y);
      auto coords = slice_coords(cod, dy, m);
      for (std::size_t r = 0; r < cod.dim(); ++r) mat.at(r, j) = coords[r];
    }
    c.d.push_back(std::move(mat));
  }
  for (std::size_t i = 0; i + 1 < c.d.size(); ++i)
    if (!(c.d[i + 1] * c.d[i]).is_zero())
      throw std::logic_error("build_slice_complex: d . d != 0");
  return c;
}

inline SliceComplex build_cone(const AlgebraMorphism& m, unsigned arity_cap,
                               int min_deg = 0, int max_deg = 3) {
  return build_slice_complex(
      m, arity_cap, min_deg, max_deg,
      [&](const GElement<Rat>& y) { return cone_d(y, m, arity_cap); });
}

inline SliceComplex build_gs(const AlgebraMorphism& m, unsigned arity_cap,
                             int min_deg = 0, int max_deg = 3) {
  return build_slice_complex(
      m, arity_cap, min_deg, max_deg,
      [&](const GElement<Rat>& y) { return gs_d(y, m, arity_cap); });
}

/// The binary operation induced on cohomology: both arguments are degree-1
/// cocycles (coordinates in the degree-1 slice); the result is the
/// canonical class of their twisted binary product in degree 2.
/// Independent of the chosen representatives.
inline Vec cohomology_bracket_class(const DeformationSetup& su,
                                    const Vec& y1_coords,
                                    const Vec& y2_coords) {
  const AlgebraMorphism& m = su.morphism;
  if (!is_zero_vec(su.d12.apply(y1_coords)) ||
      !is_zero_vec(su.d12.apply(y2_coords)))
    throw std::invalid_argument("cohomology_bracket_class: not cocycles");
  GElement<Rat> y1 = slice_element(su.s1, y1_coords, m);
  GElement<Rat> y2 = slice_element(su.s1, y2_coords, m);
  GElement<Rat> br = twisted_d2(su.base, y1, y2, m, su.arity_cap);
  Vec c = slice_coords(su.s2, br, m);
  return quotient_class(su.d23, su.d12, c);
}

}  // namespace defmorph
