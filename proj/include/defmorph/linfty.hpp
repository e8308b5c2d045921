#pragma once

#include <stdexcept>
#include <vector>

#include "defmorph/cochain.hpp"

namespace defmorph {

/// Element of the deformation algebra
///   g = Hom(T(sA), sA) (+) Hom(T(sB), sB) (+) s^-1 Hom(T(sA), sB),
/// homogeneous of one g-degree, split into its three flavor parts.
template <typename R>
struct GElement {
  int gdeg = 0;
  Cochain<R> a, b, p;

  static GElement zero(int gdeg, const AlgebraMorphism& m) {
    GElement g;
    g.gdeg = gdeg;
    g.a = Cochain<R>::zero(Flavor::AA, gdeg, m.source, m.source);
    g.b = Cochain<R>::zero(Flavor::BB, gdeg, m.target, m.target);
    g.p = Cochain<R>::zero(Flavor::AB, gdeg, m.source, m.target);
    return g;
  }

  bool is_zero() const { return a.is_zero() && b.is_zero() && p.is_zero(); }

  void drop_zero_components() {
    a.drop_zero_components();
    b.drop_zero_components();
    p.drop_zero_components();
  }

  GElement& operator+=(const GElement& o) {
    if (gdeg != o.gdeg && !o.is_zero() && !is_zero())
      throw std::invalid_argument("GElement: mixed g-degrees");
    a += o.a;
    b += o.b;
    p += o.p;
    return *this;
  }
  GElement& operator-=(const GElement& o) {
    if (gdeg != o.gdeg && !o.is_zero() && !is_zero())
      throw std::invalid_argument("GElement: mixed g-degrees");
    a -= o.a;
    b -= o.b;
    p -= o.p;
    return *this;
  }
  GElement& scale(const R& s) {
    a.scale(s);
    b.scale(s);
    p.scale(s);
    return *this;
  }
  friend GElement operator+(GElement x, const GElement& y) { return x += y; }
  friend GElement operator-(GElement x, const GElement& y) { return x -= y; }

  ValidationReport check_homogeneous() const {
    ValidationReport rep = a.check_homogeneous();
    for (auto& v : b.check_homogeneous().violations) rep.fail(v);
    for (auto& v : p.check_homogeneous().violations) rep.fail(v);
    return rep;
  }
};

/// The structure element of g-degree 1 carrying both algebra structures
/// (differential at arity 1, product at arity 2) and the morphism. This is
/// a Maurer-Cartan element precisely when the algebra and morphism axioms
/// hold, and all deformation theory happens relative to it.
template <typename R>
GElement<R> structure_element(const AlgebraMorphism& m) {
  GElement<R> g = GElement<R>::zero(1, m);
  g.a = structure_cochain<R>(m.source, Flavor::AA);
  g.b = structure_cochain<R>(m.target, Flavor::BB);
  g.p = morphism_cochain<R>(m);
  return g;
}

namespace detail {

template <typename R>
int unsusp_sign(const Cochain<R>& f, const std::vector<std::size_t>& w) {
  std::vector<int> degs(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) degs[k] = f.src_deg[w[k]];
  return suspension_sign(degs);
}

}  // namespace detail

/// Corestricted composite f1 . (f2-hat), f2 an AA/BB cochain acting as a
/// coderivation on the source tensor coalgebra of f1. Output components are
/// complete up to the arity cap.
template <typename R>
Cochain<R> compose_after_coderivation(const Cochain<R>& f1,
                                      const Cochain<R>& f2,
                                      unsigned arity_cap) {
  Cochain<R> out = f1;
  out.comps.clear();
  out.gdeg = f1.gdeg + f2.gdeg;
  for (unsigned n = 1; n <= arity_cap; ++n) {
    for_each_tuple(out.sdim(), n, [&](const std::vector<std::size_t>& w) {
      std::vector<R> acc(out.tdim());
      for (const auto& [w1, c1] : coderivation_apply(f2, w)) {
        auto v = f1.susp_value(static_cast<unsigned>(w1.size()), w1);
        for (std::size_t j = 0; j < out.tdim(); ++j)
          if (!v[j].is_zero()) acc[j] += c1 * v[j];
      }
      int s = detail::unsusp_sign(out, w);
      for (std::size_t j = 0; j < out.tdim(); ++j)
        if (!acc[j].is_zero()) out.entry(n, w, j) += s == 1 ? acc[j] : -acc[j];
    });
  }
  out.drop_zero_components();
  return out;
}

/// beta . (g_1 (x) ... (x) g_m): each AB factor consumes one contiguous
/// nonempty block of the input word (Koszul signs from moving factors past
/// earlier blocks), then beta's arity-m component is applied.
template <typename R>
Cochain<R> compose_rho(const Cochain<R>& beta,
                       const std::vector<Cochain<R>>& gammas,
                       unsigned arity_cap) {
  const unsigned m = static_cast<unsigned>(gammas.size());
  if (m == 0) throw std::invalid_argument("compose_rho: empty gamma list");
  int gsum = 0;
  for (const auto& g : gammas) gsum += g.gdeg;
  Cochain<R> out = gammas[0];
  out.comps.clear();
  out.gdeg = beta.gdeg + gsum + 1 - static_cast<int>(m);
  if (!beta.has_arity(m)) return out;
  for (unsigned n = m; n <= arity_cap; ++n) {
    for_each_tuple(out.sdim(), n, [&](const std::vector<std::size_t>& w) {
      std::vector<R> acc(out.tdim());
      // compositions n = k_1 + ... + k_m
      std::vector<unsigned> parts(m);
      auto emit = [&]() {
        long e = 0;
        std::size_t pos = 0;
        std::vector<std::size_t> starts(m);
        for (unsigned u = 0; u < m; ++u) {
          starts[u] = pos;
          e += gammas[u].operator_degree() *
               detail::susp_word_degree_sum(out, w, 0, pos);
          pos += parts[u];
        }
        int sign = (e % 2 == 0) ? 1 : -1;
        std::vector<std::vector<R>> vals(m);
        for (unsigned u = 0; u < m; ++u) {
          std::vector<std::size_t> block(w.begin() + starts[u],
                                         w.begin() + starts[u] + parts[u]);
          vals[u] = gammas[u].susp_value(parts[u], block);
        }
        std::vector<std::size_t> t(m, 0);
        auto rec = [&](auto&& self, unsigned slot, const R& coeff) -> void {
          if (slot == m) {
            auto v = beta.susp_value(m, t);
            for (std::size_t j = 0; j < out.tdim(); ++j)
              if (!v[j].is_zero())
                acc[j] += sign == 1 ? coeff * v[j] : -(coeff * v[j]);
            return;
          }
          for (std::size_t c = 0; c < vals[slot].size(); ++c) {
            if (vals[slot][c].is_zero()) continue;
            t[slot] = c;
            self(self, slot + 1, coeff * vals[slot][c]);
          }
        };
        rec(rec, 0, R(1));
      };
      auto comp = [&](auto&& self, unsigned slot, unsigned left) -> void {
        if (slot + 1 == m) {
          if (left >= 1) {
            parts[slot] = left;
            emit();
          }
          return;
        }
        for (unsigned k = 1; left >= k + (m - slot - 1); ++k) {
          parts[slot] = k;
          self(self, slot + 1, left - k);
        }
      };
      comp(comp, 0, n);
      int s = detail::unsusp_sign(out, w);
      for (std::size_t j = 0; j < out.tdim(); ++j)
        if (!acc[j].is_zero()) out.entry(n, w, j) += s == 1 ? acc[j] : -acc[j];
    });
  }
  out.drop_zero_components();
  return out;
}

/// A word in the tensor coalgebra over the suspension of g: an ordered list
/// of pure-flavor homogeneous cochains. The suspended degree of a factor is
/// its g-degree minus one (for all three flavors).
template <typename R>
using GWord = std::vector<Cochain<R>>;

template <typename R>
int word_gdeg_sum(const GWord<R>& w, std::size_t begin, std::size_t end) {
  int s = 0;
  for (std::size_t k = begin; k < end; ++k)
    s += w[k].gdeg - 1;  // suspended degree of a factor
  return s;
}

/// The corestriction d = chi_A + chi_B + lambda + sum rho_m evaluated on a
/// word of pure factors. Nonzero only on the four literal shapes:
///   [AA, AA]           -> (-1)^{g1} (f1 . f2-hat)            (AA part)
///   [BB, BB]           -> (-1)^{g1} (f1 . f2-hat)            (BB part)
///   [AB, AA]           -> -(-1)^{g1 - 1} (f1 . f2-hat)       (AB part)
///   [BB, AB, ..., AB]  -> f1 . (f2 (x) ... (x) f_{m+1})      (AB part)
/// (the exponents are the g-degrees of the respective first factors; in the
/// AB case the degree of the underlying unsuspended map). All other shapes
/// give zero.
template <typename R>
GElement<R> pure_d(const GWord<R>& word, const AlgebraMorphism& m,
                   unsigned arity_cap) {
  int gsum = 0;
  for (const auto& f : word) gsum += f.gdeg;
  int out_gdeg = gsum + 2 - static_cast<int>(word.size());
  GElement<R> out = GElement<R>::zero(out_gdeg, m);
  if (word.size() < 2) return out;
  const Cochain<R>& f1 = word[0];
  if (word.size() == 2) {
    const Cochain<R>& f2 = word[1];
    if (f1.flavor == Flavor::AA && f2.flavor == Flavor::AA) {
      out.a = compose_after_coderivation(f1, f2, arity_cap);
      if (f1.gdeg % 2 != 0) out.a.scale(R(-1));
      return out;
    }
    if (f1.flavor == Flavor::BB && f2.flavor == Flavor::BB) {
      out.b = compose_after_coderivation(f1, f2, arity_cap);
      if (f1.gdeg % 2 != 0) out.b.scale(R(-1));
      return out;
    }
    if (f1.flavor == Flavor::AB && f2.flavor == Flavor::AA) {
      out.p = compose_after_coderivation(f1, f2, arity_cap);
      if (f1.operator_degree() % 2 == 0) out.p.scale(R(-1));
      return out;
    }
  }
  if (f1.flavor == Flavor::BB) {
    for (std::size_t k = 1; k < word.size(); ++k)
      if (word[k].flavor != Flavor::AB) return out;
    std::vector<Cochain<R>> gammas(word.begin() + 1, word.end());
    out.p = compose_rho(f1, gammas, arity_cap);
  }
  return out;
}

/// Corestriction of d-hat-squared on a single word: sum over contiguous
/// sub-intervals, inner d on the interval (Koszul sign past the suspended
/// prefix, deg d = 1), then d on the contracted word. Vanishes after
/// symmetrization.
template <typename R>
GElement<R> dhat_square_corestriction(const GWord<R>& word,
                                      const AlgebraMorphism& m,
                                      unsigned arity_cap) {
  const std::size_t n = word.size();
  int gsum = 0;
  for (const auto& f : word) gsum += f.gdeg;
  GElement<R> total =
      GElement<R>::zero(gsum + 3 - static_cast<int>(n), m);
  for (std::size_t len = 2; len <= n; ++len)
    for (std::size_t p = 0; p + len <= n; ++p) {
      GWord<R> inner(word.begin() + p, word.begin() + p + len);
      GElement<R> dinner = pure_d(inner, m, arity_cap);
      dinner.drop_zero_components();
      int sign = (word_gdeg_sum(word, 0, p) % 2 == 0) ? 1 : -1;
      auto contract = [&](const Cochain<R>& part) {
        if (part.is_zero()) return;
        GWord<R> w2;
        w2.reserve(n - len + 1);
        w2.insert(w2.end(), word.begin(), word.begin() + p);
        w2.push_back(part);
        w2.insert(w2.end(), word.begin() + p + len, word.end());
        GElement<R> outer = pure_d(w2, m, arity_cap);
        if (sign < 0) outer.scale(R(-1));
        total += outer;
      };
      contract(dinner.a);
      contract(dinner.b);
      contract(dinner.p);
    }
  return total;
}

/// Corestriction of d-hat-squared on the symmetrization of the word (Koszul
/// signs on the suspended degrees). The defining identity: this vanishes
/// for every word.
template <typename R>
GElement<R> dhat_square_on_symmetrization(const GWord<R>& word,
                                          const AlgebraMorphism& m,
                                          unsigned arity_cap) {
  const std::size_t n = word.size();
  std::vector<int> sdegs(n);
  for (std::size_t k = 0; k < n; ++k) sdegs[k] = word[k].gdeg - 1;
  int gsum = 0;
  for (const auto& f : word) gsum += f.gdeg;
  GElement<R> total =
      GElement<R>::zero(gsum + 3 - static_cast<int>(n), m);
  for (const auto& [perm, sign] : signed_permutations(sdegs)) {
    GWord<R> w(n, word[0]);
    for (std::size_t k = 0; k < n; ++k) w[k] = word[perm[k]];
    GElement<R> term = dhat_square_corestriction(w, m, arity_cap);
    if (sign < 0) term.scale(R(-1));
    total += term;
  }
  return total;
}

namespace detail {

/// Applies fn to every flavor-expansion of the slot list: slot k is filled
/// with one nonzero flavor part of elems[k].
template <typename R, typename Fn>
void expand_flavors(const std::vector<const GElement<R>*>& elems, Fn&& fn) {
  const std::size_t n = elems.size();
  GWord<R> w;
  w.reserve(n);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      fn(w);
      return;
    }
    for (const Cochain<R>* part :
         {&elems[k]->a, &elems[k]->b, &elems[k]->p}) {
      if (part->is_zero()) continue;
      w.push_back(*part);
      self(self, k + 1);
      w.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// Full Maurer-Cartan residual sum_{L >= 1} d_L(g (x) ... (x) g) of a
/// degree-1 element (no reciprocal factorials: the symmetrization of an
/// L-th tensor power of an even element carries multiplicity L!, and the
/// residual here is the plain corestriction on tensor powers). The sum
/// terminates: d vanishes on words longer than arity_cap + 1.
template <typename R>
GElement<R> mc_full_residual(const GElement<R>& g, const AlgebraMorphism& m,
                             unsigned arity_cap) {
  if (g.gdeg != 1)
    throw std::invalid_argument("mc_full_residual: need g-degree 1");
  GElement<R> total = GElement<R>::zero(2, m);
  for (std::size_t L = 2; L <= static_cast<std::size_t>(arity_cap) + 1; ++L) {
    std::vector<const GElement<R>*> slots(L, &g);
    detail::expand_flavors(slots, [&](const GWord<R>& w) {
      total += pure_d(w, m, arity_cap);
    });
  }
  total.drop_zero_components();
  return total;
}

/// Residual of the base-twisted Maurer-Cartan equation at el: the full
/// residual of base + el, assuming the base itself satisfies the equation.
template <typename R>
GElement<R> mc_residual(const GElement<R>& el, const GElement<R>& base,
                        const AlgebraMorphism& m, unsigned arity_cap) {
  return mc_full_residual(base + el, m, arity_cap);
}

/// Unary operation of the base-twisted structure:
///   d^base_1(y) = sum_k d_{k+1}(base (x) ... (x) base (x) y),
/// the base copies shuffled into every position (all shuffle signs are +1:
/// the base has suspended degree 0). This is the differential of the
/// twisted structure when base is Maurer-Cartan.
template <typename R>
GElement<R> twisted_d1(const GElement<R>& base, const GElement<R>& y,
                       const AlgebraMorphism& m, unsigned arity_cap) {
  if (base.gdeg != 1) throw std::invalid_argument("twisted_d1: base degree");
  GElement<R> total = GElement<R>::zero(y.gdeg + 1, m);
  for (std::size_t L = 2; L <= static_cast<std::size_t>(arity_cap) + 1; ++L)
    for (std::size_t pos = 0; pos < L; ++pos) {
      std::vector<const GElement<R>*> slots(L, &base);
      slots[pos] = &y;
      detail::expand_flavors(slots, [&](const GWord<R>& w) {
        total += pure_d(w, m, arity_cap);
      });
    }
  total.drop_zero_components();
  return total;
}

/// Binary operation of the base-twisted structure, evaluated on the
/// symmetrization of y1 (x) y2:
///   sum_k d_{k+2} over shuffles of the base copies and both orders of
///   y1, y2 (Koszul sign on the suspended degrees for the swap).
template <typename R>
GElement<R> twisted_d2(const GElement<R>& base, const GElement<R>& y1,
                       const GElement<R>& y2, const AlgebraMorphism& m,
                       unsigned arity_cap) {
  if (base.gdeg != 1) throw std::invalid_argument("twisted_d2: base degree");
  GElement<R> total = GElement<R>::zero(y1.gdeg + y2.gdeg, m);
  int swap_sign = ((y1.gdeg - 1) * (y2.gdeg - 1) % 2 == 0) ? 1 : -1;
  for (std::size_t L = 2; L <= static_cast<std::size_t>(arity_cap) + 1; ++L)
    for (std::size_t p1 = 0; p1 < L; ++p1)
      for (std::size_t p2 = 0; p2 < L; ++p2) {
        if (p1 == p2) continue;
        std::vector<const GElement<R>*> slots(L, &base);
        slots[p1] = &y1;
        slots[p2] = &y2;
        int sign = p1 < p2 ? 1 : swap_sign;
        detail::expand_flavors(slots, [&](const GWord<R>& w) {
          GElement<R> term = pure_d(w, m, arity_cap);
          if (sign < 0) term.scale(R(-1));
          total += term;
        });
      }
  total.drop_zero_components();
  return total;
}

/// n-ary operation of the base-twisted structure on an ordered word of pure
/// factors: sum over slot counts L and injections of the factors into the
/// slots (order of the non-base factors carries the Koszul sign of the
/// induced permutation; the base copies have even suspended degree and
/// contribute no signs).
template <typename R>
GElement<R> twisted_pure_d(const GElement<R>& base, const GWord<R>& word,
                           const AlgebraMorphism& m, unsigned arity_cap) {
  if (base.gdeg != 1)
    throw std::invalid_argument("twisted_pure_d: base degree");
  const std::size_t n = word.size();
  int gsum = 0;
  for (const auto& f : word) gsum += f.gdeg;
  GElement<R> total = GElement<R>::zero(gsum + 2 - static_cast<int>(n), m);
  if (n == 0) return total;
  std::vector<int> sdegs(n);
  for (std::size_t k = 0; k < n; ++k) sdegs[k] = word[k].gdeg - 1;
  // Wrap each pure factor as a one-flavor element so the flavor expansion of
  // the base slots can run uniformly.
  std::vector<GElement<R>> wrapped(n, GElement<R>::zero(0, m));
  for (std::size_t k = 0; k < n; ++k) {
    wrapped[k] = GElement<R>::zero(word[k].gdeg, m);
    if (word[k].flavor == Flavor::AA)
      wrapped[k].a = word[k];
    else if (word[k].flavor == Flavor::BB)
      wrapped[k].b = word[k];
    else
      wrapped[k].p = word[k];
  }
  auto perms = signed_permutations(sdegs);
  for (std::size_t L = std::max<std::size_t>(n, 2);
       L <= static_cast<std::size_t>(arity_cap) + 1; ++L) {
    // Choose the sorted positions of the non-base factors.
    std::vector<std::size_t> pos(n);
    for (std::size_t k = 0; k < n; ++k) pos[k] = k;
    while (true) {
      for (const auto& [perm, sign] : perms) {
        std::vector<const GElement<R>*> slots(L, &base);
        for (std::size_t k = 0; k < n; ++k) slots[pos[k]] = &wrapped[perm[k]];
        detail::expand_flavors(slots, [&](const GWord<R>& w) {
          GElement<R> term = pure_d(w, m, arity_cap);
          if (sign < 0) term.scale(R(-1));
          total += term;
        });
      }
      // Next n-subset of {0..L-1} in lexicographic order.
      std::size_t k = n;
      while (k > 0 && pos[k - 1] == L - n + k - 1) --k;
      if (k == 0) break;
      ++pos[k - 1];
      for (std::size_t j = k; j < n; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  total.drop_zero_components();
  return total;
}

/// Corestriction of the squared twisted coderivation on one ordered word:
/// the same contiguous-interval contraction as in the untwisted check, with
/// every operation replaced by the base-twisted one.
template <typename R>
GElement<R> twisted_dhat_square_corestriction(const GElement<R>& base,
                                              const GWord<R>& word,
                                              const AlgebraMorphism& m,
                                              unsigned arity_cap) {
  const std::size_t n = word.size();
  int gsum = 0;
  for (const auto& f : word) gsum += f.gdeg;
  GElement<R> total = GElement<R>::zero(gsum + 3 - static_cast<int>(n), m);
  for (std::size_t len = 1; len <= n; ++len)
    for (std::size_t p = 0; p + len <= n; ++p) {
      GWord<R> inner(word.begin() + p, word.begin() + p + len);
      GElement<R> dinner = twisted_pure_d(base, inner, m, arity_cap);
      dinner.drop_zero_components();
      int sign = (word_gdeg_sum(word, 0, p) % 2 == 0) ? 1 : -1;
      auto contract = [&](const Cochain<R>& part) {
        if (part.is_zero()) return;
        GWord<R> w2;
        w2.reserve(n - len + 1);
        w2.insert(w2.end(), word.begin(), word.begin() + p);
        w2.push_back(part);
        w2.insert(w2.end(), word.begin() + p + len, word.end());
        GElement<R> outer = twisted_pure_d(base, w2, m, arity_cap);
        if (sign < 0) outer.scale(R(-1));
        total += outer;
      };
      contract(dinner.a);
      contract(dinner.b);
      contract(dinner.p);
    }
  return total;
}

/// Squared twisted coderivation on the symmetrization of the word. Vanishes
/// for every word exactly when base is Maurer-Cartan.
template <typename R>
GElement<R> twisted_dhat_square_on_symmetrization(const GElement<R>& base,
                                                  const GWord<R>& word,
                                                  const AlgebraMorphism& m,
                                                  unsigned arity_cap) {
  const std::size_t n = word.size();
  std::vector<int> sdegs(n);
  for (std::size_t k = 0; k < n; ++k) sdegs[k] = word[k].gdeg - 1;
  int gsum = 0;
  for (const auto& f : word) gsum += f.gdeg;
  GElement<R> total = GElement<R>::zero(gsum + 3 - static_cast<int>(n), m);
  for (const auto& [perm, sign] : signed_permutations(sdegs)) {
    GWord<R> w(n, word[0]);
    for (std::size_t k = 0; k < n; ++k) w[k] = word[perm[k]];
    GElement<R> term = twisted_dhat_square_corestriction(base, w, m, arity_cap);
    if (sign < 0) term.scale(R(-1));
    total += term;
  }
  return total;
}

/// Coordinates for the homogeneous slice of g of one g-degree: all entries
/// (flavor, arity, input tuple, output index) allowed by homogeneity, at
/// arities 1..arity_cap. Defines the bases for every matrix built from the
/// twisted operations.
struct SliceBasis {
  struct Entry {
    Flavor fl;
    unsigned arity;
    std::vector<std::size_t> tuple;
    std::size_t out;
  };
  int gdeg = 0;
  std::vector<Entry> entries;

  std::size_t dim() const { return entries.size(); }
};

inline SliceBasis build_slice(const AlgebraMorphism& m, int gdeg,
                              unsigned arity_cap,
                              bool include_ab = true) {
  SliceBasis s;
  s.gdeg = gdeg;
  auto add = [&](Flavor fl, const DGAlgebra& src, const DGAlgebra& tgt) {
    for (unsigned n = 1; n <= arity_cap; ++n) {
      int q = fl == Flavor::AB ? gdeg - static_cast<int>(n)
                               : gdeg + 1 - static_cast<int>(n);
      for_each_tuple(src.dim(), n, [&](const std::vector<std::size_t>& t) {
        int din = 0;
        for (auto i : t) din += src.basis.degree(i);
        for (std::size_t j = 0; j < tgt.dim(); ++j)
          if (tgt.basis.degree(j) == q + din)
            s.entries.push_back({fl, n, t, j});
      });
    }
  };
  add(Flavor::AA, m.source, m.source);
  add(Flavor::BB, m.target, m.target);
  if (include_ab) add(Flavor::AB, m.source, m.target);
  return s;
}

template <typename R>
GElement<R> slice_element(const SliceBasis& s, const std::vector<R>& coords,
                          const AlgebraMorphism& m) {
  if (coords.size() != s.dim())
    throw std::invalid_argument("slice_element: size");
  GElement<R> g = GElement<R>::zero(s.gdeg, m);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (coords[i].is_zero()) continue;
    const auto& e = s.entries[i];
    Cochain<R>& c = e.fl == Flavor::AA ? g.a : (e.fl == Flavor::BB ? g.b : g.p);
    c.entry(e.arity, e.tuple, e.out) += coords[i];
  }
  g.drop_zero_components();
  return g;
}

/// Coordinates of g in the slice basis. With check = true, verifies that g
/// has no entries outside the slice (the round trip through slice_element
/// reproduces g exactly).
template <typename R>
std::vector<R> slice_coords(const SliceBasis& s, const GElement<R>& g,
                            const AlgebraMorphism& m, bool check = true) {
  std::vector<R> coords(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const auto& e = s.entries[i];
    const Cochain<R>& c =
        e.fl == Flavor::AA ? g.a : (e.fl == Flavor::BB ? g.b : g.p);
    coords[i] = c.value(e.arity, e.tuple)[e.out];
  }
  if (check) {
    GElement<R> back = slice_element(s, coords, m);
    GElement<R> diff = g;
    diff.gdeg = s.gdeg;
    diff -= back;
    if (!diff.is_zero())
      throw std::invalid_argument("slice_coords: element outside slice");
  }
  return coords;
}

/// Matrix of y -> twisted_d1(base, y) from the slice of g-degree `from` to
/// the slice of degree from + 1, over Q.
inline Matrix twisted_d1_matrix(const GElement<Rat>& base,
                                const AlgebraMorphism& m, unsigned arity_cap,
                                const SliceBasis& dom, const SliceBasis& cod) {
  Matrix mat(cod.dim(), dom.dim());
  for (std::size_t j = 0; j < dom.dim(); ++j) {
    std::vector<Rat> e(dom.dim());
    e[j] = Rat(1);
    GElement<Rat> y = slice_element(dom, e, m);
    GElement<Rat> dy = twisted_d1(base, y, m, arity_cap);
    auto c = slice_coords(cod, dy, m);
    for (std::size_t i = 0; i < cod.dim(); ++i) mat.at(i, j) = c[i];
  }
  return mat;
}

}  // namespace defmorph
