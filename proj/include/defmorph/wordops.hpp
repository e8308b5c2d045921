#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "defmorph/cochain.hpp"

namespace defmorph {

/// Basis of the tensor coalgebra T(sA) truncated to word lengths 1..max_len.
/// Every operator we build (coderivations generated by arity >= 1 cochains,
/// coalgebra morphisms, their exponentials) maps this span into itself, so
/// the truncation is exact.
struct WordSpace {
  const DGAlgebra* alg = nullptr;
  unsigned max_len = 0;
  std::vector<std::vector<std::size_t>> words;
  std::map<std::vector<std::size_t>, std::size_t> index;

  WordSpace() = default;
  WordSpace(const DGAlgebra& a, unsigned len) : alg(&a), max_len(len) {
    for (unsigned n = 1; n <= max_len; ++n)
      for_each_tuple(a.dim(), n, [&](const std::vector<std::size_t>& t) {
        index.emplace(t, words.size());
        words.push_back(t);
      });
  }
  std::size_t dim() const { return words.size(); }
};

/// Linear operator between truncated word spaces, stored column-sparse:
/// col[j] is the image of the j-th basis word as a formal word sum.
template <typename R>
struct WordOp {
  const WordSpace* src = nullptr;
  const WordSpace* dst = nullptr;
  std::vector<WordSum<R>> col;

  static WordOp zero(const WordSpace& s, const WordSpace& d) {
    WordOp op;
    op.src = &s;
    op.dst = &d;
    op.col.resize(s.dim());
    return op;
  }
  static WordOp identity(const WordSpace& s) {
    WordOp op = zero(s, s);
    for (std::size_t j = 0; j < s.dim(); ++j)
      op.col[j].emplace(s.words[j], R(1));
    return op;
  }

  bool is_zero() const {
    for (const auto& c : col)
      if (!c.empty()) return false;
    return true;
  }

  WordOp& operator+=(const WordOp& o) {
    if (src != o.src || dst != o.dst)
      throw std::invalid_argument("WordOp: mismatched spaces");
    for (std::size_t j = 0; j < col.size(); ++j)
      for (const auto& [w, c] : o.col[j]) add_term(col[j], w, c);
    return *this;
  }
  WordOp& operator-=(const WordOp& o) {
    if (src != o.src || dst != o.dst)
      throw std::invalid_argument("WordOp: mismatched spaces");
    for (std::size_t j = 0; j < col.size(); ++j)
      for (const auto& [w, c] : o.col[j]) add_term(col[j], w, -c);
    return *this;
  }
  WordOp& scale(const R& s) {
    for (auto& c : col) {
      for (auto& [w, x] : c) x *= s;
    }
    for (auto& c : col) {
      for (auto it = c.begin(); it != c.end();)
        it = it->second.is_zero() ? c.erase(it) : std::next(it);
    }
    return *this;
  }
  WordOp& divide(const Rat& s) {
    for (auto& c : col)
      for (auto& [w, x] : c) x /= s;
    return *this;
  }
};

/// Composition a . b (apply b first).
template <typename R>
WordOp<R> compose(const WordOp<R>& a, const WordOp<R>& b) {
  if (a.src != b.dst) throw std::invalid_argument("compose: mismatched spaces");
  WordOp<R> out = WordOp<R>::zero(*b.src, *a.dst);
  for (std::size_t j = 0; j < b.col.size(); ++j)
    for (const auto& [w, c] : b.col[j]) {
      std::size_t i = a.src->index.at(w);
      for (const auto& [w2, c2] : a.col[i]) add_term(out.col[j], w2, c * c2);
    }
  return out;
}

/// The coderivation generated by an AA or BB cochain, as an operator on the
/// truncated word space of the matching algebra.
template <typename R>
WordOp<R> coderivation_op(const Cochain<R>& f, const WordSpace& space) {
  if (f.flavor == Flavor::AB)
    throw std::invalid_argument("coderivation_op: AB cochain");
  WordOp<R> op = WordOp<R>::zero(space, space);
  for (std::size_t j = 0; j < space.dim(); ++j)
    op.col[j] = coderivation_apply(f, space.words[j]);
  return op;
}

/// The coalgebra morphism generated by an AB cochain, as an operator from
/// the source word space to the target word space.
template <typename R>
WordOp<R> coalgebra_morphism_op(const Cochain<R>& g, const WordSpace& src,
                                const WordSpace& dst) {
  WordOp<R> op = WordOp<R>::zero(src, dst);
  for (std::size_t j = 0; j < src.dim(); ++j)
    for (unsigned r = 1; r <= dst.max_len; ++r)
      for (const auto& [w, c] : coalgebra_morphism_apply(g, src.words[j], r))
        add_term(op.col[j], w, c);
  return op;
}

/// exp(X) = sum X^k / k!. Terminates because every X we exponentiate has
/// coefficients in the maximal ideal of the truncated polynomial ring.
template <typename R>
WordOp<R> word_exp(const WordOp<R>& x) {
  if (x.src != x.dst) throw std::invalid_argument("word_exp: need square op");
  WordOp<R> acc = WordOp<R>::identity(*x.src);
  WordOp<R> power = x;
  Rat fact(1);
  for (unsigned k = 1; !power.is_zero(); ++k) {
    if (k > 200) throw std::runtime_error("word_exp: not nilpotent");
    fact *= Rat(static_cast<long>(k));
    WordOp<R> term = power;
    term.divide(fact);
    acc += term;
    power = compose(power, x);
  }
  return acc;
}

/// log(M) for M = 1 + X with X nilpotent: sum (-1)^(k+1) X^k / k.
template <typename R>
WordOp<R> word_log(const WordOp<R>& m) {
  if (m.src != m.dst) throw std::invalid_argument("word_log: need square op");
  WordOp<R> x = m;
  x -= WordOp<R>::identity(*m.src);
  WordOp<R> acc = WordOp<R>::zero(*m.src, *m.src);
  WordOp<R> power = x;
  for (unsigned k = 1; !power.is_zero(); ++k) {
    if (k > 200) throw std::runtime_error("word_log: not unipotent");
    WordOp<R> term = power;
    term.divide(Rat(static_cast<long>(k)));
    if (k % 2 == 0) term.scale(R(-1));
    acc += term;
    power = compose(power, x);
  }
  return acc;
}

/// Reads off the cochain whose generated coderivation (or coalgebra
/// morphism) has the given operator's length-n -> length-1 blocks: the
/// length-1 coefficients on each length-n word are the SUSPENDED tables of
/// the arity-n component.
template <typename R>
Cochain<R> corestrict_op(const WordOp<R>& op, Flavor fl, int gdeg,
                         const DGAlgebra& src, const DGAlgebra& tgt,
                         unsigned cap) {
  Cochain<R> raw = Cochain<R>::zero(fl, gdeg, src, tgt);
  for (std::size_t j = 0; j < op.src->dim(); ++j) {
    const auto& w = op.src->words[j];
    if (w.size() > cap) continue;
    for (const auto& [out_w, c] : op.col[j])
      if (out_w.size() == 1)
        raw.entry(static_cast<unsigned>(w.size()), w, out_w[0]) = c;
  }
  raw.drop_zero_components();
  return from_suspended(raw);
}

}  // namespace defmorph

#include "defmorph/linfty.hpp"

namespace defmorph {

/// Independent cross-check of the gauge action: conjugates the full
/// structure by operator exponentials on the truncated word spaces. The
/// source and target coderivations transform by conjugation with exp of the
/// generated coderivation of the matching component of h; the morphism's
/// coalgebra morphism transforms by exp(h_B-hat) on the left and
/// exp(-h_A-hat) on the right. `total` must carry the complete degree-1
/// structure (differentials, products, morphism, plus any deformation).
template <typename R>
GElement<R> conjugated_structure(const GElement<R>& h, const GElement<R>& total,
                                 const AlgebraMorphism& m, unsigned cap) {
  if (h.gdeg != 0 || total.gdeg != 1)
    throw std::invalid_argument("conjugated_structure: degrees");
  if (!h.p.is_zero())
    throw std::invalid_argument(
        "conjugated_structure: gauge element has a morphism component");
  WordSpace wa(m.source, cap);
  WordSpace wb(m.target, cap);
  Cochain<R> nha = h.a;
  nha.scale(R(-1));
  Cochain<R> nhb = h.b;
  nhb.scale(R(-1));
  auto ea = word_exp(coderivation_op(h.a, wa));
  auto ea_inv = word_exp(coderivation_op(nha, wa));
  auto eb = word_exp(coderivation_op(h.b, wb));
  auto eb_inv = word_exp(coderivation_op(nhb, wb));

  GElement<R> out = GElement<R>::zero(1, m);
  out.a = corestrict_op(compose(ea, compose(coderivation_op(total.a, wa), ea_inv)),
                        Flavor::AA, 1, m.source, m.source, cap);
  out.b = corestrict_op(compose(eb, compose(coderivation_op(total.b, wb), eb_inv)),
                        Flavor::BB, 1, m.target, m.target, cap);
  out.p = corestrict_op(
      compose(eb, compose(coalgebra_morphism_op(total.p, wa, wb), ea_inv)),
      Flavor::AB, 1, m.source, m.target, cap);
  return out;
}

}  // namespace defmorph
