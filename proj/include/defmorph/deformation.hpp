#pragma once

#include <optional>
#include <vector>

#include "defmorph/artin.hpp"
#include "defmorph/linfty.hpp"
#include "defmorph/wordops.hpp"

namespace defmorph {

/// Extracts the coefficient of t^k of every entry, as an element over Q.
inline GElement<Rat> t_coefficient(const GElement<ArtinSeries>& g, unsigned k,
                                   const AlgebraMorphism& m) {
  GElement<Rat> out = GElement<Rat>::zero(g.gdeg, m);
  auto pick = [&](const Cochain<ArtinSeries>& c, Cochain<Rat>& dst) {
    dst = map_entries<Rat>(c, [&](const ArtinSeries& s) { return s.coeff(k); });
    dst.drop_zero_components();
  };
  pick(g.a, out.a);
  pick(g.b, out.b);
  pick(g.p, out.p);
  return out;
}

/// Embeds a Q-element as the coefficient of t^k in series of the given
/// truncation order.
inline GElement<ArtinSeries> t_embed(const GElement<Rat>& g, unsigned k,
                                     unsigned order,
                                     const AlgebraMorphism& m) {
  GElement<ArtinSeries> out = GElement<ArtinSeries>::zero(g.gdeg, m);
  auto put = [&](const Cochain<Rat>& c, Cochain<ArtinSeries>& dst) {
    dst = map_entries<ArtinSeries>(
        c, [&](const Rat& r) { return ArtinSeries::t_power(order, k, r); });
    dst.drop_zero_components();
  };
  put(g.a, out.a);
  put(g.b, out.b);
  put(g.p, out.p);
  return out;
}

inline GElement<ArtinSeries> zero_series(int gdeg, unsigned order,
                                         const AlgebraMorphism& m) {
  GElement<Rat> z = GElement<Rat>::zero(gdeg, m);
  return t_embed(z, 0, order, m);
}

/// Maurer-Cartan solution over Q[t]/(t^(order+1)) relative to the structure
/// element: a degree-1 element with entries in (t) whose twisted residual
/// vanishes identically.
struct MCSolution {
  unsigned order = 0;
  GElement<ArtinSeries> el;
};

/// Obstruction to extending a solution one order further: the canonical
/// class of the residual coefficient in the degree-2 cohomology of the
/// twisted unary operation. Well-defined: gauge-equivalent solutions of the
/// same order produce the same class.
struct ObstructionClass {
  unsigned order = 0;  // the order at which extension failed
  Vec coords;          // canonical coordinates in the cohomology slice
  bool is_zero() const { return is_zero_vec(coords); }
};

struct ExtendOutcome {
  std::optional<MCSolution> solution;
  std::optional<ObstructionClass> obstruction;
};

/// Fixed linear data of the deformation problem at one arity cap: the
/// structure element and the matrices of its twisted unary operation
/// between the degree 0, 1, 2, 3 slices.
struct DeformationSetup {
  AlgebraMorphism morphism;
  unsigned arity_cap = 4;
  GElement<Rat> base = GElement<Rat>::zero(1, morphism);
  SliceBasis s0, s1, s2, s3;
  Matrix d01, d12, d23;

  explicit DeformationSetup(const AlgebraMorphism& m, unsigned cap = 4)
      : morphism(m), arity_cap(cap) {
    base = structure_element<Rat>(m);
    // Gauge parameters live in the subalgebra with no morphism component,
    // so the degree-0 slice drops the third flavor.
    s0 = build_slice(m, 0, cap, /*include_ab=*/false);
    s1 = build_slice(m, 1, cap);
    s2 = build_slice(m, 2, cap);
    s3 = build_slice(m, 3, cap);
    d01 = twisted_d1_matrix(base, m, cap, s0, s1);
    d12 = twisted_d1_matrix(base, m, cap, s1, s2);
    d23 = twisted_d1_matrix(base, m, cap, s2, s3);
  }
};

/// dim of the degree-1 cohomology of the twisted unary operation: the space
/// of first-order deformations modulo infinitesimal gauge.
inline std::size_t tangent_dimension(const DeformationSetup& su) {
  return quotient_dim(su.d12, su.d01);
}

/// Extends a solution that is flat to order `known` (residual = 0 mod
/// t^(known+1)) one order further by a linear correction at t^(known+1).
/// On failure returns the canonical obstruction class (always a cocycle).
inline ExtendOutcome extend_order(const MCSolution& sol, unsigned known,
                                  const DeformationSetup& su) {
  const unsigned k = known + 1;
  if (k > sol.order)
    throw std::invalid_argument("extend_order: beyond truncation order");
  GElement<ArtinSeries> res =
      mc_residual(sol.el, t_embed(su.base, 0, sol.order, su.morphism),
                  su.morphism, su.arity_cap);
  GElement<Rat> rk = t_coefficient(res, k, su.morphism);
  rk.gdeg = 2;
  Vec rhs = slice_coords(su.s2, rk, su.morphism);
  for (auto& x : rhs) x = -x;
  auto u = solve(su.d12, rhs);
  ExtendOutcome out;
  if (!u) {
    ObstructionClass ob;
    ob.order = k;
    Vec cocycle = rhs;
    for (auto& x : cocycle) x = -x;  // the class of the residual itself
    ob.coords = quotient_class(su.d23, su.d12, cocycle);
    out.obstruction = ob;
    return out;
  }
  MCSolution next = sol;
  next.el += t_embed(slice_element(su.s1, *u, su.morphism), k, sol.order,
                     su.morphism);
  out.solution = next;
  return out;
}

/// Repeatedly extends from order `known` until the residual vanishes at all
/// orders up to the truncation order, or an obstruction appears.
inline ExtendOutcome extend_to_full_order(const MCSolution& sol,
                                          unsigned known,
                                          const DeformationSetup& su) {
  MCSolution cur = sol;
  for (unsigned k = known; k < sol.order; ++k) {
    auto step = extend_order(cur, k, su);
    if (!step.solution) return step;
    cur = *step.solution;
  }
  return ExtendOutcome{cur, std::nullopt};
}

/// The gauge vector field at the point `y` (a degree-1 series element
/// relative to the base) generated by a degree-0 element h with entries in
/// (t): the twisted unary operation of base + y applied to h.
inline GElement<ArtinSeries> gauge_vector_field(
    const GElement<ArtinSeries>& h, const GElement<ArtinSeries>& y,
    const DeformationSetup& su, unsigned order) {
  GElement<ArtinSeries> total = t_embed(su.base, 0, order, su.morphism) + y;
  return twisted_d1(total, h, su.morphism, su.arity_cap);
}

namespace detail {

template <typename R>
void expand_and_add(const std::vector<const GElement<R>*>& slots,
                    GElement<R>& acc, const AlgebraMorphism& m,
                    unsigned cap) {
  expand_flavors(slots, [&](const GWord<R>& w) { acc += pure_d(w, m, cap); });
}

/// Evaluates the gauge vector field on a polynomial curve
/// y(tau) = sum_j c_j tau^j, returning the tau-polynomial coefficients of
/// the result. The field is polynomial in y: every multilinear term is a
/// pure-d word with one h slot and base-or-c_j slots; tau-degrees add.
inline std::vector<GElement<ArtinSeries>> field_on_curve(
    const GElement<ArtinSeries>& h,
    const std::vector<GElement<ArtinSeries>>& curve,
    const DeformationSetup& su, unsigned order, std::size_t tau_cap) {
  const AlgebraMorphism& m = su.morphism;
  GElement<ArtinSeries> base_s = t_embed(su.base, 0, order, m);
  std::vector<GElement<ArtinSeries>> out(
      tau_cap + 1, GElement<ArtinSeries>::zero(h.gdeg + 1, m));
  // Options per non-h slot: base (tau^0) or curve[j] (tau^j). curve[0]
  // competes with base, so fold base into option j = 0 separately.
  std::vector<const GElement<ArtinSeries>*> options;
  std::vector<std::size_t> tau_of;
  options.push_back(&base_s);
  tau_of.push_back(0);
  for (std::size_t j = 0; j < curve.size(); ++j) {
    if (curve[j].is_zero()) continue;
    options.push_back(&curve[j]);
    tau_of.push_back(j);
  }
  const unsigned cap = su.arity_cap;
  for (std::size_t L = 2; L <= static_cast<std::size_t>(cap) + 1; ++L)
    for (std::size_t hpos = 0; hpos < L; ++hpos) {
      std::vector<std::size_t> choice(L, 0);
      auto rec = [&](auto&& self, std::size_t slot, std::size_t tdeg) -> void {
        if (slot == L) {
          std::vector<const GElement<ArtinSeries>*> slots(L);
          for (std::size_t i = 0; i < L; ++i)
            slots[i] = i == hpos ? &h : options[choice[i]];
          expand_and_add(slots, out[tdeg], m, cap);
          return;
        }
        if (slot == hpos) {
          self(self, slot + 1, tdeg);
          return;
        }
        for (std::size_t o = 0; o < options.size(); ++o) {
          if (tdeg + tau_of[o] > tau_cap) continue;
          choice[slot] = o;
          self(self, slot + 1, tdeg + tau_of[o]);
        }
      };
      rec(rec, 0, 0);
    }
  for (auto& g : out) g.drop_zero_components();
  return out;
}

}  // namespace detail

/// Time-1 flow of the gauge vector field of h starting at `start`: the
/// gauge action of exp(h) on a solution. Picard iteration in the flow
/// parameter; it stabilizes after at most order+1 steps because every
/// application of the field gains one power of t.
inline GElement<ArtinSeries> gauge_exp(const GElement<ArtinSeries>& h,
                                       const GElement<ArtinSeries>& start,
                                       const DeformationSetup& su,
                                       unsigned order) {
  const AlgebraMorphism& m = su.morphism;
  const std::size_t tau_cap = order;  // tau-degrees above the t-order vanish
  std::vector<GElement<ArtinSeries>> curve(
      tau_cap + 1, GElement<ArtinSeries>::zero(1, m));
  curve[0] = start;
  for (unsigned it = 0; it <= order; ++it) {
    auto f = detail::field_on_curve(h, curve, su, order, tau_cap);
    std::vector<GElement<ArtinSeries>> next(
        tau_cap + 1, GElement<ArtinSeries>::zero(1, m));
    next[0] = start;
    for (std::size_t j = 0; j + 1 <= tau_cap; ++j) {
      GElement<ArtinSeries> c = f[j];
      Rat inv = Rat(1) / Rat(static_cast<long>(j + 1));
      auto div = [&](Cochain<ArtinSeries>& x) {
        for (auto& [n, tensor] : x.comps)
          for (auto& e : tensor) e *= ArtinSeries(inv);
      };
      div(c.a);
      div(c.b);
      div(c.p);
      next[j + 1] = c;
    }
    curve = std::move(next);
  }
  GElement<ArtinSeries> result = GElement<ArtinSeries>::zero(1, m);
  for (auto& c : curve) result += c;  // evaluate at tau = 1
  result.drop_zero_components();
  return result;
}

struct GaugeMatch {
  bool equivalent = false;
  unsigned failed_order = 0;  // first inconsistent order when inequivalent
  /// The witness: a single degree-0 element with gauge_exp(h, from) = to.
  GElement<ArtinSeries> h;
};

/// Combines an ordered list of gauge generators (first generator applied
/// first) into a single element with the same action: the generated
/// coderivation exponentials are multiplied on the truncated word spaces and
/// the product's logarithm is read back off by corestriction. Exact because
/// all generators lie in the maximal ideal and coderivations never lengthen
/// words.
inline GElement<ArtinSeries> combine_gauge_generators(
    const std::vector<GElement<ArtinSeries>>& gens,
    const DeformationSetup& su, unsigned order) {
  const AlgebraMorphism& m = su.morphism;
  GElement<ArtinSeries> h = zero_series(0, order, m);
  if (gens.empty()) return h;
  WordSpace wa(m.source, su.arity_cap);
  WordSpace wb(m.target, su.arity_cap);
  WordOp<ArtinSeries> pa = WordOp<ArtinSeries>::identity(wa);
  WordOp<ArtinSeries> pb = WordOp<ArtinSeries>::identity(wb);
  for (const auto& y : gens) {
    pa = compose(word_exp(coderivation_op(y.a, wa)), pa);
    pb = compose(word_exp(coderivation_op(y.b, wb)), pb);
  }
  h.a = corestrict_op(word_log(pa), Flavor::AA, 0, m.source, m.source,
                      su.arity_cap);
  h.b = corestrict_op(word_log(pb), Flavor::BB, 0, m.target, m.target,
                      su.arity_cap);
  return h;
}

/// Decides gauge equivalence order by order. At order k the reachable
/// discrepancies form a linear subspace: the image of y -> (exp(y).cur -
/// cur)_k on the logarithm of the stabilizer-mod-t^k subgroup. That map is
/// exactly linear (it is a homomorphism to a vector group composed with
/// exp), so an inconsistent solve certifies inequivalence at that order.
/// The stabilizer subalgebra for the next order is the kernel of the same
/// system. The accumulated generators are combined into a single witness via
/// operator logarithms. Each solve takes the lexicographically first pivot
/// solution, so the outcome is deterministic.
inline GaugeMatch gauge_equivalent(const MCSolution& from,
                                   const MCSolution& to,
                                   const DeformationSetup& su) {
  if (from.order != to.order)
    throw std::invalid_argument("gauge_equivalent: mixed orders");
  const unsigned order = from.order;
  const AlgebraMorphism& m = su.morphism;
  GaugeMatch res;

  // Basis of the current stabilizer subalgebra, initially all of h (x) m_R.
  std::vector<GElement<ArtinSeries>> stab;
  for (unsigned j = 1; j <= order; ++j)
    for (std::size_t i = 0; i < su.s0.dim(); ++i) {
      Vec e(su.s0.dim());
      e[i] = Rat(1);
      stab.push_back(t_embed(slice_element(su.s0, e, m), j, order, m));
    }

  GElement<ArtinSeries> cur = from.el;
  std::vector<GElement<ArtinSeries>> gens;
  for (unsigned k = 1; k <= order; ++k) {
    GElement<Rat> dk = t_coefficient(to.el - cur, k, m);
    dk.gdeg = 1;
    Vec rhs = slice_coords(su.s1, dk, m);
    Matrix sys(su.s1.dim(), stab.size());
    for (std::size_t j = 0; j < stab.size(); ++j) {
      auto moved = gauge_exp(stab[j], cur, su, order);
      GElement<Rat> eff = t_coefficient(moved - cur, k, m);
      eff.gdeg = 1;
      Vec col = slice_coords(su.s1, eff, m);
      for (std::size_t i = 0; i < su.s1.dim(); ++i) sys.at(i, j) = col[i];
    }
    auto x = solve(sys, rhs);
    if (!x) {
      res.failed_order = k;
      return res;
    }
    GElement<ArtinSeries> y = zero_series(0, order, m);
    bool moved_any = false;
    for (std::size_t j = 0; j < stab.size(); ++j)
      if (!(*x)[j].is_zero()) {
        GElement<ArtinSeries> term = stab[j];
        term.scale(ArtinSeries((*x)[j]));
        y += term;
        moved_any = true;
      }
    if (moved_any) {
      cur = gauge_exp(y, cur, su, order);
      gens.push_back(y);
      if (!t_coefficient(to.el - cur, k, m).is_zero())
        throw std::logic_error("gauge_equivalent: order-k effect not linear");
    }
    // Stabilizer mod t^(k+1): kernel of the effect map at order k.
    std::vector<GElement<ArtinSeries>> next;
    for (const auto& kv : kernel_basis(sys)) {
      GElement<ArtinSeries> z = zero_series(0, order, m);
      for (std::size_t j = 0; j < stab.size(); ++j)
        if (!kv[j].is_zero()) {
          GElement<ArtinSeries> term = stab[j];
          term.scale(ArtinSeries(kv[j]));
          z += term;
        }
      next.push_back(std::move(z));
    }
    stab = std::move(next);
  }
  GElement<ArtinSeries> final_diff = to.el - cur;
  res.equivalent = final_diff.is_zero();
  if (!res.equivalent) {
    res.failed_order = order;
    return res;
  }
  res.h = combine_gauge_generators(gens, su, order);
  return res;
}

}  // namespace defmorph
