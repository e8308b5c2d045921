#pragma once

#include <cstdint>
#include <optional>

#include "defmorph/linfty.hpp"

namespace defmorph {

/// Deterministic 64-bit generator (splitmix64 step function). Hand-rolled
/// so that identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  long int_in(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Structure constants are sampled from {-2,...,2}; zero is the most
  /// likely value, keeping candidates sparse.
  Rat sparse_coeff(unsigned zero_weight = 3) {
    if (below(zero_weight + 4) < zero_weight) return Rat(0);
    long v = int_in(1, 2);
    return below(2) ? Rat(v) : Rat(-v);
  }

 private:
  std::uint64_t state_;
};

/// Attempt/rejection counters for the candidate samplers.
struct GenStats {
  unsigned long attempts = 0;
  unsigned long rejected = 0;
  double rejection_rate() const {
    return attempts ? static_cast<double>(rejected) / attempts : 0.0;
  }
};

/// Random graded basis with degrees in [d_min, 0].
inline GradedBasis random_basis(Rng& rng, std::size_t dim, int d_min) {
  GradedBasis b;
  for (std::size_t i = 0; i < dim; ++i)
    b.elements.push_back(
        {"e" + std::to_string(i), static_cast<int>(rng.int_in(d_min, 0))});
  return b;
}

/// One candidate: degree-homogeneous sparse product and differential over
/// a random basis. Not necessarily associative or Leibniz; callers reject.
inline DGAlgebra random_candidate(Rng& rng, std::size_t dim, int d_min,
                                  bool with_differential) {
  DGAlgebra a;
  a.basis = random_basis(rng, dim, d_min);
  a.product.assign(dim, std::vector<Vec>(dim, Vec(dim)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        if (a.basis.degree(k) == a.basis.degree(i) + a.basis.degree(j))
          a.product[i][j][k] = rng.sparse_coeff();
  if (with_differential) {
    a.differential = Matrix(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t i = 0; i < dim; ++i)
        if (a.basis.degree(i) == a.basis.degree(j) + 1)
          a.differential.at(i, j) = rng.sparse_coeff();
  }
  return a;
}

/// Random valid dg algebra by rejection sampling; candidates violating
/// associativity, the Leibniz rule or delta^2 = 0 are discarded. Falls back
/// to the trivial product after max_attempts (always valid; non-unital
/// algebras include it).
inline DGAlgebra random_dg_algebra(Rng& rng, std::size_t dim, int d_min,
                                   bool with_differential, GenStats& stats,
                                   unsigned max_attempts = 200) {
  for (unsigned k = 0; k < max_attempts; ++k) {
    ++stats.attempts;
    DGAlgebra a = random_candidate(rng, dim, d_min, with_differential);
    if (validate_algebra(a).ok()) return a;
    ++stats.rejected;
  }
  DGAlgebra a;
  a.basis = random_basis(rng, dim, d_min);
  a.product.assign(dim, std::vector<Vec>(dim, Vec(dim)));
  if (with_differential) {
    // A square-zero differential pairing adjacent-degree elements.
    a.differential = Matrix(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t i = 0; i < dim; ++i)
        if (a.basis.degree(i) == a.basis.degree(j) + 1) {
          a.differential.at(i, j) = Rat(1);
          ++stats.attempts;
          if (!validate_algebra(a).ok()) {
            a.differential.at(i, j) = Rat(0);
            ++stats.rejected;
          }
        }
  }
  return a;
}

/// Random valid morphism gamma: A -> B by rejection on sparse degree-0
/// candidate matrices; falls back to the zero morphism (valid: the algebras
/// are non-unital).
inline AlgebraMorphism random_morphism(Rng& rng, const DGAlgebra& a,
                                       const DGAlgebra& b, GenStats& stats,
                                       unsigned max_attempts = 200) {
  for (unsigned k = 0; k < max_attempts; ++k) {
    ++stats.attempts;
    AlgebraMorphism m{a, b, Matrix(b.dim(), a.dim())};
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t i = 0; i < b.dim(); ++i)
        if (b.basis.degree(i) == a.basis.degree(j))
          m.matrix.at(i, j) = rng.sparse_coeff();
    if (validate_morphism(m).ok()) return m;
    ++stats.rejected;
  }
  return AlgebraMorphism::zero(a, b);
}

/// Random valid morphism together with its two algebras.
inline AlgebraMorphism random_morphism_setup(Rng& rng, std::size_t max_dim,
                                             int d_min, bool with_differential,
                                             GenStats& stats) {
  std::size_t da = 1 + rng.below(max_dim);
  DGAlgebra a = random_dg_algebra(rng, da, d_min, with_differential, stats);
  switch (rng.below(3)) {
    case 0:  // identity on a single algebra
      return AlgebraMorphism::identity(a);
    default: {
      std::size_t db = 1 + rng.below(max_dim);
      DGAlgebra b = random_dg_algebra(rng, db, d_min, with_differential, stats);
      return random_morphism(rng, a, b, stats);
    }
  }
}

/// Random homogeneous cochain of one flavor and g-degree: every entry
/// allowed by homogeneity is sampled from the sparse coefficient set.
template <typename R>
Cochain<R> random_cochain(Rng& rng, Flavor fl, int gdeg,
                          const AlgebraMorphism& m, unsigned arity_cap) {
  const DGAlgebra& src = fl == Flavor::BB ? m.target : m.source;
  const DGAlgebra& tgt = fl == Flavor::AA ? m.source : m.target;
  Cochain<R> c = Cochain<R>::zero(fl, gdeg, src, tgt);
  for (unsigned n = 1; n <= arity_cap; ++n) {
    int q = c.internal_degree(n);
    for_each_tuple(src.dim(), n, [&](const std::vector<std::size_t>& t) {
      int din = 0;
      for (auto i : t) din += src.basis.degree(i);
      for (std::size_t j = 0; j < tgt.dim(); ++j)
        if (tgt.basis.degree(j) == q + din) {
          Rat v = rng.sparse_coeff();
          if (!v.is_zero()) c.entry(n, t, j) = R(v);
        }
    });
  }
  c.drop_zero_components();
  return c;
}

/// Random homogeneous element of g with all three flavor parts.
template <typename R>
GElement<R> random_gelement(Rng& rng, int gdeg, const AlgebraMorphism& m,
                            unsigned arity_cap) {
  GElement<R> g = GElement<R>::zero(gdeg, m);
  g.a = random_cochain<R>(rng, Flavor::AA, gdeg, m, arity_cap);
  g.b = random_cochain<R>(rng, Flavor::BB, gdeg, m, arity_cap);
  g.p = random_cochain<R>(rng, Flavor::AB, gdeg, m, arity_cap);
  return g;
}

}  // namespace defmorph
