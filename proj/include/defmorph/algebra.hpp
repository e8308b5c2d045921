#pragma once

#include <string>
#include <vector>

#include "defmorph/graded.hpp"
#include "defmorph/matrix.hpp"

namespace defmorph {

/// Violations found while validating an algebra or morphism; empty = valid.
struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void fail(std::string msg) { violations.push_back(std::move(msg)); }
};

/// Finite-dimensional graded associative algebra by structure constants,
/// with an optional differential of degree +1. Non-unital throughout: no
/// unit is assumed, stored, or used.
struct DGAlgebra {
  GradedBasis basis;
  /// product[i][j] = coefficient vector of e_i * e_j over the basis.
  std::vector<std::vector<Vec>> product;
  /// differential: column j = coefficients of delta(e_j); may be 0x0 for
  /// a trivial differential.
  Matrix differential;

  std::size_t dim() const { return basis.dim(); }

  bool has_differential() const {
    return differential.rows() == dim() && !differential.is_zero();
  }

  static DGAlgebra zero_dim() { return DGAlgebra{}; }

  Vec mul(std::size_t i, std::size_t j) const { return product[i][j]; }

  Vec mul(const Vec& x, const Vec& y) const {
    Vec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j].is_zero()) continue;
        const Vec& p = product[i][j];
        for (std::size_t k = 0; k < dim(); ++k)
          if (!p[k].is_zero()) r[k] += x[i] * y[j] * p[k];
      }
    }
    return r;
  }

  Vec diff(const Vec& x) const {
    if (differential.rows() != dim()) return Vec(dim());
    return differential.apply(x);
  }

  Vec diff_basis(std::size_t j) const {
    Vec r(dim());
    if (differential.rows() != dim()) return r;
    for (std::size_t i = 0; i < dim(); ++i) r[i] = differential.at(i, j);
    return r;
  }
};

namespace detail {

inline std::string entry_name(const DGAlgebra& a, std::size_t i) {
  return a.basis.elements[i].name;
}

}  // namespace detail

/// Checks every axiom of the ambient category: product homogeneity of
/// degree 0, associativity on all basis triples, differential degree +1,
/// delta^2 = 0, and the Leibniz rule on all basis pairs. The report lists
/// each violated identity.
inline ValidationReport validate_algebra(const DGAlgebra& a) {
  ValidationReport rep;
  const std::size_t n = a.dim();
  try {
    a.basis.validate();
  } catch (const std::exception& e) {
    rep.fail(e.what());
    return rep;
  }
  if (a.product.size() != n) {
    rep.fail("product tensor has wrong shape");
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a.product[i].size() != n) {
      rep.fail("product tensor has wrong shape");
      return rep;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (a.product[i][j].size() != n) {
        rep.fail("product tensor has wrong shape");
        return rep;
      }
  }
  bool has_diff = a.differential.rows() > 0 || a.differential.cols() > 0;
  if (has_diff && (a.differential.rows() != n || a.differential.cols() != n)) {
    rep.fail("differential matrix has wrong shape");
    return rep;
  }

  // Product is degree 0.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!a.product[i][j][k].is_zero() &&
            a.basis.degree(k) != a.basis.degree(i) + a.basis.degree(j))
          rep.fail("product not degree 0 at (" + detail::entry_name(a, i) +
                   ", " + detail::entry_name(a, j) + ") -> " +
                   detail::entry_name(a, k));

  // Associativity.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec ei(n), ek(n);
        ei[i] = Rat(1);
        ek[k] = Rat(1);
        Vec lhs = a.mul(a.mul(ei, [&] {
                          Vec ej(n);
                          ej[j] = Rat(1);
                          return ej;
                        }()),
                        ek);
        Vec rhs = a.mul(ei, a.mul([&] {
                          Vec ej(n);
                          ej[j] = Rat(1);
                          return ej;
                        }(),
                                  ek));
        for (std::size_t t = 0; t < n; ++t)
          if (lhs[t] != rhs[t]) {
            rep.fail("associativity fails on (" + detail::entry_name(a, i) +
                     ", " + detail::entry_name(a, j) + ", " +
                     detail::entry_name(a, k) + ")");
            break;
          }
      }

  if (has_diff) {
    // Degree +1.
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (!a.differential.at(i, j).is_zero() &&
            a.basis.degree(i) != a.basis.degree(j) + 1)
          rep.fail("differential not degree +1 at " +
                   detail::entry_name(a, j) + " -> " +
                   detail::entry_name(a, i));
    // delta^2 = 0.
    Matrix sq = a.differential * a.differential;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!sq.at(i, j).is_zero())
          rep.fail("delta^2 != 0 at entry (" + detail::entry_name(a, i) +
                   ", " + detail::entry_name(a, j) + ")");
    // Leibniz: delta(xy) = delta(x)y + (-1)^x x delta(y).
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec ei(n), ej(n);
        ei[i] = Rat(1);
        ej[j] = Rat(1);
        Vec lhs = a.diff(a.mul(ei, ej));
        Vec rhs = a.mul(a.diff_basis(i), ej);
        Vec term = a.mul(ei, a.diff_basis(j));
        int sgn = (a.basis.degree(i) % 2 == 0) ? 1 : -1;
        for (std::size_t t = 0; t < n; ++t)
          rhs[t] += (sgn == 1 ? term[t] : -term[t]);
        for (std::size_t t = 0; t < n; ++t)
          if (lhs[t] != rhs[t]) {
            rep.fail("Leibniz fails on (" + detail::entry_name(a, i) + ", " +
                     detail::entry_name(a, j) + ")");
            break;
          }
      }
  }
  return rep;
}

/// Degree-0 multiplicative chain map gamma: A -> B, stored as a matrix
/// (column j = gamma(e_j) in B's basis).
struct AlgebraMorphism {
  DGAlgebra source;
  DGAlgebra target;
  Matrix matrix;

  Vec apply(const Vec& x) const { return matrix.apply(x); }
  Vec apply_basis(std::size_t j) const {
    Vec r(target.dim());
    for (std::size_t i = 0; i < target.dim(); ++i) r[i] = matrix.at(i, j);
    return r;
  }

  static AlgebraMorphism identity(const DGAlgebra& a) {
    AlgebraMorphism m{a, a, Matrix(a.dim(), a.dim())};
    for (std::size_t i = 0; i < a.dim(); ++i) m.matrix.at(i, i) = Rat(1);
    return m;
  }

  static AlgebraMorphism zero(const DGAlgebra& a, const DGAlgebra& b) {
    return AlgebraMorphism{a, b, Matrix(b.dim(), a.dim())};
  }
};

inline ValidationReport validate_morphism(const AlgebraMorphism& m) {
  ValidationReport rep = validate_algebra(m.source);
  ValidationReport rt = validate_algebra(m.target);
  for (auto& v : rt.violations) rep.fail("target: " + v);
  const std::size_t na = m.source.dim(), nb = m.target.dim();
  if (m.matrix.rows() != nb || m.matrix.cols() != na) {
    rep.fail("morphism matrix has wrong shape");
    return rep;
  }
  for (std::size_t j = 0; j < na; ++j)
    for (std::size_t i = 0; i < nb; ++i)
      if (!m.matrix.at(i, j).is_zero() &&
          m.target.basis.degree(i) != m.source.basis.degree(j))
        rep.fail("morphism not degree 0 at " +
                 m.source.basis.elements[j].name + " -> " +
                 m.target.basis.elements[i].name);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      Vec ei(na), ej(na);
      ei[i] = Rat(1);
      ej[j] = Rat(1);
      Vec lhs = m.apply(m.source.mul(ei, ej));
      Vec rhs = m.target.mul(m.apply(ei), m.apply(ej));
      for (std::size_t t = 0; t < nb; ++t)
        if (lhs[t] != rhs[t]) {
          rep.fail("gamma(xy) != gamma(x)gamma(y) on (" +
                   m.source.basis.elements[i].name + ", " +
                   m.source.basis.elements[j].name + ")");
          break;
        }
    }
  for (std::size_t j = 0; j < na; ++j) {
    Vec lhs = m.apply(m.source.diff_basis(j));
    Vec ej(na);
    ej[j] = Rat(1);
    Vec rhs = m.target.diff(m.apply(ej));
    for (std::size_t t = 0; t < nb; ++t)
      if (lhs[t] != rhs[t]) {
        rep.fail("gamma does not commute with the differentials at " +
                 m.source.basis.elements[j].name);
        break;
      }
  }
  return rep;
}

}  // namespace defmorph
