#pragma once

#include <string>
#include <utility>
#include <vector>

#include "defmorph/cohomology.hpp"
#include "defmorph/random_gen.hpp"
#include "defmorph/wordops.hpp"

namespace corpus {

using namespace defmorph;

/// One-dimensional algebra with e.e = 0.
inline DGAlgebra null_algebra() {
  DGAlgebra a;
  a.basis.elements = {{"e", 0}};
  a.product.assign(1, std::vector<Vec>(1, Vec(1)));
  return a;
}

/// Two-dimensional algebra with u.u = v, all other products zero
/// (isomorphic to t Q[t]/(t^3)).
inline DGAlgebra dual_square() {
  DGAlgebra a;
  a.basis.elements = {{"u", 0}, {"v", 0}};
  a.product.assign(2, std::vector<Vec>(2, Vec(2)));
  a.product[0][0][1] = Rat(1);
  return a;
}

/// Two-step dg algebra: x in degree -1, y in degree 0, differential x -> y,
/// zero products.
inline DGAlgebra two_step_dg() {
  DGAlgebra a;
  a.basis.elements = {{"x", -1}, {"y", 0}};
  a.product.assign(2, std::vector<Vec>(2, Vec(2)));
  a.differential = Matrix(2, 2);
  a.differential.at(1, 0) = Rat(1);
  return a;
}

/// Projection t Q[t]/(t^3) -> Q.e sending u to e and v to 0.
inline AlgebraMorphism projection() {
  AlgebraMorphism m;
  m.source = dual_square();
  m.target = null_algebra();
  m.matrix = Matrix(1, 2);
  m.matrix.at(0, 0) = Rat(1);
  return m;
}

inline std::vector<std::pair<std::string, AlgebraMorphism>> morphisms() {
  std::vector<std::pair<std::string, AlgebraMorphism>> out;
  out.emplace_back("null-id", AlgebraMorphism::identity(null_algebra()));
  out.emplace_back("dual-id", AlgebraMorphism::identity(dual_square()));
  out.emplace_back("null-zero",
                   AlgebraMorphism::zero(null_algebra(), null_algebra()));
  out.emplace_back("dual-zero",
                   AlgebraMorphism::zero(dual_square(), dual_square()));
  out.emplace_back("projection", projection());
  return out;
}

/// Gauge element with no morphism component, random AA/BB parts.
inline GElement<Rat> random_gauge_element(Rng& rng, const AlgebraMorphism& m,
                                          unsigned cap) {
  GElement<Rat> h = random_gelement<Rat>(rng, 0, m, cap);
  h.p.comps.clear();
  return h;
}

}  // namespace corpus
