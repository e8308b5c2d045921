#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace defmorph;
using corpus::dual_square;
using corpus::null_algebra;
using corpus::two_step_dg;

TEST_CASE("suspension dictionary round trip") {
  Rng rng(21);
  GenStats st;
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 3, -2, true, st);
    for (Flavor fl : {Flavor::AA, Flavor::BB, Flavor::AB}) {
      int gdeg = static_cast<int>(rng.below(4)) - 1;
      Cochain<Rat> f = random_cochain<Rat>(rng, fl, gdeg, m, 4);
      Cochain<Rat> back = from_suspended(to_suspended(f));
      Cochain<Rat> diff = back - f;
      REQUIRE(diff.is_zero());
    }
  }
}

TEST_CASE("hochschild_differential on the null algebra vanishes") {
  AlgebraMorphism m = AlgebraMorphism::identity(null_algebra());
  Rng rng(22);
  for (Flavor fl : {Flavor::AA, Flavor::AB}) {
    Cochain<Rat> f = random_cochain<Rat>(rng, fl, 1, m, 3);
    REQUIRE(hochschild_differential(f, m, 4).is_zero());
  }
}

TEST_CASE("hochschild_differential worked example on u.u = v") {
  AlgebraMorphism m = AlgebraMorphism::identity(dual_square());
  // f: u -> u, v -> 0 (arity 1, internal degree 0, so g-degree 0).
  Cochain<Rat> f = Cochain<Rat>::zero(Flavor::AA, 0, m.source, m.source);
  f.entry(1, {0}, 0) = Rat(1);
  Cochain<Rat> hd = hochschild_differential(f, m, 4);
  // HD(f)(u,u) = u f(u) - f(uv) + f(u) u = v + v = 2v.
  auto val = hd.value(2, {0, 0});
  REQUIRE(val[0] == Rat(0));
  REQUIRE(val[1] == Rat(2));
}

TEST_CASE("coderivation_apply Koszul walk") {
  // Odd arity-1 map on a word with odd suspended first factor flips sign on
  // the second position.
  DGAlgebra a = two_step_dg();
  AlgebraMorphism m = AlgebraMorphism::identity(a);
  // f: y -> x, arity 1, internal degree -1 => g-degree -1, odd operator.
  Cochain<Rat> f = Cochain<Rat>::zero(Flavor::AA, -1, a, a);
  f.entry(1, {1}, 0) = Rat(1);
  REQUIRE(f.operator_degree() % 2 != 0);
  // word (y (x) y): suspended degrees (-1, -1), both odd.
  auto out = coderivation_apply(f, {1, 1});
  REQUIRE(out.size() == 2);
  REQUIRE(out.at({0, 1}) == Rat(1));
  REQUIRE(out.at({1, 0}) == Rat(-1));
}

TEST_CASE("coalgebra_morphism_apply decomposition counts") {
  DGAlgebra a = dual_square();
  AlgebraMorphism m = AlgebraMorphism::identity(a);
  Cochain<Rat> g = Cochain<Rat>::zero(Flavor::AB, 1, a, a);
  // Dense arity 1 and 2 components.
  for (std::size_t i = 0; i < 2; ++i) g.entry(1, {i}, i) = Rat(1);
  g.entry(2, {0, 0}, 1) = Rat(1);
  // Word of length 3, out arity 2: compositions (1,2) and (2,1).
  auto out = coalgebra_morphism_apply(g, {0, 0, 0}, 2);
  // (1,2): g1(u) (x) g2(u,u) = u (x) v ; (2,1): g2(u,u) (x) g1(u) = v (x) u.
  REQUIRE(out.size() == 2);
  REQUIRE(out.at({0, 1}) == Rat(1));
  REQUIRE(out.at({1, 0}) == Rat(1));
}

TEST_CASE("hochschild_differential matches the coderivation commutator") {
  // On degree-0 algebras the classical Hochschild differential, transported
  // through the suspension dictionary, is the corestricted commutator with
  // the product coderivation up to one overall sign. (With internal degrees
  // the dictionary acquires component-dependent signs; that regime is
  // covered by the twisted-operation tests instead.)
  Rng rng(23);
  GenStats st;
  for (int trial = 0; trial < 10; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 2, 0, false, st);
    Cochain<Rat> f = random_cochain<Rat>(rng, Flavor::AA, 1, m, 3);
    Cochain<Rat> mu = structure_cochain<Rat>(m.source, Flavor::AA);
    // Commutator core on basis words: (mu-hat f-hat - (-1)^(|f||mu|)
    // f-hat mu-hat) corestricted.
    Cochain<Rat> commutator =
        Cochain<Rat>::zero(Flavor::AA, f.gdeg + 1, m.source, m.source);
    WordSpace w(m.source, 4);
    const int fdeg = f.operator_degree();
    for (const auto& word : w.words) {
      if (word.size() > 4) continue;
      WordSum<Rat> acc;
      for (const auto& [w1, c1] : coderivation_apply(f, word))
        for (const auto& [w2, c2] : coderivation_apply(mu, w1))
          if (w2.size() == 1) add_term(acc, w2, c1 * c2);
      int s = (fdeg % 2 == 0) ? -1 : 1;
      for (const auto& [w1, c1] : coderivation_apply(mu, word))
        for (const auto& [w2, c2] : coderivation_apply(f, w1))
          if (w2.size() == 1) add_term(acc, w2, Rat(s) * c1 * c2);
      for (const auto& [out_w, c] : acc)
        commutator.entry(static_cast<unsigned>(word.size()), word, out_w[0]) +=
            c;
    }
    commutator = from_suspended(commutator);
    commutator.truncate(4);
    Cochain<Rat> hd = hochschild_differential(f, m, 4);
    // The two agree up to the global sign (-1)^(fdeg).
    if (fdeg % 2 != 0) commutator.scale(Rat(-1));
    Cochain<Rat> diff = hd - commutator;
    diff.drop_zero_components();
    INFO("trial " << trial);
    REQUIRE(diff.is_zero());
  }
}

TEST_CASE("relation residuals vanish exactly for honest structures") {
  for (auto& [name, m] : corpus::morphisms()) {
    INFO(name);
    GElement<Rat> s = structure_element<Rat>(m);
    auto res = ainfty_residuals_coalgebraic(s.a, s.b, s.p, 4);
    REQUIRE(res.is_zero());
    auto res2 = ainfty_residuals_printed(s.a, s.b, s.p, 4);
    REQUIRE(res2.is_zero());
  }
}

TEST_CASE("printed signs equal the coalgebraic formulation") {
  Rng rng(24);
  GenStats st;
  for (int trial = 0; trial < 10; ++trial) {
    // Trivial differentials: the printed relations apply as displayed.
    AlgebraMorphism m = random_morphism_setup(rng, 2, -1, false, st);
    GElement<Rat> s = structure_element<Rat>(m);
    GElement<Rat> pert = random_gelement<Rat>(rng, 1, m, 3);
    Cochain<Rat> mu = s.a + pert.a;
    Cochain<Rat> nu = s.b + pert.b;
    Cochain<Rat> phi = s.p + pert.p;
    auto printed = ainfty_residuals_printed(mu, nu, phi, 4);
    auto coalg = ainfty_residuals_coalgebraic(mu, nu, phi, 4);
    Cochain<Rat> da = printed.r_mu - coalg.r_mu;
    Cochain<Rat> db = printed.r_nu - coalg.r_nu;
    Cochain<Rat> dp = printed.r_phi - coalg.r_phi;
    REQUIRE(da.is_zero());
    REQUIRE(db.is_zero());
    REQUIRE(dp.is_zero());
  }
}

TEST_CASE("perturbed multiplication has a nonzero arity-3 residual") {
  AlgebraMorphism m = AlgebraMorphism::identity(dual_square());
  GElement<Rat> s = structure_element<Rat>(m);
  // Add u (x) v -> u to the product: associativity breaks.
  Cochain<Rat> mu = s.a;
  mu.entry(2, {0, 1}, 0) += Rat(1);
  auto res = ainfty_residuals_printed(mu, s.b, s.p, 4);
  REQUIRE_FALSE(res.r_mu.is_zero());
  REQUIRE(res.r_mu.has_arity(3));
}

TEST_CASE("truncation exactness") {
  // The arity <= n output of the residuals with cap n equals the cap-5
  // computation truncated.
  Rng rng(25);
  GenStats st;
  AlgebraMorphism m = random_morphism_setup(rng, 2, -1, true, st);
  GElement<Rat> s = structure_element<Rat>(m);
  GElement<Rat> pert = random_gelement<Rat>(rng, 1, m, 3);
  Cochain<Rat> mu = s.a + pert.a;
  Cochain<Rat> nu = s.b + pert.b;
  Cochain<Rat> phi = s.p + pert.p;
  for (unsigned cap = 2; cap <= 4; ++cap) {
    auto lo = ainfty_residuals_coalgebraic(mu, nu, phi, cap);
    auto hi = ainfty_residuals_coalgebraic(mu, nu, phi, 5);
    hi.r_mu.truncate(cap);
    hi.r_nu.truncate(cap);
    hi.r_phi.truncate(cap);
    Cochain<Rat> da = lo.r_mu - hi.r_mu;
    Cochain<Rat> db = lo.r_nu - hi.r_nu;
    Cochain<Rat> dp = lo.r_phi - hi.r_phi;
    REQUIRE(da.is_zero());
    REQUIRE(db.is_zero());
    REQUIRE(dp.is_zero());
  }
}
