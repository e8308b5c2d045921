#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace defmorph;

namespace {

Cochain<Rat> random_pure(Rng& rng, Flavor fl, const AlgebraMorphism& m) {
  int gdeg = static_cast<int>(rng.below(3));
  return random_cochain<Rat>(rng, fl, gdeg, m, 3);
}

bool allowed_shape(const std::vector<Flavor>& shape) {
  if (shape.size() == 2) {
    if (shape[0] == Flavor::AA && shape[1] == Flavor::AA) return true;
    if (shape[0] == Flavor::BB && shape[1] == Flavor::BB) return true;
    if (shape[0] == Flavor::AB && shape[1] == Flavor::AA) return true;
    if (shape[0] == Flavor::BB && shape[1] == Flavor::AB) return true;
    return false;
  }
  // Longer words: only a morphism-output factor followed by morphism
  // arguments survives.
  if (shape[0] != Flavor::BB) return false;
  for (std::size_t i = 1; i < shape.size(); ++i)
    if (shape[i] != Flavor::AB) return false;
  return true;
}

}  // namespace

TEST_CASE("binary-and-higher operations vanish outside the listed shapes") {
  Rng rng(31);
  GenStats st;
  AlgebraMorphism m = random_morphism_setup(rng, 3, -2, true, st);
  const Flavor flavors[] = {Flavor::AA, Flavor::BB, Flavor::AB};
  for (std::size_t len = 2; len <= 3; ++len) {
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      std::vector<Flavor> shape(len);
      GWord<Rat> word;
      for (std::size_t i = 0; i < len; ++i) {
        shape[i] = flavors[idx[i]];
        word.push_back(random_pure(rng, shape[i], m));
      }
      GElement<Rat> out = pure_d(word, m, 4);
      if (!allowed_shape(shape)) {
        INFO("len " << len << " first flavor " << flavor_name(shape[0]));
        REQUIRE(out.is_zero());
      }
      std::size_t pos = 0;
      while (pos < len && idx[pos] == 2) idx[pos++] = 0;
      if (pos == len) break;
      ++idx[pos];
    }
  }
}

TEST_CASE("the coderivation raises degree by one") {
  Rng rng(32);
  GenStats st;
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 3, -2, true, st);
    std::size_t len = 2 + rng.below(2);
    GWord<Rat> word;
    int gsum = 0;
    const Flavor flavors[] = {Flavor::AA, Flavor::BB, Flavor::AB};
    for (std::size_t i = 0; i < len; ++i) {
      Cochain<Rat> f = random_pure(rng, flavors[rng.below(3)], m);
      gsum += f.gdeg;
      word.push_back(std::move(f));
    }
    GElement<Rat> out = pure_d(word, m, 4);
    if (out.is_zero()) continue;
    REQUIRE(out.gdeg == gsum + 2 - static_cast<int>(len));
  }
}

TEST_CASE("the squared coderivation vanishes on symmetrized words") {
  Rng rng(33);
  GenStats st;
  for (int trial = 0; trial < 15; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 3, -2, true, st);
    std::size_t len = 2 + rng.below(2);
    GWord<Rat> word;
    const Flavor flavors[] = {Flavor::AA, Flavor::BB, Flavor::AB};
    for (std::size_t i = 0; i < len; ++i)
      word.push_back(random_pure(rng, flavors[rng.below(3)], m));
    GElement<Rat> sq = dhat_square_on_symmetrization(word, m, 4);
    INFO("trial " << trial);
    REQUIRE(sq.is_zero());
  }
}

TEST_CASE("structure elements satisfy the Maurer-Cartan equation") {
  for (auto& [name, m] : corpus::morphisms()) {
    INFO(name);
    GElement<Rat> s = structure_element<Rat>(m);
    REQUIRE(mc_full_residual(s, m, 4).is_zero());
  }
  Rng rng(34);
  GenStats st;
  for (int trial = 0; trial < 10; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 3, -2, true, st);
    GElement<Rat> s = structure_element<Rat>(m);
    REQUIRE(mc_full_residual(s, m, 4).is_zero());
  }
}

TEST_CASE("Maurer-Cartan residual equals minus the relation residuals") {
  Rng rng(35);
  GenStats st;
  for (int trial = 0; trial < 10; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 2, -1, true, st);
    GElement<Rat> s = structure_element<Rat>(m);
    GElement<Rat> pert = random_gelement<Rat>(rng, 1, m, 3);
    GElement<Rat> total = s + pert;
    GElement<Rat> mc = mc_full_residual(total, m, 4);
    auto co = ainfty_residuals_coalgebraic(total.a, total.b, total.p, 4);
    Cochain<Rat> da = mc.a + co.r_mu;
    Cochain<Rat> db = mc.b + co.r_nu;
    Cochain<Rat> dp = mc.p + co.r_phi;
    INFO("trial " << trial);
    REQUIRE(da.is_zero());
    REQUIRE(db.is_zero());
    REQUIRE(dp.is_zero());
    // Both directions: flat iff the relations hold.
    REQUIRE(mc.is_zero() == co.is_zero());
  }
}

TEST_CASE("the twisted unary operation squares to zero") {
  Rng rng(36);
  GenStats st;
  for (int trial = 0; trial < 8; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 2, -1, true, st);
    GElement<Rat> base = structure_element<Rat>(m);
    for (int gdeg : {0, 1}) {
      GElement<Rat> y = random_gelement<Rat>(rng, gdeg, m, 3);
      GElement<Rat> dy = twisted_d1(base, y, m, 4);
      GElement<Rat> ddy = twisted_d1(base, dy, m, 4);
      REQUIRE(ddy.is_zero());
    }
  }
}

TEST_CASE("twisted operations agree with their low-arity specializations") {
  Rng rng(39);
  GenStats st;
  AlgebraMorphism m = random_morphism_setup(rng, 2, -1, true, st);
  GElement<Rat> base = structure_element<Rat>(m);
  GElement<Rat> y1 = random_gelement<Rat>(rng, 1, m, 3);
  GElement<Rat> y2 = random_gelement<Rat>(rng, 0, m, 3);
  auto wrap = [&](const Cochain<Rat>& c) {
    GElement<Rat> w = GElement<Rat>::zero(c.gdeg, m);
    if (c.flavor == Flavor::AA)
      w.a = c;
    else if (c.flavor == Flavor::BB)
      w.b = c;
    else
      w.p = c;
    return w;
  };
  for (const Cochain<Rat>* c1 : {&y1.a, &y1.b, &y1.p}) {
    if (c1->is_zero()) continue;
    GElement<Rat> d1a = twisted_pure_d(base, GWord<Rat>{*c1}, m, 4);
    GElement<Rat> d1b = twisted_d1(base, wrap(*c1), m, 4);
    GElement<Rat> diff1 = d1a - d1b;
    REQUIRE(diff1.is_zero());
    for (const Cochain<Rat>* c2 : {&y2.a, &y2.b, &y2.p}) {
      if (c2->is_zero()) continue;
      GElement<Rat> d2a = twisted_pure_d(base, GWord<Rat>{*c1, *c2}, m, 4);
      GElement<Rat> d2b = twisted_d2(base, wrap(*c1), wrap(*c2), m, 4);
      GElement<Rat> diff2 = d2a - d2b;
      REQUIRE(diff2.is_zero());
    }
  }
}

TEST_CASE("the twisted coderivation squares to zero exactly at flat points") {
  Rng rng(40);
  GenStats st;
  const Flavor flavors[] = {Flavor::AA, Flavor::BB, Flavor::AB};
  for (int trial = 0; trial < 6; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 2, -1, true, st);
    GElement<Rat> base = structure_element<Rat>(m);
    std::size_t len = 1 + rng.below(3);
    GWord<Rat> word;
    for (std::size_t i = 0; i < len; ++i)
      word.push_back(random_cochain<Rat>(rng, flavors[rng.below(3)],
                                         static_cast<int>(rng.below(3)), m, 3));
    GElement<Rat> sq = twisted_dhat_square_on_symmetrization(base, word, m, 4);
    REQUIRE(sq.is_zero());
  }
}

TEST_CASE("slice coordinates round trip") {
  Rng rng(37);
  GenStats st;
  AlgebraMorphism m = random_morphism_setup(rng, 2, -1, true, st);
  for (int gdeg : {0, 1, 2}) {
    SliceBasis s = build_slice(m, gdeg, 3);
    GElement<Rat> y = random_gelement<Rat>(rng, gdeg, m, 3);
    Vec coords = slice_coords(s, y, m);
    GElement<Rat> back = slice_element(s, coords, m);
    GElement<Rat> diff = back - y;
    REQUIRE(diff.is_zero());
  }
}

TEST_CASE("arity truncation of the residual is exact") {
  Rng rng(38);
  GenStats st;
  AlgebraMorphism m = random_morphism_setup(rng, 2, -1, true, st);
  GElement<Rat> s = structure_element<Rat>(m);
  GElement<Rat> total = s + random_gelement<Rat>(rng, 1, m, 3);
  GElement<Rat> hi = mc_full_residual(total, m, 5);
  for (unsigned cap = 2; cap <= 4; ++cap) {
    GElement<Rat> lo = mc_full_residual(total, m, cap);
    GElement<Rat> hi_cut = hi;
    hi_cut.a.truncate(cap);
    hi_cut.b.truncate(cap);
    hi_cut.p.truncate(cap);
    GElement<Rat> diff = lo - hi_cut;
    REQUIRE(diff.is_zero());
  }
}
