// Acceptance gate: one exact property per criterion, one pass/fail line
// each. All checks are exact rational identities (tolerance zero). Exit
// status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "defmorph/cohomology.hpp"
#include "defmorph/io.hpp"
#include "defmorph/random_gen.hpp"
#include "support.hpp"

using namespace defmorph;

namespace {

int g_failures = 0;

struct Line {
  int number;
  std::string text;
};
std::vector<Line> g_lines;

void report(int number, const std::string& what, bool ok,
            const std::string& detail, double seconds) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "[%d] %-58s %s%s (%.1fs)", number,
                what.c_str(), ok ? "PASS" : "FAIL",
                detail.empty() ? "" : (" " + detail).c_str(), seconds);
  g_lines.push_back({number, buf});
  if (!ok) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

Cochain<Rat> random_pure(Rng& rng, const AlgebraMorphism& m) {
  const Flavor flavors[] = {Flavor::AA, Flavor::BB, Flavor::AB};
  int gdeg = static_cast<int>(rng.below(4)) - 1;
  return random_cochain<Rat>(rng, flavors[rng.below(3)], gdeg, m, 4);
}

}  // namespace

// Criteria 1 and 2 share their trials: 100 random dg-algebra pairs with
// dimension <= 3 and degrees in [-2, 0], random words of length <= 4.
static void criteria_1_2() {
  Timer t;
  Rng rng(101);
  GenStats st;
  int square_bad = 0, degree_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 3, -2, true, st);
    std::size_t len = 2 + rng.below(3);
    GWord<Rat> word;
    int gsum = 0;
    for (std::size_t i = 0; i < len; ++i) {
      Cochain<Rat> f = random_pure(rng, m);
      gsum += f.gdeg;
      word.push_back(std::move(f));
    }
    if (!dhat_square_on_symmetrization(word, m, 4).is_zero()) ++square_bad;
    GElement<Rat> out = pure_d(word, m, 4);
    if (!out.is_zero() && out.gdeg != gsum + 2 - static_cast<int>(len))
      ++degree_bad;
  }
  double el = t.elapsed();
  report(1, "squared coderivation vanishes on 100 random words",
         square_bad == 0, square_bad ? std::to_string(square_bad) + " bad" : "",
         el);
  report(2, "every nonzero bracket output raises degree by one",
         degree_bad == 0, degree_bad ? std::to_string(degree_bad) + " bad" : "",
         0.0);
}

// Criterion 3: 100 random degree-1 elements over Q[t]/(t^4); the
// Maurer-Cartan residual vanishes iff the decoded structure relations hold,
// and the residuals match component-by-component (with the fixed relative
// sign of the dictionary).
static void criterion_3() {
  Timer t;
  Rng rng(103);
  GenStats st;
  const unsigned order = 3;
  int bad = 0, flat_seen = 0, nonflat_seen = 0;
  for (int trial = 0; trial < 100; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 2, -1, true, st);
    GElement<ArtinSeries> total = t_embed(structure_element<Rat>(m), 0, order, m);
    // Mix flat perturbations (order-by-order solver output) with generic
    // ones so both sides of the equivalence appear.
    if (trial % 3 == 0) {
      DeformationSetup su(m, 3);
      for (const auto& v : kernel_basis(su.d12)) {
        MCSolution sol{order, t_embed(slice_element(su.s1, v, m), 1, order, m)};
        if (auto out = extend_to_full_order(sol, 1, su); out.solution) {
          total += out.solution->el;
          break;
        }
      }
    } else {
      for (unsigned k = 1; k <= order; ++k)
        if (rng.below(2) == 0)
          total += t_embed(random_gelement<Rat>(rng, 1, m, 3), k, order, m);
    }
    GElement<ArtinSeries> mc = mc_full_residual(total, m, 3);
    auto co = ainfty_residuals_coalgebraic(total.a, total.b, total.p, 3);
    Cochain<ArtinSeries> da = mc.a + co.r_mu;
    Cochain<ArtinSeries> db = mc.b + co.r_nu;
    Cochain<ArtinSeries> dp = mc.p + co.r_phi;
    if (!da.is_zero() || !db.is_zero() || !dp.is_zero()) ++bad;
    if (mc.is_zero() != co.is_zero()) ++bad;
    (mc.is_zero() ? flat_seen : nonflat_seen)++;
  }
  report(3, "Maurer-Cartan residual matches the structure relations",
         bad == 0 && flat_seen > 0 && nonflat_seen > 0,
         bad ? std::to_string(bad) + " bad"
             : "(" + std::to_string(flat_seen) + " flat, " +
                   std::to_string(nonflat_seen) + " non-flat)",
         t.elapsed());
}

// Criterion 6 first (criterion 4 consumes its solutions): corpus families
// and the two independent tangent-dimension computations.
static std::vector<std::pair<AlgebraMorphism, MCSolution>> criterion_6() {
  Timer t;
  std::vector<std::pair<AlgebraMorphism, MCSolution>> produced;
  bool ok = true;
  std::string detail;

  // Null-algebra flat family: t . (e,e -> e) on both sides extends to order
  // 3 with no correction and no obstruction.
  AlgebraMorphism id_null = AlgebraMorphism::identity(corpus::null_algebra());
  {
    DeformationSetup su(id_null, 4);
    GElement<Rat> y1 = GElement<Rat>::zero(1, id_null);
    y1.a.entry(2, {0, 0}, 0) = Rat(1);
    y1.b.entry(2, {0, 0}, 0) = Rat(1);
    MCSolution sol{3, t_embed(y1, 1, 3, id_null)};
    auto out = extend_to_full_order(sol, 1, su);
    if (!out.solution) {
      ok = false;
      detail = "null-algebra family obstructed";
    } else {
      produced.emplace_back(id_null, *out.solution);
    }
  }

  // Tangent dimension vs cone cohomology in the relevant degree, plus more
  // solver-produced flat families for criterion 4.
  for (auto& [name, m] : corpus::morphisms()) {
    DeformationSetup su(m, 4);
    auto cone = build_cone(m, 4, 0, 3);
    if (tangent_dimension(su) != cone.cohomology_table()[0]) {
      ok = false;
      detail = "dimension mismatch on " + name;
    }
    for (const auto& v : kernel_basis(su.d12)) {
      MCSolution sol{3, t_embed(slice_element(su.s1, v, m), 1, 3, m)};
      if (auto out = extend_to_full_order(sol, 1, su); out.solution) {
        produced.emplace_back(m, *out.solution);
        break;
      }
    }
  }
  report(6, "corpus families extend; the two dimension computations agree",
         ok, ok ? "(" + std::to_string(produced.size()) + " solutions)" : detail,
         t.elapsed());
  return produced;
}

// Criterion 4: every solution from criterion 6 twists the structure, and the
// twisted operations pass the squared-coderivation check.
static void criterion_4(
    const std::vector<std::pair<AlgebraMorphism, MCSolution>>& sols) {
  Timer t;
  Rng rng(104);
  int bad = 0;
  for (const auto& [m, sol] : sols) {
    GElement<ArtinSeries> base =
        t_embed(structure_element<Rat>(m), 0, sol.order, m) + sol.el;
    const Flavor flavors[] = {Flavor::AA, Flavor::BB, Flavor::AB};
    for (int w = 0; w < 4; ++w) {
      std::size_t len = 1 + rng.below(2);
      GWord<ArtinSeries> word;
      for (std::size_t i = 0; i < len; ++i) {
        GElement<Rat> y = random_gelement<Rat>(
            rng, static_cast<int>(rng.below(3)), m, 3);
        GElement<ArtinSeries> ys = t_embed(y, rng.below(2), sol.order, m);
        const Cochain<ArtinSeries>* pick = nullptr;
        std::size_t start = rng.below(3);
        const Cochain<ArtinSeries>* parts[] = {&ys.a, &ys.b, &ys.p};
        for (std::size_t j = 0; j < 3 && !pick; ++j)
          if (!parts[(start + j) % 3]->is_zero()) pick = parts[(start + j) % 3];
        if (!pick) {
          --i;
          continue;
        }
        word.push_back(*pick);
      }
      if (!twisted_dhat_square_on_symmetrization(base, word, m, 3).is_zero())
        ++bad;
    }
  }
  report(4, "twisted brackets pass the squared-coderivation check", bad == 0,
         bad ? std::to_string(bad) + " bad" : "", t.elapsed());
}

// Criterion 5: the gauge flow preserves flatness and agrees with the
// conjugation oracle on 50 random (h, solution) pairs, truncated at t^4.
static void criterion_5() {
  Timer t;
  Rng rng(105);
  GenStats st;
  const unsigned order = 3, cap = 3;
  int done = 0, bad = 0;
  while (done < 50) {
    AlgebraMorphism m = random_morphism_setup(rng, 2, -1, true, st);
    DeformationSetup su(m, cap);
    MCSolution flat;
    bool have = false;
    for (const auto& v : kernel_basis(su.d12)) {
      MCSolution sol{order, t_embed(slice_element(su.s1, v, m), 1, order, m)};
      if (auto out = extend_to_full_order(sol, 1, su); out.solution) {
        flat = *out.solution;
        have = true;
        break;
      }
    }
    if (!have) continue;
    for (int rep = 0; rep < 3 && done < 50; ++rep, ++done) {
      GElement<ArtinSeries> h = zero_series(0, order, m);
      for (unsigned k = 1; k <= 2; ++k)
        h += t_embed(corpus::random_gauge_element(rng, m, cap), k, order, m);
      auto moved = gauge_exp(h, flat.el, su, order);
      auto res = mc_residual(moved, t_embed(su.base, 0, order, m), m, cap);
      if (!res.is_zero()) ++bad;
      GElement<ArtinSeries> total = t_embed(su.base, 0, order, m) + flat.el;
      auto conj = conjugated_structure(h, total, m, cap);
      GElement<ArtinSeries> expect = t_embed(su.base, 0, order, m) + moved;
      GElement<ArtinSeries> dc = conj - expect;
      if (!dc.is_zero()) ++bad;
    }
  }
  report(5, "gauge flow preserves flatness and matches conjugation", bad == 0,
         bad ? std::to_string(bad) + " bad" : "", t.elapsed());
}

// Criterion 7: cohomology tables of the cone complex and the comparison
// complex agree on the corpus and on 50 random validated morphisms.
static void criterion_7() {
  Timer t;
  int bad = 0;
  for (auto& [name, m] : corpus::morphisms())
    if (build_cone(m, 4, 0, 3).cohomology_table() !=
        build_gs(m, 4, 0, 3).cohomology_table())
      ++bad;
  Rng rng(107);
  GenStats st;
  for (int trial = 0; trial < 50; ++trial) {
    AlgebraMorphism m = random_morphism_setup(rng, 3, 0, false, st);
    if (build_cone(m, 4, 0, 3).cohomology_table() !=
        build_gs(m, 4, 0, 3).cohomology_table())
      ++bad;
  }
  report(7, "cone and comparison cohomology tables agree", bad == 0,
         bad ? std::to_string(bad) + " bad" : "", t.elapsed());
}

// Criterion 8: the induced binary operation on cohomology classes does not
// depend on the chosen cocycle representatives.
static void criterion_8() {
  Timer t;
  Rng rng(108);
  int bad = 0, checked = 0;
  for (auto& [name, m] : corpus::morphisms()) {
    DeformationSetup su(m, 4);
    auto kb = kernel_basis(su.d12);
    if (kb.empty() || su.s0.dim() == 0) continue;
    for (int pair = 0; pair < 3; ++pair) {
      const Vec& y1 = kb[rng.below(kb.size())];
      const Vec& y2 = kb[rng.below(kb.size())];
      Vec cls = cohomology_bracket_class(su, y1, y2);
      Vec h1(su.s0.dim()), h2(su.s0.dim());
      for (auto& x : h1) x = rng.sparse_coeff();
      for (auto& x : h2) x = rng.sparse_coeff();
      Vec s1 = su.d01.apply(h1), s2 = su.d01.apply(h2);
      Vec y1s = y1, y2s = y2;
      for (std::size_t i = 0; i < y1s.size(); ++i) {
        y1s[i] += s1[i];
        y2s[i] += s2[i];
      }
      if (cohomology_bracket_class(su, y1s, y2s) != cls) ++bad;
      ++checked;
    }
  }
  report(8, "bracket classes are representative-independent",
         bad == 0 && checked > 0, bad ? std::to_string(bad) + " bad" : "",
         t.elapsed());
}

int main() {
  criteria_1_2();
  criterion_3();
  auto sols = criterion_6();
  criterion_4(sols);
  criterion_5();
  criterion_7();
  criterion_8();
  std::sort(g_lines.begin(), g_lines.end(),
            [](const Line& a, const Line& b) { return a.number < b.number; });
  for (const auto& l : g_lines) std::printf("%s\n", l.text.c_str());
  return g_failures;
}
