#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "defmorph/algebra.hpp"
#include "defmorph/graded.hpp"

namespace defmorph {

enum class Flavor { AA, BB, AB };

inline const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::AA: return "alpha";
    case Flavor::BB: return "beta";
    default: return "phi";
  }
}

/// Calls fn on every index tuple of the given arity over [0, dim).
inline void for_each_tuple(std::size_t dim, unsigned arity,
                           const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (dim == 0 && arity > 0) return;
  std::vector<std::size_t> t(arity, 0);
  if (arity == 0) {
    fn(t);
    return;
  }
  while (true) {
    fn(t);
    unsigned k = arity;
    while (k > 0) {
      if (++t[k - 1] < dim) break;
      t[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
}

inline std::size_t tuple_index(std::size_t dim, const std::vector<std::size_t>& t,
                               std::size_t begin, std::size_t end) {
  std::size_t idx = 0;
  for (std::size_t k = begin; k < end; ++k) idx = idx * dim + t[k];
  return idx;
}

/// Arity-graded family of multilinear maps between the underlying graded
/// spaces of two algebras, stored as dense UNSUSPENDED coefficient tensors.
/// A cochain is homogeneous of one g-degree; the internal degree of the
/// arity-n component follows from flavor and g-degree:
///   AA/BB: q = gdeg + 1 - n,   AB (housing s^-1 gamma): q = gdeg - n.
/// All coalgebraic operations route through the suspension dictionary
/// (the sign eps = (n-1)x_1 + (n-2)x_2 + ... + x_{n-1}).
template <typename R>
struct Cochain {
  Flavor flavor = Flavor::AA;
  int gdeg = 0;
  std::vector<int> src_deg;  // degrees of the source basis
  std::vector<int> tgt_deg;  // degrees of the target basis
  /// comps[n]: flat tensor of size src_dim^n * tgt_dim, row = input tuple.
  std::map<unsigned, std::vector<R>> comps;

  std::size_t sdim() const { return src_deg.size(); }
  std::size_t tdim() const { return tgt_deg.size(); }

  int internal_degree(unsigned arity) const {
    return flavor == Flavor::AB ? gdeg - static_cast<int>(arity)
                                : gdeg + 1 - static_cast<int>(arity);
  }

  /// Degree of the cochain viewed as a map between suspended tensor spaces
  /// (for AB this is the degree of gamma itself, one less than gdeg).
  int operator_degree() const { return flavor == Flavor::AB ? gdeg - 1 : gdeg; }

  bool has_arity(unsigned n) const {
    auto it = comps.find(n);
    return it != comps.end();
  }

  std::vector<R>& ensure(unsigned n) {
    auto it = comps.find(n);
    if (it == comps.end()) {
      std::size_t rows = 1;
      for (unsigned k = 0; k < n; ++k) rows *= sdim();
      it = comps.emplace(n, std::vector<R>(rows * tdim())).first;
    }
    return it->second;
  }

  R& entry(unsigned n, const std::vector<std::size_t>& tuple, std::size_t j) {
    return ensure(n)[tuple_index(sdim(), tuple, 0, tuple.size()) * tdim() + j];
  }

  /// Unsuspended value on a basis tuple.
  std::vector<R> value(unsigned n, const std::vector<std::size_t>& tuple) const {
    std::vector<R> out(tdim());
    auto it = comps.find(n);
    if (it == comps.end()) return out;
    std::size_t row = tuple_index(sdim(), tuple, 0, tuple.size());
    for (std::size_t j = 0; j < tdim(); ++j) out[j] = it->second[row * tdim() + j];
    return out;
  }

  /// Suspended value: the arity-n component of s . f_n . s_n^{-1} on the
  /// suspended basis word, as coefficients over the (suspended) target basis.
  std::vector<R> susp_value(unsigned n, const std::vector<std::size_t>& tuple) const {
    std::vector<R> out = value(n, tuple);
    std::vector<int> degs(n);
    for (unsigned k = 0; k < n; ++k) degs[k] = src_deg[tuple[k]];
    if (n > 0 && suspension_sign(degs) < 0)
      for (auto& x : out) x = -x;
    return out;
  }

  bool is_zero() const {
    for (const auto& [n, tensor] : comps)
      for (const auto& x : tensor)
        if (!x.is_zero()) return false;
    return true;
  }

  void drop_zero_components() {
    for (auto it = comps.begin(); it != comps.end();) {
      bool z = true;
      for (const auto& x : it->second)
        if (!x.is_zero()) {
          z = false;
          break;
        }
      it = z ? comps.erase(it) : std::next(it);
    }
  }

  /// Zeroes every component of arity > cap (truncation rule: outputs at
  /// arity <= cap never depend on inputs of arity > cap).
  void truncate(unsigned cap) {
    for (auto it = comps.begin(); it != comps.end();)
      it = (it->first > cap) ? comps.erase(it) : std::next(it);
  }

  /// Entries must respect homogeneity: deg(out) = q + sum deg(in).
  ValidationReport check_homogeneous() const {
    ValidationReport rep;
    for (const auto& [n, tensor] : comps) {
      int q = internal_degree(n);
      for_each_tuple(sdim(), n, [&](const std::vector<std::size_t>& t) {
        int din = 0;
        for (auto i : t) din += src_deg[i];
        std::size_t row = tuple_index(sdim(), t, 0, t.size());
        for (std::size_t j = 0; j < tdim(); ++j)
          if (!tensor[row * tdim() + j].is_zero() && tgt_deg[j] != q + din)
            rep.fail("inhomogeneous entry in " +
                     std::string(flavor_name(flavor)) + " arity " +
                     std::to_string(n));
      });
    }
    return rep;
  }

  Cochain& operator+=(const Cochain& o) {
    for (const auto& [n, tensor] : o.comps) {
      auto& mine = ensure(n);
      for (std::size_t i = 0; i < tensor.size(); ++i) mine[i] += tensor[i];
    }
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    for (const auto& [n, tensor] : o.comps) {
      auto& mine = ensure(n);
      for (std::size_t i = 0; i < tensor.size(); ++i) mine[i] -= tensor[i];
    }
    return *this;
  }
  Cochain& scale(const R& s) {
    for (auto& [n, tensor] : comps)
      for (auto& x : tensor) x *= s;
    return *this;
  }

  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }

  static Cochain zero(Flavor fl, int gdeg, const DGAlgebra& src,
                      const DGAlgebra& tgt) {
    Cochain c;
    c.flavor = fl;
    c.gdeg = gdeg;
    c.src_deg.resize(src.dim());
    for (std::size_t i = 0; i < src.dim(); ++i) c.src_deg[i] = src.basis.degree(i);
    c.tgt_deg.resize(tgt.dim());
    for (std::size_t i = 0; i < tgt.dim(); ++i) c.tgt_deg[i] = tgt.basis.degree(i);
    return c;
  }
};

/// Cochain with entries transformed by fn (possibly changing the scalar type).
template <typename S, typename R, typename Fn>
Cochain<S> map_entries(const Cochain<R>& c, Fn&& fn) {
  Cochain<S> out;
  out.flavor = c.flavor;
  out.gdeg = c.gdeg;
  out.src_deg = c.src_deg;
  out.tgt_deg = c.tgt_deg;
  for (const auto& [n, tensor] : c.comps) {
    auto& t = out.comps[n];
    t.resize(tensor.size());
    for (std::size_t i = 0; i < tensor.size(); ++i) t[i] = fn(tensor[i]);
  }
  return out;
}

/// The suspension dictionary as explicit tensors: entries of the returned
/// cochain are the SUSPENDED-map tables. Round-trips with from_suspended.
template <typename R>
Cochain<R> to_suspended(const Cochain<R>& c) {
  Cochain<R> out = c;
  for (auto& [n, tensor] : out.comps) {
    const unsigned arity = n;
    for_each_tuple(out.sdim(), arity, [&](const std::vector<std::size_t>& t) {
      std::vector<int> degs(arity);
      for (unsigned k = 0; k < arity; ++k) degs[k] = out.src_deg[t[k]];
      if (arity > 0 && suspension_sign(degs) < 0) {
        std::size_t row = tuple_index(out.sdim(), t, 0, t.size());
        for (std::size_t j = 0; j < out.tdim(); ++j)
          tensor[row * out.tdim() + j] = -tensor[row * out.tdim() + j];
      }
    });
  }
  return out;
}

template <typename R>
Cochain<R> from_suspended(const Cochain<R>& c) {
  return to_suspended(c);  // the dictionary sign is an involution
}

/// Formal sum of tensor words with R coefficients (words = basis index
/// sequences in T(sA) or T(sB)).
template <typename R>
using WordSum = std::map<std::vector<std::size_t>, R>;

template <typename R>
void add_term(WordSum<R>& s, const std::vector<std::size_t>& w, const R& c) {
  if (c.is_zero()) return;
  auto it = s.find(w);
  if (it == s.end())
    s.emplace(w, c);
  else {
    it->second += c;
    if (it->second.is_zero()) s.erase(it);
  }
}

namespace detail {

template <typename R>
int susp_word_degree_sum(const Cochain<R>& f, const std::vector<std::size_t>& w,
                         std::size_t begin, std::size_t end) {
  int s = 0;
  for (std::size_t k = begin; k < end; ++k) s += f.src_deg[w[k]] - 1;
  return s;
}

}  // namespace detail

/// The coderivation f-hat of T(sA) (or T(sB)) generated by an AA/BB cochain,
/// applied to a suspended basis word. Sum over contiguous positions, Koszul
/// sign from moving the operator past the suspended prefix.
template <typename R>
WordSum<R> coderivation_apply(const Cochain<R>& f,
                              const std::vector<std::size_t>& word) {
  if (f.flavor == Flavor::AB)
    throw std::invalid_argument("coderivation_apply: AB cochain");
  WordSum<R> out;
  const std::size_t n = word.size();
  const int opdeg = f.operator_degree();
  for (unsigned k = 1; k <= n; ++k) {
    if (!f.has_arity(k)) continue;
    for (std::size_t p = 0; p + k <= n; ++p) {
      int pre = detail::susp_word_degree_sum(f, word, 0, p);
      int sign = ((opdeg * pre) % 2 == 0) ? 1 : -1;
      std::vector<std::size_t> block(word.begin() + p, word.begin() + p + k);
      auto val = f.susp_value(k, block);
      for (std::size_t j = 0; j < f.tdim(); ++j) {
        if (val[j].is_zero()) continue;
        std::vector<std::size_t> w;
        w.reserve(n - k + 1);
        w.insert(w.end(), word.begin(), word.begin() + p);
        w.push_back(j);
        w.insert(w.end(), word.begin() + p + k, word.end());
        add_term(out, w, sign == 1 ? val[j] : -val[j]);
      }
    }
  }
  return out;
}

/// The length-`out_arity` corestriction of the coalgebra morphism generated
/// by an AB cochain: sum over ordered decompositions of the word into
/// `out_arity` contiguous nonempty blocks, one component per block, with
/// Koszul signs from moving the later copies of the map past earlier blocks.
template <typename R>
WordSum<R> coalgebra_morphism_apply(const Cochain<R>& g,
                                    const std::vector<std::size_t>& word,
                                    unsigned out_arity) {
  if (g.flavor != Flavor::AB)
    throw std::invalid_argument("coalgebra_morphism_apply: need AB cochain");
  WordSum<R> out;
  const std::size_t n = word.size();
  if (out_arity == 0 || out_arity > n) return out;
  const int opdeg = g.operator_degree();
  // Enumerate compositions n = k_1 + ... + k_r, k_i >= 1.
  std::vector<unsigned> ks(out_arity, 1);
  auto emit = [&](const std::vector<unsigned>& parts) {
    // Koszul: sum_{t<u} |g| * sdeg(block_t)  (all components share |g|).
    int e = 0;
    std::size_t pos = 0;
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (auto k : parts) {
      spans.emplace_back(pos, pos + k);
      pos += k;
    }
    for (std::size_t u = 1; u < spans.size(); ++u)
      e += opdeg * detail::susp_word_degree_sum(g, word, 0, spans[u].first);
    int sign = (e % 2 == 0) ? 1 : -1;
    // Tensor the per-block values.
    std::vector<std::pair<std::vector<std::size_t>, R>> acc;
    acc.emplace_back(std::vector<std::size_t>{}, R(sign));
    for (auto [b, ee] : spans) {
      std::vector<std::size_t> block(word.begin() + b, word.begin() + ee);
      auto val = g.susp_value(static_cast<unsigned>(ee - b), block);
      std::vector<std::pair<std::vector<std::size_t>, R>> next;
      for (auto& [w, c] : acc)
        for (std::size_t j = 0; j < g.tdim(); ++j) {
          if (val[j].is_zero()) continue;
          auto w2 = w;
          w2.push_back(j);
          next.emplace_back(std::move(w2), c * val[j]);
        }
      acc = std::move(next);
      if (acc.empty()) return;
    }
    for (auto& [w, c] : acc) add_term(out, w, c);
  };
  // Generate compositions recursively.
  std::vector<unsigned> parts(out_arity);
  auto rec = [&](auto&& self, std::size_t slot, unsigned left) -> void {
    if (slot + 1 == out_arity) {
      if (left >= 1) {
        parts[slot] = left;
        emit(parts);
      }
      return;
    }
    for (unsigned k = 1; left >= k + (out_arity - slot - 1); ++k) {
      parts[slot] = k;
      self(self, slot + 1, left - k);
    }
  };
  rec(rec, 0, static_cast<unsigned>(n));
  return out;
}

/// Classical Hochschild differential, with the A-bimodule structure on B
/// through gamma for AB-flavored cochains, plus the internal-differential
/// commutator term when the algebras are dg:
///   HD(f)(a_1..a_{n+1}) = a_1 f(a_2..) + sum (-1)^i f(.. a_i a_{i+1} ..)
///                         + (-1)^{n+1} f(..a_n) a_{n+1}
///   (outer products through gamma for flavor AB), and
///   [delta, f] = delta f(..) - (-1)^{q+n-1} sum (-1)^{a_1+..+a_{i-1}}
///                f(.., delta a_i, ..).
template <typename R>
Cochain<R> hochschild_differential(const Cochain<R>& f,
                                   const AlgebraMorphism& context,
                                   unsigned arity_cap) {
  const DGAlgebra& src = f.flavor == Flavor::BB ? context.target : context.source;
  const DGAlgebra& tgt = f.flavor == Flavor::AA ? context.source : context.target;
  Cochain<R> out = Cochain<R>::zero(f.flavor, f.gdeg + 1, src, tgt);
  // The output keeps the internal degree of each input component; with the
  // AB/AA gdeg bookkeeping this is gdeg+1 for the product terms. The
  // commutator term raises the internal degree instead and lands in the
  // same g-degree.
  auto outer_left = [&](std::size_t a, const std::vector<R>& v) {
    // product a * v in the target, with gamma applied to a for flavor AB
    Vec av;
    if (f.flavor == Flavor::AB)
      av = context.apply_basis(a);
    else {
      av.assign(tgt.dim(), Rat(0));
      av[a] = Rat(1);
    }
    std::vector<R> r(tgt.dim());
    for (std::size_t i = 0; i < tgt.dim(); ++i) {
      if (av[i].is_zero()) continue;
      for (std::size_t j = 0; j < tgt.dim(); ++j) {
        if (v[j].is_zero()) continue;
        const Vec& p = tgt.mul(i, j);
        for (std::size_t k = 0; k < tgt.dim(); ++k)
          if (!p[k].is_zero()) r[k] += v[j] * R(av[i] * p[k]);
      }
    }
    return r;
  };
  auto outer_right = [&](const std::vector<R>& v, std::size_t a) {
    Vec av;
    if (f.flavor == Flavor::AB)
      av = context.apply_basis(a);
    else {
      av.assign(tgt.dim(), Rat(0));
      av[a] = Rat(1);
    }
    std::vector<R> r(tgt.dim());
    for (std::size_t j = 0; j < tgt.dim(); ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < tgt.dim(); ++i) {
        if (av[i].is_zero()) continue;
        const Vec& p = tgt.mul(j, i);
        for (std::size_t k = 0; k < tgt.dim(); ++k)
          if (!p[k].is_zero()) r[k] += v[j] * R(av[i] * p[k]);
      }
    }
    return r;
  };

  for (const auto& [m, tensor] : f.comps) {
    const unsigned n = m;
    // Product terms: arity n -> n+1 (dropped past the arity cap; outputs at
    // arity <= cap never depend on them).
    if (n + 1 <= arity_cap)
      for_each_tuple(src.dim(), n + 1, [&](const std::vector<std::size_t>& t) {
      std::vector<R> acc(tgt.dim());
      {  // a_1 . f(a_2 .. a_{n+1})
        std::vector<std::size_t> rest(t.begin() + 1, t.end());
        auto v = f.value(n, rest);
        auto term = outer_left(t[0], v);
        for (std::size_t k = 0; k < tgt.dim(); ++k) acc[k] += term[k];
      }
      for (unsigned i = 1; i <= n; ++i) {  // (-1)^i f(.., a_i a_{i+1}, ..)
        const Vec& p = src.mul(t[i - 1], t[i]);
        for (std::size_t c = 0; c < src.dim(); ++c) {
          if (p[c].is_zero()) continue;
          std::vector<std::size_t> merged;
          merged.reserve(n);
          merged.insert(merged.end(), t.begin(), t.begin() + (i - 1));
          merged.push_back(c);
          merged.insert(merged.end(), t.begin() + i + 1, t.end());
          auto v = f.value(n, merged);
          int sign = (i % 2 == 0) ? 1 : -1;
          for (std::size_t k = 0; k < tgt.dim(); ++k)
            acc[k] += (sign == 1 ? v[k] : -v[k]) * R(p[c]);
        }
      }
      {  // (-1)^{n+1} f(a_1 .. a_n) . a_{n+1}
        std::vector<std::size_t> head(t.begin(), t.end() - 1);
        auto v = f.value(n, head);
        auto term = outer_right(v, t[n]);
        int sign = ((n + 1) % 2 == 0) ? 1 : -1;
        for (std::size_t k = 0; k < tgt.dim(); ++k)
          acc[k] += sign == 1 ? term[k] : -term[k];
      }
      for (std::size_t k = 0; k < tgt.dim(); ++k)
        if (!acc[k].is_zero()) out.entry(n + 1, t, k) += acc[k];
    });
    // Internal-differential commutator term, same arity.
    bool any_diff = src.has_differential() || tgt.has_differential();
    if (any_diff) {
      int fdeg = f.internal_degree(n) + static_cast<int>(n) - 1;
      for_each_tuple(src.dim(), n, [&](const std::vector<std::size_t>& t) {
        std::vector<R> acc(tgt.dim());
        {  // delta_target(f(t))
          auto v = f.value(n, t);
          for (std::size_t j = 0; j < tgt.dim(); ++j) {
            if (v[j].is_zero()) continue;
            Vec dv = tgt.diff_basis(j);
            for (std::size_t k = 0; k < tgt.dim(); ++k)
              if (!dv[k].is_zero()) acc[k] += v[j] * R(dv[k]);
          }
        }
        // -(-1)^{|f|} sum_i (-1)^{a_1+..+a_{i-1}} f(.., delta a_i, ..)
        int base = (fdeg % 2 == 0) ? 1 : -1;
        int prefix = 0;
        for (unsigned i = 0; i < n; ++i) {
          Vec da = src.diff_basis(t[i]);
          int sgn = -base * (((prefix % 2) == 0) ? 1 : -1);
          for (std::size_t c = 0; c < src.dim(); ++c) {
            if (da[c].is_zero()) continue;
            auto t2 = t;
            t2[i] = c;
            auto v = f.value(n, t2);
            for (std::size_t k = 0; k < tgt.dim(); ++k)
              if (!v[k].is_zero())
                acc[k] += (sgn == 1 ? v[k] : -v[k]) * R(da[c]);
          }
          prefix += src.basis.degree(t[i]);
        }
        for (std::size_t k = 0; k < tgt.dim(); ++k)
          if (!acc[k].is_zero()) out.entry(n, t, k) += acc[k];
      });
    }
  }
  out.drop_zero_components();
  return out;
}

/// The structure of an algebra packaged as an AA/BB cochain of g-degree 1:
/// arity 1 = the differential, arity 2 = the product.
template <typename R>
Cochain<R> structure_cochain(const DGAlgebra& a, Flavor fl) {
  Cochain<R> c = Cochain<R>::zero(fl, 1, a, a);
  if (a.has_differential())
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Vec d = a.diff_basis(j);
      for (std::size_t i = 0; i < a.dim(); ++i)
        if (!d[i].is_zero()) c.entry(1, {j}, i) = R(d[i]);
    }
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vec& p = a.mul(i, j);
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!p[k].is_zero()) c.entry(2, {i, j}, k) = R(p[k]);
    }
  c.drop_zero_components();
  return c;
}

/// An algebra morphism as the arity-1 component of an AB cochain of
/// g-degree 1.
template <typename R>
Cochain<R> morphism_cochain(const AlgebraMorphism& m) {
  Cochain<R> c = Cochain<R>::zero(Flavor::AB, 1, m.source, m.target);
  for (std::size_t j = 0; j < m.source.dim(); ++j) {
    Vec v = m.apply_basis(j);
    for (std::size_t i = 0; i < m.target.dim(); ++i)
      if (!v[i].is_zero()) c.entry(1, {j}, i) = R(v[i]);
  }
  c.drop_zero_components();
  return c;
}

template <typename R>
struct AInftyResiduals {
  Cochain<R> r_mu, r_nu, r_phi;  // one relation per flavor, per arity
  bool is_zero() const {
    return r_mu.is_zero() && r_nu.is_zero() && r_phi.is_zero();
  }
};

namespace detail {

/// f's arity-n value on a tuple where slot `pos` holds a coefficient vector.
template <typename R>
std::vector<R> eval_with_vector(const Cochain<R>& f, unsigned n,
                                const std::vector<std::size_t>& tuple,
                                std::size_t pos, const std::vector<R>& vec) {
  std::vector<R> out(f.tdim());
  if (!f.has_arity(n)) return out;
  auto t = tuple;
  for (std::size_t c = 0; c < f.sdim(); ++c) {
    if (vec[c].is_zero()) continue;
    t[pos] = c;
    auto v = f.value(n, t);
    for (std::size_t k = 0; k < f.tdim(); ++k)
      if (!v[k].is_zero()) out[k] += vec[c] * v[k];
  }
  return out;
}

/// f's arity-r value on a tuple of coefficient vectors.
template <typename R>
std::vector<R> eval_on_vectors(const Cochain<R>& f,
                               const std::vector<std::vector<R>>& args) {
  const unsigned r = static_cast<unsigned>(args.size());
  std::vector<R> out(f.tdim());
  if (!f.has_arity(r)) return out;
  std::vector<std::size_t> t(r, 0);
  auto rec = [&](auto&& self, unsigned slot, const R& coeff) -> void {
    if (slot == r) {
      auto v = f.value(r, t);
      for (std::size_t k = 0; k < f.tdim(); ++k)
        if (!v[k].is_zero()) out[k] += coeff * v[k];
      return;
    }
    for (std::size_t c = 0; c < f.sdim(); ++c) {
      if (args[slot][c].is_zero()) continue;
      t[slot] = c;
      self(self, slot + 1, coeff * args[slot][c]);
    }
  };
  rec(rec, 0, R(1));
  return out;
}

}  // namespace detail

/// The associativity-up-to-homotopy relations evaluated through their
/// classical closed-form signs. Only valid when both algebras carry trivial
/// differentials (exponents below quantify over bare element degrees); the
/// coalgebraic route below covers the general case.
template <typename R>
AInftyResiduals<R> ainfty_residuals_printed(const Cochain<R>& mu,
                                            const Cochain<R>& nu,
                                            const Cochain<R>& phi,
                                            unsigned arity_cap) {
  AInftyResiduals<R> res{mu, nu, phi};
  res.r_mu.comps.clear();
  res.r_nu.comps.clear();
  res.r_phi.comps.clear();
  res.r_mu.gdeg = res.r_nu.gdeg = res.r_phi.gdeg = 2;

  auto one_algebra = [&](const Cochain<R>& f, Cochain<R>& out) {
    for (unsigned n = 1; n <= arity_cap; ++n) {
      for_each_tuple(f.sdim(), n, [&](const std::vector<std::size_t>& t) {
        std::vector<R> acc(f.tdim());
        for (unsigned k = 1; k <= n; ++k) {
          const unsigned l = n - k + 1;
          if (!f.has_arity(k) || !f.has_arity(l)) continue;
          for (unsigned i = 0; i + k <= n; ++i) {
            long pre = 0;
            for (unsigned s = 0; s < i; ++s) pre += f.src_deg[t[s]];
            long e = static_cast<long>(i) * (k - 1) + k * (n - k + pre);
            int sign = (e % 2 == 0) ? 1 : -1;
            std::vector<std::size_t> block(t.begin() + i, t.begin() + i + k);
            auto inner = f.value(k, block);
            std::vector<std::size_t> outer;
            outer.reserve(l);
            outer.insert(outer.end(), t.begin(), t.begin() + i);
            outer.push_back(0);
            outer.insert(outer.end(), t.begin() + i + k, t.end());
            auto v = detail::eval_with_vector(f, l, outer, i, inner);
            for (std::size_t c = 0; c < f.tdim(); ++c)
              if (!v[c].is_zero()) acc[c] += sign == 1 ? v[c] : -v[c];
          }
        }
        for (std::size_t c = 0; c < f.tdim(); ++c)
          if (!acc[c].is_zero()) out.entry(n, t, c) += acc[c];
      });
    }
    out.drop_zero_components();
  };
  one_algebra(mu, res.r_mu);
  one_algebra(nu, res.r_nu);

  // Morphism relation, lhs - rhs.
  for (unsigned n = 1; n <= arity_cap; ++n) {
    for_each_tuple(phi.sdim(), n, [&](const std::vector<std::size_t>& t) {
      std::vector<R> acc(phi.tdim());
      // lhs: phi_k(a_1 ... mu_m(a_{i+1}..a_{i+m}) ... a_n)
      for (unsigned m = 1; m <= n; ++m) {
        const unsigned k = n - m + 1;
        if (!mu.has_arity(m) || !phi.has_arity(k)) continue;
        for (unsigned i = 0; i + m <= n; ++i) {
          long pre = 0;
          for (unsigned s = 0; s < i; ++s) pre += mu.src_deg[t[s]];
          long e = static_cast<long>(i) * (m - 1) +
                   static_cast<long>(m) * (n - m) + m * pre;
          int sign = (e % 2 == 0) ? 1 : -1;
          std::vector<std::size_t> block(t.begin() + i, t.begin() + i + m);
          auto inner = mu.value(m, block);
          std::vector<std::size_t> outer;
          outer.reserve(k);
          outer.insert(outer.end(), t.begin(), t.begin() + i);
          outer.push_back(0);
          outer.insert(outer.end(), t.begin() + i + m, t.end());
          auto v = detail::eval_with_vector(phi, k, outer, i, inner);
          for (std::size_t c = 0; c < phi.tdim(); ++c)
            if (!v[c].is_zero()) acc[c] += sign == 1 ? v[c] : -v[c];
        }
      }
      // rhs: nu_r(phi_{i_1}(..) ... phi_{i_r}(..)) over compositions of n.
      std::vector<unsigned> parts;
      auto emit = [&]() {
        const std::size_t r = parts.size();
        if (!nu.has_arity(static_cast<unsigned>(r))) return;
        long e = 0;
        std::size_t consumed = 0;
        long prefix_deg = 0;
        // epsilon: sum_{t<r} deg(phi_{i_{t+1}}) * (a_1+..+a_{i_1+..+i_t})
        //          + sum_{t<r} (r-t) * deg(phi_{i_t})
        for (std::size_t u = 0; u < r; ++u) {
          long dphi = phi.internal_degree(parts[u]);
          if (u > 0) e += dphi * prefix_deg;
          if (u + 1 < r)
            e += static_cast<long>(r - (u + 1)) *
                 phi.internal_degree(parts[u]);
          for (unsigned s = 0; s < parts[u]; ++s)
            prefix_deg += phi.src_deg[t[consumed + s]];
          consumed += parts[u];
        }
        int sign = (((e % 2) + 2) % 2 == 0) ? 1 : -1;
        std::vector<std::vector<R>> blocks;
        std::size_t pos = 0;
        for (auto p : parts) {
          std::vector<std::size_t> block(t.begin() + pos, t.begin() + pos + p);
          blocks.push_back(phi.value(p, block));
          pos += p;
        }
        auto v = detail::eval_on_vectors(nu, blocks);
        for (std::size_t c = 0; c < phi.tdim(); ++c)
          if (!v[c].is_zero()) acc[c] -= sign == 1 ? v[c] : -v[c];
      };
      auto rec = [&](auto&& self, unsigned left) -> void {
        if (left == 0) {
          emit();
          return;
        }
        for (unsigned p = 1; p <= left; ++p) {
          parts.push_back(p);
          self(self, left - p);
          parts.pop_back();
        }
      };
      rec(rec, n);
      for (std::size_t c = 0; c < phi.tdim(); ++c)
        if (!acc[c].is_zero()) res.r_phi.entry(n, t, c) += acc[c];
    });
  }
  res.r_phi.drop_zero_components();
  return res;
}

/// The same relations through the coalgebra machinery: corestrictions of
/// (mu-hat)^2, (nu-hat)^2 and phi-tilde . mu-hat - nu-hat . phi-tilde on
/// basis words, translated back through the suspension dictionary. Valid
/// for dg algebras when the arity-1 components carry the differentials.
template <typename R>
AInftyResiduals<R> ainfty_residuals_coalgebraic(const Cochain<R>& mu,
                                                const Cochain<R>& nu,
                                                const Cochain<R>& phi,
                                                unsigned arity_cap) {
  AInftyResiduals<R> res{mu, nu, phi};
  res.r_mu.comps.clear();
  res.r_nu.comps.clear();
  res.r_phi.comps.clear();
  res.r_mu.gdeg = res.r_nu.gdeg = res.r_phi.gdeg = 2;

  auto dict_sign = [](const Cochain<R>& f, const std::vector<std::size_t>& w) {
    std::vector<int> degs(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) degs[k] = f.src_deg[w[k]];
    return suspension_sign(degs);
  };

  auto square = [&](const Cochain<R>& f, Cochain<R>& out) {
    for (unsigned n = 1; n <= arity_cap; ++n) {
      for_each_tuple(f.sdim(), n, [&](const std::vector<std::size_t>& w) {
        std::vector<R> acc(f.tdim());
        for (const auto& [w1, c1] : coderivation_apply(f, w))
          for (const auto& [w2, c2] : coderivation_apply(f, w1)) {
            if (w2.size() != 1) continue;
            acc[w2[0]] += c1 * c2;
          }
        int s = dict_sign(f, w);
        for (std::size_t c = 0; c < f.tdim(); ++c)
          if (!acc[c].is_zero()) out.entry(n, w, c) += s == 1 ? acc[c] : -acc[c];
      });
    }
    out.drop_zero_components();
  };
  square(mu, res.r_mu);
  square(nu, res.r_nu);

  for (unsigned n = 1; n <= arity_cap; ++n) {
    for_each_tuple(phi.sdim(), n, [&](const std::vector<std::size_t>& w) {
      std::vector<R> acc(phi.tdim());
      for (const auto& [w1, c1] : coderivation_apply(mu, w))
        for (const auto& [w2, c2] :
             coalgebra_morphism_apply(phi, w1, 1))
          acc[w2[0]] += c1 * c2;
      for (unsigned l = 1; l <= n; ++l)
        for (const auto& [w1, c1] : coalgebra_morphism_apply(phi, w, l))
          for (const auto& [w2, c2] : coderivation_apply(nu, w1)) {
            if (w2.size() != 1) continue;
            acc[w2[0]] -= c1 * c2;
          }
      int s = dict_sign(phi, w);
      for (std::size_t c = 0; c < phi.tdim(); ++c)
        if (!acc[c].is_zero())
          res.r_phi.entry(n, w, c) += s == 1 ? acc[c] : -acc[c];
    });
  }
  res.r_phi.drop_zero_components();
  return res;
}

}  // namespace defmorph
