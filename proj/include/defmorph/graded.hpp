#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace defmorph {

/// Basis of a finite-dimensional graded vector space. Degrees are confined
/// to a window [d_min, 0]; everything downstream is non-positively graded.
struct GradedBasis {
  struct Element {
    std::string name;
    int degree = 0;
  };
  std::vector<Element> elements;

  static constexpr int kDefaultMinDegree = -4;

  std::size_t dim() const { return elements.size(); }
  int degree(std::size_t i) const { return elements[i].degree; }

  void validate(int d_min = kDefaultMinDegree) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i].degree > 0 || elements[i].degree < d_min)
        throw std::invalid_argument("GradedBasis: degree outside [" +
                                    std::to_string(d_min) + ", 0]");
      for (std::size_t j = i + 1; j < elements.size(); ++j)
        if (elements[i].name == elements[j].name)
          throw std::invalid_argument("GradedBasis: duplicate name " +
                                      elements[i].name);
    }
  }
};

/// (-1)^eps with eps = sum_{i<n} (n-i) * x_i: the sign of the tensor-level
/// suspension s(x_1 (x) ... (x) x_n).
inline int suspension_sign(const std::vector<int>& degrees) {
  if (degrees.empty())
    throw std::invalid_argument("suspension_sign: empty word");
  long eps = 0;
  const long n = static_cast<long>(degrees.size());
  for (long i = 0; i < n - 1; ++i)
    eps += (n - 1 - i) * degrees[static_cast<std::size_t>(i)];
  return (eps % 2 == 0) ? 1 : -1;
}

/// Koszul sign of rearranging homogeneous factors into the order
/// x_{sigma(0)},...,x_{sigma(n-1)}: an explicit walk of adjacent
/// transpositions, each contributing (-1)^(deg a * deg b). Two odd factors
/// swap with -1, an even factor swaps with anything at +1.
inline int koszul_sign(const std::vector<std::size_t>& permutation,
                       const std::vector<int>& degrees) {
  const std::size_t n = permutation.size();
  if (degrees.size() != n)
    throw std::invalid_argument("koszul_sign: size mismatch");
  std::vector<bool> seen(n, false);
  for (auto p : permutation) {
    if (p >= n || seen[p]) throw std::invalid_argument("koszul_sign: not a permutation");
    seen[p] = true;
  }
  // Bubble the target arrangement out of the identity, accumulating
  // (-1)^(deg a * deg b) per adjacent swap.
  std::vector<std::size_t> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  long e = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i;
    while (cur[j] != permutation[i]) ++j;
    for (; j > i; --j) {
      e += degrees[cur[j]] * degrees[cur[j - 1]];
      std::swap(cur[j], cur[j - 1]);
    }
  }
  return (e % 2 == 0) ? 1 : -1;
}

/// All ways to interleave m indistinguishable markers among `positions`
/// other slots: one bitmask per interleaving, true = marker slot.
/// C(m+positions, m) results.
inline std::vector<std::vector<bool>> shuffles(std::size_t m,
                                               std::size_t positions) {
  std::vector<std::vector<bool>> out;
  std::vector<bool> mask(m + positions);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (left == 0) {
      out.push_back(mask);
      return;
    }
    if (mask.size() - pos < left) return;
    mask[pos] = true;
    self(self, pos + 1, left - 1);
    mask[pos] = false;
    self(self, pos + 1, left);
  };
  rec(rec, 0, m);
  return out;
}

/// All permutations of {0..n-1} paired with their Koszul sign on the given
/// suspended degrees; the building block of symmetrize().
inline std::vector<std::pair<std::vector<std::size_t>, int>>
signed_permutations(const std::vector<int>& suspended_degrees) {
  std::vector<std::size_t> perm(suspended_degrees.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<std::size_t>, int>> out;
  do {
    out.emplace_back(perm, koszul_sign(perm, suspended_degrees));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace defmorph
