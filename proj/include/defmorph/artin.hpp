#pragma once

#include <stdexcept>
#include <vector>

#include "defmorph/rational.hpp"

namespace defmorph {

/// Element of Q[t]/(t^(N+1)): coefficients c[0] + c[1] t + ... + c[N] t^N.
/// All arithmetic truncates at t^(N+1). Mixed-order arithmetic is rejected.
class ArtinSeries {
 public:
  ArtinSeries() : c_(1) {}  // order 0 (plain scalar); promoted on demand
  ArtinSeries(unsigned order, const Rat& constant) : c_(order + 1) {
    c_[0] = constant;
  }
  /// Scalar embeddings used by generic code (mirroring Rat's constructors).
  ArtinSeries(long constant) : c_(1) { c_[0] = Rat(constant); }
  ArtinSeries(int constant) : c_(1) { c_[0] = Rat(constant); }
  ArtinSeries(const Rat& constant) : c_(1) { c_[0] = constant; }

  static ArtinSeries zero_of_order(unsigned order) {
    return ArtinSeries(order, Rat(0));
  }

  static ArtinSeries t_power(unsigned order, unsigned k, const Rat& coeff) {
    ArtinSeries s(order, Rat(0));
    if (k <= order) s.c_[k] = coeff;
    return s;
  }

  unsigned order() const { return static_cast<unsigned>(c_.size()) - 1; }
  const Rat& coeff(unsigned k) const {
    static const Rat zero;
    return k < c_.size() ? c_[k] : zero;
  }
  Rat& coeff_mut(unsigned k) {
    if (k >= c_.size()) throw std::out_of_range("ArtinSeries: power > order");
    return c_[k];
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  /// True iff the element lies in the maximal ideal (t).
  bool in_maximal_ideal() const { return c_[0].is_zero(); }

  ArtinSeries operator-() const {
    ArtinSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  ArtinSeries& operator+=(const ArtinSeries& o) {
    promote(o.c_.size());
    for (std::size_t i = 0; i < c_.size() && i < o.c_.size(); ++i)
      c_[i] += o.c_[i];
    return *this;
  }
  ArtinSeries& operator-=(const ArtinSeries& o) {
    promote(o.c_.size());
    for (std::size_t i = 0; i < c_.size() && i < o.c_.size(); ++i)
      c_[i] -= o.c_[i];
    return *this;
  }
  ArtinSeries& operator*=(const ArtinSeries& o) {
    promote(o.c_.size());
    std::vector<Rat> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < c_.size() && j < o.c_.size(); ++j)
        if (!o.c_[j].is_zero()) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    return *this;
  }
  /// Division by a unit scalar (used for 1/k! factors).
  ArtinSeries& operator/=(const Rat& s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  friend ArtinSeries operator+(ArtinSeries a, const ArtinSeries& b) { return a += b; }
  friend ArtinSeries operator-(ArtinSeries a, const ArtinSeries& b) { return a -= b; }
  friend ArtinSeries operator*(ArtinSeries a, const ArtinSeries& b) { return a *= b; }
  friend bool operator==(const ArtinSeries& a, const ArtinSeries& b) {
    return (a - b).is_zero();
  }

 private:
  // Order-0 values are plain scalars (integer literals in generic code) and
  // are promoted to the partner's order; otherwise orders must agree.
  void promote(std::size_t partner) {
    if (c_.size() == partner) return;
    if (c_.size() == 1) {
      c_.resize(partner);
      return;
    }
    if (partner != 1)
      throw std::invalid_argument("ArtinSeries: mixed truncation orders");
  }

  std::vector<Rat> c_;
};

}  // namespace defmorph
