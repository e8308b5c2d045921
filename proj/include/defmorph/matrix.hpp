#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "defmorph/rational.hpp"

namespace defmorph {

using Vec = std::vector<Rat>;

/// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  Vec apply(const Vec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: size");
    Vec y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!at(r, c).is_zero() && !x[c].is_zero()) y[r] += at(r, c) * x[c];
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix::mul: size");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b.at(k, j).is_zero()) c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> e_;
};

namespace detail {

/// Reduced row echelon form, in place. Returns pivot column per pivot row.
inline std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m.at(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c)
        std::swap(m.at(p, c), m.at(row, c));
    Rat inv = Rat(1) / m.at(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      Rat f = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(const Matrix& m) {
  Matrix w = m;
  return detail::rref(w).size();
}

/// Basis of ker(m); vectors are exact, count = cols - rank.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
  Matrix w = m;
  auto pivots = detail::rref(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = Rat(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -w.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some exact solution of m x = b, or nullopt if inconsistent. When the
/// system is underdetermined, free variables are set to 0 (lexicographically
/// first pivot solution).
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs size");
  Matrix w(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) w.at(r, c) = m.at(r, c);
    w.at(r, m.cols()) = b[r];
  }
  auto pivots = detail::rref(w);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x[pivots[r]] = w.at(r, m.cols());
  return x;
}

/// dim ker(d_out) - rank(d_in); throws unless d_out . d_in = 0.
inline std::size_t quotient_dim(const Matrix& d_out, const Matrix& d_in) {
  if (d_out.cols() != d_in.rows())
    throw std::invalid_argument("quotient_dim: shape");
  if (!(d_out * d_in).is_zero())
    throw std::invalid_argument("quotient_dim: d_out . d_in != 0");
  std::size_t k = d_out.cols() - rank(d_out);
  std::size_t r = rank(d_in);
  if (r > k) throw std::logic_error("quotient_dim: impossible rank");
  return k - r;
}

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// Canonical coordinates of the class [v] in ker(d_out)/im(d_in): v is
/// expressed in a kernel basis, then reduced to normal form against the
/// row-echelon span of the image. Equal classes yield equal vectors; the
/// zero vector iff v is a boundary. Throws if v is not a cocycle.
inline Vec quotient_class(const Matrix& d_out, const Matrix& d_in, const Vec& v) {
  if (!is_zero_vec(d_out.apply(v)))
    throw std::invalid_argument("quotient_class: v not a cocycle");
  auto kb = kernel_basis(d_out);
  std::size_t k = kb.size();
  Matrix kmat(v.size(), k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < v.size(); ++i) kmat.at(i, j) = kb[j][i];
  auto in_kernel_coords = [&](const Vec& w) {
    auto c = solve(kmat, w);
    if (!c) throw std::invalid_argument("quotient_class: not in kernel");
    return *c;
  };
  Vec c = in_kernel_coords(v);
  // Image generators in kernel coordinates, row-reduced.
  Matrix img(d_in.cols(), k);
  for (std::size_t j = 0; j < d_in.cols(); ++j) {
    Vec col(d_in.rows());
    for (std::size_t i = 0; i < d_in.rows(); ++i) col[i] = d_in.at(i, j);
    Vec cc = in_kernel_coords(col);
    for (std::size_t i = 0; i < k; ++i) img.at(j, i) = cc[i];
  }
  auto pivots = detail::rref(img);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Rat f = c[pivots[r]];
    if (f.is_zero()) continue;
    for (std::size_t i = 0; i < k; ++i) c[i] -= f * img.at(r, i);
  }
  return c;
}

}  // namespace defmorph
