#pragma once

// Dense square matrices over a StarScalar backend: the *-ring M_n(k) with
// involution a -> a* (conjugate transpose).

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wcore/errors.hpp"
#include "wcore/scalar.hpp"

namespace wcore {

template <StarScalar S>
class Mat {
 public:
  using scalar_type = S;
  using domain_type = typename S::domain_type;

  Mat(std::size_t dim, domain_type domain) : dim_(dim), domain_(domain) {
    if (dim == 0) throw ArgumentError("matrix dimension must be positive");
    entries_.assign(dim * dim, domain_.zero());
  }

  static Mat zero(std::size_t dim, domain_type domain) { return Mat(dim, domain); }

  static Mat identity(std::size_t dim, domain_type domain) {
    Mat m(dim, domain);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = domain.one();
    return m;
  }

  static Mat from_rows(domain_type domain, const std::vector<std::vector<S>>& rows) {
    Mat m(rows.size(), domain);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw DimensionMismatch("matrix rows must form a square array");
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if (!(rows[i][j].domain() == domain)) throw BackendMismatch("entry backend differs from matrix backend");
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  // Integer-literal convenience: Mat::of(dom, {{1, 1}, {0, 0}}).
  static Mat of(domain_type domain, std::initializer_list<std::initializer_list<long long>> rows) {
    Mat m(rows.size(), domain);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != rows.size()) throw DimensionMismatch("matrix rows must form a square array");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = domain.from_int(v);
      ++i;
    }
    return m;
  }

  static Mat diagonal(domain_type domain, const std::vector<S>& diag) {
    Mat m(diag.size(), domain);
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t dim() const { return dim_; }
  const domain_type& domain() const { return domain_; }

  S& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  const std::vector<S>& entries() const { return entries_; }

  bool is_zero() const {
    for (const auto& x : entries_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  Mat& operator+=(const Mat& o) {
    check_compatible(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_compatible(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator-(Mat a) {
    for (auto& x : a.entries_) x = -x;
    return a;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    a.check_compatible(b);
    const std::size_t n = a.dim_;
    Mat c(n, a.domain_);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const S& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }

  Mat scaled(const S& s) const {
    if (!(s.domain() == domain_)) throw BackendMismatch("scalar backend differs from matrix backend");
    Mat m = *this;
    for (auto& x : m.entries_) x = s * x;
    return m;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.dim_ == b.dim_ && a.domain_ == b.domain_ && a.entries_ == b.entries_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Mat& m) {
    os << '[';
    for (std::size_t i = 0; i < m.dim_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.dim_; ++j) os << (j ? ", " : "") << m(i, j).str();
      os << ']';
    }
    return os << ']';
  }

  void check_compatible(const Mat& o) const {
    if (dim_ != o.dim_) {
      throw DimensionMismatch("dimension mismatch: " + std::to_string(dim_) + " vs " + std::to_string(o.dim_));
    }
    if (!(domain_ == o.domain_)) throw BackendMismatch("matrix backends differ");
  }

 private:
  std::size_t dim_;
  domain_type domain_;
  std::vector<S> entries_;
};

template <StarScalar S>
Mat<S> mat_scale(const Mat<S>& a, const S& s) {
  return a.scaled(s);
}

template <StarScalar S>
Mat<S> transpose(const Mat<S>& a) {
  Mat<S> t(a.dim(), a.domain());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

// Conjugate transpose.
template <StarScalar S>
Mat<S> star(const Mat<S>& a) {
  Mat<S> t(a.dim(), a.domain());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) t(j, i) = conj(a(i, j));
  }
  return t;
}

template <StarScalar S>
Mat<S> identity_like(const Mat<S>& a) {
  return Mat<S>::identity(a.dim(), a.domain());
}

// a^k for k >= 0 (a^0 = 1).
template <StarScalar S>
Mat<S> power(const Mat<S>& a, int k) {
  if (k < 0) throw ArgumentError("negative matrix power");
  Mat<S> result = identity_like(a);
  Mat<S> base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

template <StarScalar S>
bool is_hermitian(const Mat<S>& m) {
  return star(m) == m;
}

template <StarScalar S>
bool is_idempotent(const Mat<S>& m) {
  return m * m == m;
}

template <StarScalar S>
struct SolveWitness {
  Mat<S> solution;
  bool consistent = false;
};

namespace detail {

// Row-major rectangular scratch buffer reduced in place to reduced row echelon
// form. Pivots are chosen column by column, left to right, taking the first
// row at or below the current one with a nonzero entry.
template <StarScalar S>
struct Echelon {
  std::size_t rows;
  std::size_t cols;
  std::vector<S> cells;
  std::vector<std::size_t> pivot_cols;

  S& at(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
  const S& at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }

  // Reduce; only columns [0, pivot_limit) may hold pivots.
  void reduce(std::size_t pivot_limit) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < pivot_limit && row < rows; ++col) {
      std::size_t pick = row;
      while (pick < rows && at(pick, col).is_zero()) ++pick;
      if (pick == rows) continue;
      if (pick != row) {
        for (std::size_t j = 0; j < cols; ++j) std::swap(at(pick, j), at(row, j));
      }
      const S scale = inv(at(row, col));
      for (std::size_t j = col; j < cols; ++j) at(row, j) = at(row, j) * scale;
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == row || at(i, col).is_zero()) continue;
        const S factor = at(i, col);
        for (std::size_t j = col; j < cols; ++j) {
          if (!at(row, j).is_zero()) at(i, j) -= factor * at(row, j);
        }
      }
      pivot_cols.push_back(col);
      ++row;
    }
  }
};

template <StarScalar S>
Echelon<S> augmented(const Mat<S>& a, const Mat<S>& b) {
  a.check_compatible(b);
  const std::size_t n = a.dim();
  Echelon<S> e{n, 2 * n, std::vector<S>(2 * n * n, a.domain().zero()), {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      e.at(i, j) = a(i, j);
      e.at(i, n + j) = b(i, j);
    }
  }
  return e;
}

}  // namespace detail

// Finds x with a·x = b. Free variables are set to zero, so the witness is a
// deterministic function of (a, b).
template <StarScalar S>
SolveWitness<S> solve_right(const Mat<S>& a, const Mat<S>& b) {
  const std::size_t n = a.dim();
  auto ech = detail::augmented(a, b);
  ech.reduce(n);
  const std::size_t rank = ech.pivot_cols.size();
  for (std::size_t i = rank; i < n; ++i) {
    for (std::size_t j = n; j < 2 * n; ++j) {
      if (!ech.at(i, j).is_zero()) return {Mat<S>::zero(n, a.domain()), false};
    }
  }
  Mat<S> x(n, a.domain());
  for (std::size_t r = 0; r < rank; ++r) {
    const std::size_t var = ech.pivot_cols[r];
    for (std::size_t j = 0; j < n; ++j) x(var, j) = ech.at(r, n + j);
  }
  return {std::move(x), true};
}

// Finds x with x·a = b by solving the transposed system aᵀ·xᵀ = bᵀ.
template <StarScalar S>
SolveWitness<S> solve_left(const Mat<S>& a, const Mat<S>& b) {
  auto w = solve_right(transpose(a), transpose(b));
  return {transpose(w.solution), w.consistent};
}

template <StarScalar S>
std::optional<Mat<S>> inverse(const Mat<S>& a) {
  auto w = solve_right(a, identity_like(a));
  if (!w.consistent) return std::nullopt;
  return std::move(w.solution);
}

template <StarScalar S>
bool is_invertible(const Mat<S>& a) {
  return inverse(a).has_value();
}

template <StarScalar S>
std::size_t rank(const Mat<S>& a) {
  auto ech = detail::augmented(a, a);
  ech.reduce(a.dim());
  return ech.pivot_cols.size();
}

// Basis of the right kernel {v : a·v = 0}, as column vectors.
template <StarScalar S>
std::vector<std::vector<S>> kernel_basis(const Mat<S>& a) {
  const std::size_t n = a.dim();
  auto ech = detail::augmented(a, a);
  ech.reduce(n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<S>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> v(n, a.domain().zero());
    v[free] = a.domain().one();
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) v[ech.pivot_cols[r]] = -ech.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis of the left kernel {y : y·a = 0}, as row vectors.
template <StarScalar S>
std::vector<std::vector<S>> left_kernel_basis(const Mat<S>& a) {
  return kernel_basis(transpose(a));
}

// y·m for a row vector y.
template <StarScalar S>
std::vector<S> row_times(const std::vector<S>& y, const Mat<S>& m) {
  if (y.size() != m.dim()) throw DimensionMismatch("row vector length differs from matrix dimension");
  std::vector<S> out(m.dim(), m.domain().zero());
  for (std::size_t k = 0; k < m.dim(); ++k) {
    if (y[k].is_zero()) continue;
    for (std::size_t j = 0; j < m.dim(); ++j) out[j] += y[k] * m(k, j);
  }
  return out;
}

// ---------------------------------------------------------------------------

// An invertible Hermitian matrix; plays the role of the weights e and f.
template <StarScalar S>
class Weight {
 public:
  explicit Weight(Mat<S> value) : value_(std::move(value)), inverse_(value_) {
    if (!is_hermitian(value_)) throw InvalidWeight("weight is not Hermitian");
    auto inv_w = wcore::inverse(value_);
    if (!inv_w) throw InvalidWeight("weight is not invertible");
    inverse_ = std::move(*inv_w);
  }

  static Weight identity(std::size_t dim, typename S::domain_type domain) {
    return Weight(Mat<S>::identity(dim, domain));
  }

  const Mat<S>& value() const { return value_; }
  const Mat<S>& inverse() const { return inverse_; }
  std::size_t dim() const { return value_.dim(); }

  // The weight w^{-1}, also invertible Hermitian.
  Weight inverted() const { return Weight(inverse_, value_); }

  friend bool operator==(const Weight& a, const Weight& b) { return a.value_ == b.value_; }

 private:
  Weight(Mat<S> value, Mat<S> inverse) : value_(std::move(value)), inverse_(std::move(inverse)) {}

  Mat<S> value_;
  Mat<S> inverse_;
};

// star(w·m) == w·m
template <StarScalar S>
bool is_hermitian_wrt(const Weight<S>& w, const Mat<S>& m) {
  return is_hermitian(w.value() * m);
}

}  // namespace wcore
