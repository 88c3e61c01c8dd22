#pragma once

// Seeded test-input generators. Only the raw output of std::mt19937_64 is
// used (its sequence is fixed by the standard), so a seed reproduces the same
// matrices on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "wcore/matrix.hpp"

namespace wcore {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  long long uniform(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(engine_() % span);
  }
  bool coin() { return (engine_() & 1U) != 0; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Small random scalars: integers in [-2, 2] (real and imaginary parts for Q(i)),
// uniform residues for F_p.
inline Rational sample_scalar(const RationalDomain&, Rng& rng) { return Rational(rng.uniform(-2, 2)); }
inline GaussianRational sample_scalar(const GaussianDomain&, Rng& rng) {
  Rational re(rng.uniform(-2, 2));
  Rational im(rng.uniform(-2, 2));
  return {re, im};
}
inline PrimeField sample_scalar(const PrimeDomain& d, Rng& rng) {
  return d.element(static_cast<int>(rng.uniform(0, d.modulus - 1)));
}

template <StarScalar S>
S sample_nonzero(const typename S::domain_type& d, Rng& rng) {
  for (;;) {
    S x = sample_scalar(d, rng);
    if (!x.is_zero()) return x;
  }
}

// Real Hermitian-compatible nonzero scalar (fixed by conjugation).
template <StarScalar S>
S sample_real_nonzero(const typename S::domain_type& d, Rng& rng) {
  for (;;) {
    S x = d.from_int(rng.uniform(-3, 3));
    if (!x.is_zero()) return x;
  }
}

template <StarScalar S>
Mat<S> random_mat(std::size_t dim, const typename S::domain_type& d, Rng& rng) {
  Mat<S> m(dim, d);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = sample_scalar(d, rng);
  }
  return m;
}

template <StarScalar S>
Mat<S> random_mat(std::size_t dim, const typename S::domain_type& d, std::uint64_t seed) {
  Rng rng(seed);
  return random_mat<S>(dim, d, rng);
}

// Unit lower triangular times upper triangular with nonzero diagonal: always invertible.
template <StarScalar S>
Mat<S> random_invertible(std::size_t dim, const typename S::domain_type& d, Rng& rng) {
  Mat<S> lower = Mat<S>::identity(dim, d);
  Mat<S> upper(dim, d);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < i; ++j) lower(i, j) = sample_scalar(d, rng);
    upper(i, i) = sample_nonzero<S>(d, rng);
    for (std::size_t j = i + 1; j < dim; ++j) upper(i, j) = sample_scalar(d, rng);
  }
  // Shuffle rows so zero patterns are not always triangular.
  Mat<S> perm(dim, d);
  std::vector<std::size_t> order(dim);
  for (std::size_t i = 0; i < dim; ++i) order[i] = i;
  for (std::size_t i = dim; i > 1; --i) std::swap(order[i - 1], order[rng.uniform(0, static_cast<long long>(i) - 1)]);
  for (std::size_t i = 0; i < dim; ++i) perm(i, order[i]) = d.one();
  return perm * lower * upper;
}

// g*·diag(signs)·g with g random invertible. Positive-definite over Q and Q(i)
// when every sign is +1; `indefinite` flips a random nonempty subset of signs
// when dim > 1.
template <StarScalar S>
Weight<S> random_weight(std::size_t dim, const typename S::domain_type& d, Rng& rng, bool indefinite = false) {
  Mat<S> g = random_invertible<S>(dim, d, rng);
  std::vector<S> signs(dim, d.one());
  if (indefinite) {
    bool flipped = false;
    for (auto& s : signs) {
      if (rng.coin()) {
        s = -d.one();
        flipped = true;
      }
    }
    if (!flipped) signs[rng.uniform(0, static_cast<long long>(dim) - 1)] = -d.one();
  }
  return Weight<S>(star(g) * Mat<S>::diagonal(d, signs) * g);
}

template <StarScalar S>
Weight<S> random_weight(std::size_t dim, const typename S::domain_type& d, std::uint64_t seed, bool indefinite = false) {
  Rng rng(seed);
  return random_weight<S>(dim, d, rng, indefinite);
}

// u·blockdiag(c, 0)·u^{-1} with c an invertible rank×rank block.
template <StarScalar S>
Mat<S> random_group_invertible(std::size_t dim, std::size_t rank, const typename S::domain_type& d, Rng& rng) {
  if (rank > dim) throw ArgumentError("rank exceeds dimension");
  Mat<S> core(dim, d);
  if (rank > 0) {
    Mat<S> c = random_invertible<S>(rank, d, rng);
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = 0; j < rank; ++j) core(i, j) = c(i, j);
    }
  }
  Mat<S> u = random_invertible<S>(dim, d, rng);
  return u * core * *inverse(u);
}

// Rank drawn uniformly from [0, dim].
template <StarScalar S>
Mat<S> random_group_invertible(std::size_t dim, const typename S::domain_type& d, std::uint64_t seed) {
  Rng rng(seed);
  const auto r = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(dim)));
  return random_group_invertible<S>(dim, r, d, rng);
}

// u·blockdiag(c, N)·u^{-1} with N a nonzero nilpotent Jordan block of size
// >= 2: a ∉ a²R, so a has no group inverse. Requires dim >= 2.
template <StarScalar S>
Mat<S> random_non_group_invertible(std::size_t dim, const typename S::domain_type& d, Rng& rng) {
  if (dim < 2) throw ArgumentError("a non-group-invertible matrix needs dim >= 2");
  const auto nil = static_cast<std::size_t>(rng.uniform(2, static_cast<long long>(dim)));
  const std::size_t rank = dim - nil;
  Mat<S> core(dim, d);
  if (rank > 0) {
    Mat<S> c = random_invertible<S>(rank, d, rng);
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = 0; j < rank; ++j) core(i, j) = c(i, j);
    }
  }
  for (std::size_t i = rank; i + 1 < dim; ++i) core(i, i + 1) = d.one();
  Mat<S> u = random_invertible<S>(dim, d, rng);
  return u * core * *inverse(u);
}

}  // namespace wcore
