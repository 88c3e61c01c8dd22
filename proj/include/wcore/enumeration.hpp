#pragma once

// Exhaustive iteration over M_n(F_p).
//
// Order: lexicographic on the row-major entry tuple, entry (0,0) most
// significant, each entry running 0, 1, ..., p-1. Index k therefore maps to
// the base-p digits of k.

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "wcore/matrix.hpp"

namespace wcore {

class SpaceTooLarge : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

struct EnumerationSpace {
  static constexpr std::uint64_t kExhaustiveLimit = 1'000'000;

  int modulus;
  std::size_t dim;
  std::uint64_t count;  // p^(n²), saturated at UINT64_MAX

  bool exhaustive() const { return count <= kExhaustiveLimit; }

  std::string describe() const {
    return "M_" + std::to_string(dim) + "(F_" + std::to_string(modulus) + ") with " + std::to_string(count) +
           " elements";
  }
};

inline EnumerationSpace make_space(int modulus, std::size_t dim) {
  PrimeDomain d(modulus);
  if (dim == 0) throw ArgumentError("dimension must be positive");
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < dim * dim; ++k) {
    if (count > UINT64_MAX / static_cast<std::uint64_t>(modulus)) return {modulus, dim, UINT64_MAX};
    count *= static_cast<std::uint64_t>(modulus);
  }
  return {d.modulus, dim, count};
}

inline void require_exhaustive(const EnumerationSpace& space) {
  if (!space.exhaustive()) {
    throw SpaceTooLarge("enumeration space too large: " + space.describe() + " exceeds limit of " +
                        std::to_string(EnumerationSpace::kExhaustiveLimit));
  }
}

inline Mat<PrimeField> matrix_at(const EnumerationSpace& space, std::uint64_t index) {
  PrimeDomain d(space.modulus);
  Mat<PrimeField> m(space.dim, d);
  const std::size_t cells = space.dim * space.dim;
  for (std::size_t k = cells; k-- > 0;) {
    m(k / space.dim, k % space.dim) = d.element(static_cast<int>(index % static_cast<std::uint64_t>(space.modulus)));
    index /= static_cast<std::uint64_t>(space.modulus);
  }
  return m;
}

// Calls fn(m) for every matrix of the space in enumeration order. fn may
// return false to stop early.
template <class Fn>
void for_each_matrix(const EnumerationSpace& space, Fn&& fn) {
  require_exhaustive(space);
  PrimeDomain d(space.modulus);
  Mat<PrimeField> m(space.dim, d);
  const std::size_t cells = space.dim * space.dim;
  std::vector<int> digits(cells, 0);
  for (std::uint64_t visited = 0; visited < space.count; ++visited) {
    if constexpr (std::is_same_v<decltype(fn(m)), bool>) {
      if (!fn(static_cast<const Mat<PrimeField>&>(m))) return;
    } else {
      fn(static_cast<const Mat<PrimeField>&>(m));
    }
    for (std::size_t k = cells; k-- > 0;) {
      digits[k] = (digits[k] + 1) % space.modulus;
      m(k / space.dim, k % space.dim) = d.element(digits[k]);
      if (digits[k] != 0) break;
    }
  }
}

// All invertible Hermitian (here: symmetric) matrices of the space.
inline std::vector<Weight<PrimeField>> all_weights(int modulus, std::size_t dim) {
  PrimeDomain d(modulus);
  // Enumerate upper triangles only; p^(n(n+1)/2) candidates.
  const std::size_t free_cells = dim * (dim + 1) / 2;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < free_cells; ++k) total *= static_cast<std::uint64_t>(modulus);
  std::vector<Weight<PrimeField>> out;
  for (std::uint64_t index = 0; index < total; ++index) {
    Mat<PrimeField> m(dim, d);
    std::uint64_t rest = index;
    std::vector<int> digits(free_cells);
    for (std::size_t k = free_cells; k-- > 0;) {
      digits[k] = static_cast<int>(rest % static_cast<std::uint64_t>(modulus));
      rest /= static_cast<std::uint64_t>(modulus);
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) {
        m(i, j) = d.element(digits[k]);
        m(j, i) = d.element(digits[k]);
        ++k;
      }
    }
    if (is_invertible(m)) out.emplace_back(std::move(m));
  }
  return out;
}

}  // namespace wcore
