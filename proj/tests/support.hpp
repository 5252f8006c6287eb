#ifndef AMD_TESTS_SUPPORT_HPP
#define AMD_TESTS_SUPPORT_HPP

// Seeded generators and brute-force oracles shared by the unit tests.

#include <cstdint>
#include <random>
#include <vector>

#include "amd/algebra.hpp"

namespace amd::test {

/// Deterministic generator; each test constructs its own with a fixed seed.
struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }

  /// Degree exactly `degree`, coefficients in [-bound, bound], nonzero lead.
  IntPoly poly(int degree, std::int64_t bound) {
    std::vector<Integer> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = static_cast<long>(range(-bound, bound));
    while (c.back() == 0) c.back() = static_cast<long>(range(-bound, bound));
    return IntPoly(std::move(c));
  }

  IntPoly monic(int degree, std::int64_t bound) {
    std::vector<Integer> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = static_cast<long>(range(-bound, bound));
    c.back() = 1;
    return IntPoly(std::move(c));
  }

  std::mt19937_64 rng;
};

/// Schoolbook product, independent of the library multiplication.
inline IntPoly naive_mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Integer> c(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return IntPoly(std::move(c));
}

/// Determinant by cofactor expansion along the first row; exact, for the
/// small matrices used as characteristic-polynomial oracles.
inline Integer det_expand(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const Integer term = m[0][col] * det_expand(minor);
    total += (col % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

/// Determinant by Gaussian elimination over the rationals.
inline Integer det_rational(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<mpq_class>> q(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i][j] = m[i][j];
  }
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && q[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(q[pivot], q[col]);
      det = -det;
    }
    det *= q[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const mpq_class f = q[r][col] / q[col][col];
      for (std::size_t c = col; c < n; ++c) q[r][c] -= f * q[col][c];
    }
  }
  return Integer(det.get_num() / det.get_den());
}

}  // namespace amd::test

#endif  // AMD_TESTS_SUPPORT_HPP
