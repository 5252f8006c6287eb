#ifndef AMD_MODPOLY_HPP
#define AMD_MODPOLY_HPP

// Dense polynomials over F_p for word-sized primes (p < 2^32).
//
// Products are accumulated lazily in 64-bit words and only reduced when an
// overflow could otherwise happen, which keeps the inner loops free of
// divisions for the small primes the factorizer uses.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "amd/algebra.hpp"

namespace amd {

class ModPoly {
 public:
  ModPoly() = default;
  ModPoly(std::vector<std::uint64_t> coeffs, std::uint64_t p);
  /// Reduces an integer polynomial coefficientwise into [0, p).
  static ModPoly reduce(const IntPoly& f, std::uint64_t p);
  static ModPoly constant(std::uint64_t c, std::uint64_t p);
  /// x^n
  static ModPoly x_pow(std::size_t n, std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t operator[](std::size_t i) const {
    return i < c_.size() ? c_[i] : 0;
  }
  std::uint64_t leading() const { return c_.back(); }

  ModPoly monic() const;
  ModPoly derivative() const;
  /// Lift to Z with coefficients in [0, p).
  IntPoly lift() const;

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
  ModPoly scaled(std::uint64_t c) const;
  friend bool operator==(const ModPoly& a, const ModPoly& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

 private:
  void normalize();
  std::vector<std::uint64_t> c_;
  std::uint64_t p_ = 0;
};

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// Quotient and remainder; `b` must be nonzero.
std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b);
ModPoly rem(const ModPoly& a, const ModPoly& b);
/// Monic gcd (zero when both inputs are zero).
ModPoly gcd(const ModPoly& a, const ModPoly& b);
/// (g, s, t) with s*a + t*b = g monic.
struct ExtGcd {
  ModPoly g, s, t;
};
ExtGcd ext_gcd(const ModPoly& a, const ModPoly& b);
/// base^e mod m
ModPoly powmod(const ModPoly& base, const Integer& e, const ModPoly& m);

/// Reduction modulo a fixed polynomial through a precomputed inverse of its
/// reversal, so each reduction costs two products instead of a division.
class ModReducer {
 public:
  explicit ModReducer(const ModPoly& m);
  /// a mod m; inputs up to degree 2 deg(m) - 2 take the fast path.
  ModPoly reduce(const ModPoly& a) const;
  ModPoly mulmod(const ModPoly& a, const ModPoly& b) const;
  ModPoly powmod(const ModPoly& base, const Integer& e) const;
  const ModPoly& modulus_poly() const { return m_; }

 private:
  ModPoly m_;
  ModPoly inv_rev_;
  std::size_t precision_ = 0;
};

/// Matrix of the Frobenius map h -> h^p on F_p[x]/(f) for monic f.
class FrobeniusMap {
 public:
  explicit FrobeniusMap(const ModPoly& f);
  /// h^p mod f; `h` must already be reduced mod f.
  ModPoly apply(const ModPoly& h) const;
  const ModPoly& modulus_poly() const { return f_; }

 private:
  ModPoly f_;
  std::size_t n_;
  std::vector<std::uint32_t> rows_;  // n_ x n_, row i = x^(i p) mod f
};

/// Squarefree decomposition of a monic polynomial: pairs (g_i, e_i) with
/// f = prod g_i^e_i and every g_i squarefree.
std::vector<std::pair<ModPoly, unsigned>> squarefree_decomposition(
    const ModPoly& f);

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// (d, g_d) where g_d is the product of all irreducible factors of degree d.
std::vector<std::pair<unsigned, ModPoly>> distinct_degree_factorization(
    const ModPoly& f, const FrobeniusMap& frob);

/// Splits a product of irreducibles all of degree `d` (odd p only).
std::vector<ModPoly> equal_degree_factorization(const ModPoly& g, unsigned d,
                                                const FrobeniusMap& frob,
                                                std::mt19937_64& rng);

}  // namespace amd

#endif  // AMD_MODPOLY_HPP
