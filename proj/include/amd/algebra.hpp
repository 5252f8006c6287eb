#ifndef AMD_ALGEBRA_HPP
#define AMD_ALGEBRA_HPP

// Exact integer polynomials and the elementary number theory the rest of
// the engine is built on. Coefficients are GMP integers; there is no
// rational arithmetic anywhere.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace amd {

using Integer = mpz_class;

struct NotDivisible : std::domain_error {
  using std::domain_error::domain_error;
};

/// Dense polynomial in Z[x], coefficient i multiplies x^i.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector and has degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const Integer& c);
  static IntPoly monomial(const Integer& c, std::size_t degree);
  /// x^n - 1
  static IntPoly x_pow_minus_one(std::size_t n);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Integer>& coeffs() const { return coeffs_; }

  /// Coefficient of x^i; zero past the degree.
  const Integer& operator[](std::size_t i) const;
  const Integer& leading() const;

  Integer eval(const Integer& x) const;
  IntPoly derivative() const;
  Integer content() const;
  IntPoly primitive_part() const;
  /// Largest bit length among |coefficients|.
  std::size_t max_bits() const;
  /// ceil(sqrt(sum of squared coefficients))
  Integer l2_norm_ceil() const;

  std::string to_string(char var = 'x') const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const Integer& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator-(IntPoly a);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const Integer& c) { return a *= c; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();
  std::vector<Integer> coeffs_;
};

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);

/// Quotient q with q*b == a. Throws NotDivisible when the division leaves a
/// remainder or a non-integral quotient.
IntPoly poly_divexact(const IntPoly& a, const IntPoly& b);

/// Non-throwing exact division. When `coeff_bound` is given, the attempt is
/// abandoned as soon as a quotient coefficient exceeds it in magnitude.
std::optional<IntPoly> try_divexact(const IntPoly& a, const IntPoly& b,
                                    const Integer* coeff_bound = nullptr);

/// outer(inner(x))
IntPoly poly_compose(const IntPoly& outer, const IntPoly& inner);

// Number theory. All arguments are positive unless stated.

int mobius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
/// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);
/// Primes in the half-open interval [lo, hi), ascending.
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);
/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);
/// Prime factorization as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
/// Binomial coefficient as an exact integer.
Integer binomial(unsigned n, unsigned k);

}  // namespace amd

#endif  // AMD_ALGEBRA_HPP
