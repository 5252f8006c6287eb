#include <complex>
#include <numeric>

#include "amd/algebra.hpp"
#include "amd/cyclotomic.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace amd;
using amd::test::Gen;

namespace {

// Trial-division oracles, independent of the library routines.
bool prime_by_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

int mobius_by_trial(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t q = 2; q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    sign = -sign;
  }
  return sign;
}

std::uint64_t phi_by_count(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a <= n; ++a) count += std::gcd(a, n) == 1;
  return count;
}

IntPoly x_pow_minus_one(std::size_t n) { return IntPoly::x_pow_minus_one(n); }

}  // namespace

TEST_CASE("poly_mul examples") {
  CHECK(poly_mul(IntPoly{1, 1}, IntPoly{-1, 1}) == IntPoly{-1, 0, 1});
  CHECK(poly_mul(IntPoly{-1, 1}, IntPoly()).is_zero());
  CHECK(poly_mul(poly_mul(cyclotomic(1), cyclotomic(2)), cyclotomic(4)) == x_pow_minus_one(4));
}

TEST_CASE("poly_mul agrees with schoolbook product and is distributive") {
  Gen gen(0xa1);
  for (int trial = 0; trial < 200; ++trial) {
    const IntPoly a = gen.poly(static_cast<int>(gen.range(0, 32)), 1000000);
    const IntPoly b = gen.poly(static_cast<int>(gen.range(0, 32)), 1000000);
    const IntPoly c = gen.poly(static_cast<int>(gen.range(0, 32)), 1000000);
    const IntPoly ab = poly_mul(a, b);
    CHECK(ab == test::naive_mul(a, b));
    CHECK(ab.degree() == a.degree() + b.degree());
    CHECK(poly_mul(a, b + c) == ab + poly_mul(a, c));
  }
}

TEST_CASE("poly_mul on large operands matches schoolbook") {
  Gen gen(0xa2);
  for (int degree : {100, 257, 700}) {
    const IntPoly a = gen.poly(degree, 1 << 20);
    const IntPoly b = gen.poly(degree + 3, 1 << 20);
    CHECK(poly_mul(a, b) == test::naive_mul(a, b));
  }
}

TEST_CASE("poly_divexact") {
  CHECK(poly_divexact(IntPoly{-1, 0, 1}, IntPoly{-1, 1}) == IntPoly{1, 1});
  const IntPoly denom = poly_mul(poly_mul(IntPoly{-1, 1}, IntPoly{1, 1}), IntPoly{1, 1, 1});
  const IntPoly q = poly_divexact(x_pow_minus_one(6), denom);
  CHECK(q == IntPoly{1, -1, 1});
  CHECK(poly_mul(q, denom) == x_pow_minus_one(6));
  CHECK_THROWS_AS(poly_divexact(IntPoly{1, 0, 1}, IntPoly{-1, 1}), NotDivisible);
  CHECK_THROWS_AS(poly_divexact(IntPoly{1, 1}, IntPoly{0, 2}), NotDivisible);
  CHECK_FALSE(try_divexact(IntPoly{1, 0, 1}, IntPoly{-1, 1}).has_value());

  Gen gen(0xa3);
  for (int trial = 0; trial < 200; ++trial) {
    const IntPoly a = gen.poly(static_cast<int>(gen.range(0, 30)), 1000);
    const IntPoly b = gen.poly(static_cast<int>(gen.range(0, 30)), 1000);
    CHECK(poly_divexact(poly_mul(a, b), b) == a);
  }
}

TEST_CASE("poly_compose") {
  CHECK(poly_compose(IntPoly{1, 1}, IntPoly{1, 1, 1}) == IntPoly{2, 1, 1});
  CHECK(poly_compose(IntPoly{0, 0, 1}, IntPoly{1, 1}) == IntPoly{1, 2, 1});
  CHECK(poly_compose(cyclotomic(14), chain_poly(200)).degree() == 1200);

  Gen gen(0xa4);
  for (int trial = 0; trial < 50; ++trial) {
    const IntPoly outer = gen.poly(static_cast<int>(gen.range(1, 6)), 50);
    const IntPoly inner = gen.poly(static_cast<int>(gen.range(1, 6)), 50);
    const IntPoly c = poly_compose(outer, inner);
    CHECK(c.degree() == outer.degree() * inner.degree());
    for (long t = -3; t <= 3; ++t) CHECK(c.eval(t) == outer.eval(inner.eval(t)));
  }
}

TEST_CASE("mobius and euler_phi examples") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(14) == 6);
}

TEST_CASE("mobius and euler_phi against trial division") {
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    CHECK(mobius(n) == mobius_by_trial(n));
    CHECK(euler_phi(n) == phi_by_count(n));
  }
}

TEST_CASE("divisor sums of mobius and phi") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    long mu_sum = 0;
    std::uint64_t phi_sum = 0;
    for (std::uint64_t d : divisors(n)) {
      mu_sum += mobius(d);
      phi_sum += euler_phi(d);
    }
    REQUIRE(mu_sum == (n == 1 ? 1 : 0));
    REQUIRE(phi_sum == n);
  }
}

TEST_CASE("primes_in") {
  CHECK(primes_in(2, 12) == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  CHECK(primes_in(2, 3) == std::vector<std::uint64_t>{2});
  CHECK(primes_in(14, 17).empty());
  std::vector<std::uint64_t> expected;
  for (std::uint64_t n = 0; n < 5000; ++n) {
    if (prime_by_trial(n)) expected.push_back(n);
  }
  CHECK(primes_in(0, 5000) == expected);
}

TEST_CASE("is_prime is deterministic on 64-bit inputs") {
  for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime(n) == prime_by_trial(n));
  CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime(18446744073709551555ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(next_prime(100) == 101);
}

TEST_CASE("cyclotomic examples") {
  CHECK(cyclotomic(1) == IntPoly{-1, 1});
  CHECK(cyclotomic(2) == IntPoly{1, 1});
  const IntPoly phi6 = cyclotomic(6);
  CHECK(phi6 == IntPoly{1, -1, 1});
  CHECK(phi6 == poly_divexact(x_pow_minus_one(6),
                              poly_mul(poly_mul(cyclotomic(1), cyclotomic(2)), cyclotomic(3))));
  // Phi_105 is the first with a coefficient outside {-1, 0, 1}.
  CHECK(cyclotomic(105)[7] == -2);
}

TEST_CASE("product of Phi_d over d | n is x^n - 1 for n <= 300") {
  for (std::uint64_t n = 1; n <= 300; ++n) {
    IntPoly prod{1};
    for (std::uint64_t d : divisors(n)) prod = poly_mul(prod, cyclotomic(d));
    REQUIRE(prod == x_pow_minus_one(n));
    REQUIRE(static_cast<std::uint64_t>(cyclotomic(n).degree()) == euler_phi(n));
  }
}

TEST_CASE("chain_poly and build_F") {
  CHECK(chain_poly(1) == IntPoly{1, 1});
  CHECK(chain_poly(2) == IntPoly{1, 1, 1});
  const IntPoly c = chain_poly(17);
  CHECK(c.degree() == 17);
  for (const auto& coeff : c.coeffs()) CHECK(coeff == 1);

  CHECK(build_F(2, 2) == IntPoly{2, 1, 1});
  for (unsigned k = 1; k <= 200; ++k) {
    IntPoly expect = chain_poly(k);
    expect += IntPoly{1};
    REQUIRE(build_F(2, k) == expect);
  }
  const IntPoly f32 = build_F(3, 2);
  CHECK(f32.degree() == 4);
  CHECK(f32.eval(1) == 13);
  for (long t = -2; t <= 2; ++t) CHECK(f32.eval(t) == cyclotomic(3).eval(chain_poly(2).eval(t)));
}

TEST_CASE("build_F at t in {2,3} equals Phi_i((t^(k+1)-1)/(t-1))") {
  for (std::uint64_t i = 1; i <= 14; ++i) {
    for (unsigned k = 1; k <= 40; ++k) {
      const IntPoly f = build_F(i, k);
      REQUIRE(static_cast<std::uint64_t>(f.degree()) == euler_phi(i) * k);
      for (unsigned long t : {2UL, 3UL}) {
        Integer power;
        mpz_ui_pow_ui(power.get_mpz_t(), t, k + 1);
        const Integer chain = (power - 1) / (t - 1);
        REQUIRE(f.eval(Integer(t)) == cyclotomic(i).eval(chain));
      }
    }
  }
}

TEST_CASE("ramanujan_sum examples") {
  CHECK(ramanujan_sum(5, 6) == 1);
  CHECK(ramanujan_sum(2, 4) == -2);
  CHECK(ramanujan_sum(6, 6) == 2);
}

TEST_CASE("ramanujan_sum against numeric root sums for n, ell <= 60") {
  const double pi = std::acos(-1.0);
  for (std::uint64_t n = 1; n <= 60; ++n) {
    for (std::uint64_t ell = 1; ell <= 60; ++ell) {
      std::complex<double> sum = 0;
      for (std::uint64_t h = 1; h <= n; ++h) {
        if (std::gcd(h, n) != 1) continue;
        sum += std::polar(1.0, 2 * pi * static_cast<double>(h * ell % n) / static_cast<double>(n));
      }
      const auto s = ramanujan_sum(ell, n);
      REQUIRE(std::abs(sum.real() - static_cast<double>(s)) < 1e-6);
      REQUIRE(std::abs(sum.imag()) < 1e-6);
      if (std::gcd(ell, n) == 1) REQUIRE(s == mobius(n));
      REQUIRE(s == ramanujan_sum(ell + n, n));
    }
  }
}
