#include <random>

#include "amd/modpoly.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace amd;

namespace {

ModPoly random_mod(std::mt19937_64& rng, int degree, std::uint64_t p, bool monic = false) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = rng() % p;
  if (monic) c.back() = 1;
  while (c.back() == 0) c.back() = rng() % p;
  return ModPoly(std::move(c), p);
}

// Quadratic-time reference arithmetic with a division per step.
ModPoly naive_mul(const ModPoly& a, const ModPoly& b) {
  const std::uint64_t p = a.modulus();
  if (a.is_zero() || b.is_zero()) return ModPoly({}, p);
  std::vector<std::uint64_t> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j] % p) % p;
  }
  return ModPoly(std::move(c), p);
}

ModPoly naive_rem(ModPoly a, const ModPoly& m) {
  const std::uint64_t p = m.modulus();
  std::vector<std::uint64_t> r = a.coeffs();
  const std::uint64_t inv = inv_mod(m.leading(), p);
  const std::size_t dm = m.size() - 1;
  while (r.size() > dm) {
    const std::uint64_t f = r.back() * inv % p;
    const std::size_t shift = r.size() - 1 - dm;
    for (std::size_t t = 0; t <= dm; ++t) r[shift + t] = (r[shift + t] + (p - f) * m[t]) % p;
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return ModPoly(std::move(r), p);
}

bool has_root(const ModPoly& f) {
  const std::uint64_t p = f.modulus();
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t t = f.size(); t-- > 0;) v = (v * x + f[t]) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("ModPoly reduction keeps residues in [0, p)") {
  const IntPoly f{-7, 5, 0, 12};
  const ModPoly g = ModPoly::reduce(f, 5);
  CHECK(g.coeffs() == std::vector<std::uint64_t>{3, 0, 0, 2});
  CHECK(ModPoly::reduce(IntPoly{5, 10}, 5).is_zero());
  CHECK(inv_mod(3, 7) == 5);
}

TEST_CASE("multiplication matches schoolbook across sizes and primes") {
  std::mt19937_64 rng(0xb1);
  for (std::uint64_t p : {2ULL, 3ULL, 101ULL, 65537ULL, 4294967291ULL}) {
    for (int degree : {0, 1, 5, 47, 48, 120, 400}) {
      const ModPoly a = random_mod(rng, degree, p);
      const ModPoly b = random_mod(rng, degree + 7, p);
      REQUIRE(a * b == naive_mul(a, b));
    }
  }
}

TEST_CASE("divrem, gcd, and ext_gcd") {
  std::mt19937_64 rng(0xb2);
  for (std::uint64_t p : {3ULL, 101ULL, 1000003ULL}) {
    for (int trial = 0; trial < 30; ++trial) {
      const ModPoly a = random_mod(rng, static_cast<int>(rng() % 60), p);
      const ModPoly b = random_mod(rng, static_cast<int>(rng() % 30), p);
      const auto [q, r] = divrem(a, b);
      CHECK(r.degree() < b.degree());
      CHECK(q * b + r == a);
      CHECK(r == naive_rem(a, b));

      const ModPoly c = random_mod(rng, 3, p, true);
      const ExtGcd e = ext_gcd(a * c, b * c);
      CHECK(e.s * (a * c) + e.t * (b * c) == e.g);
      CHECK(rem(a * c, e.g).is_zero());
      CHECK(rem(b * c, e.g).is_zero());
      CHECK(e.g == gcd(a * c, b * c));
    }
  }
}

TEST_CASE("ModReducer agrees with plain remainder and powmod") {
  std::mt19937_64 rng(0xb3);
  for (std::uint64_t p : {101ULL, 65537ULL}) {
    for (int degree : {1, 2, 17, 90, 300}) {
      const ModPoly m = random_mod(rng, degree, p, true);
      const ModReducer red(m);
      for (int trial = 0; trial < 5; ++trial) {
        const ModPoly a = random_mod(rng, 2 * degree - 2 + (degree == 1 ? 1 : 0), p);
        const ModPoly b = random_mod(rng, degree - 1, p);
        REQUIRE(red.reduce(a) == naive_rem(a, m));
        REQUIRE(red.mulmod(b, b) == naive_rem(naive_mul(b, b), m));
      }
      // x^(p^2) by repeated p-th powers against the one-shot power.
      const ModPoly x = ModPoly::x_pow(1, p);
      ModPoly step = red.powmod(x, Integer(static_cast<unsigned long>(p)));
      step = red.powmod(step, Integer(static_cast<unsigned long>(p)));
      CHECK(step == powmod(x, Integer(static_cast<unsigned long>(p * p)), m));
      ModPoly slow = ModPoly::constant(1, p);
      for (int e = 0; e < 37; ++e) slow = naive_rem(naive_mul(slow, x), m);
      CHECK(red.powmod(x, Integer(37)) == slow);
    }
  }
}

TEST_CASE("Frobenius map is h -> h^p mod f") {
  std::mt19937_64 rng(0xb4);
  for (std::uint64_t p : {3ULL, 101ULL, 257ULL}) {
    const ModPoly f = random_mod(rng, 40, p, true);
    const FrobeniusMap frob(f);
    for (int trial = 0; trial < 5; ++trial) {
      const ModPoly h = random_mod(rng, 39, p);
      CHECK(frob.apply(h) == powmod(h, Integer(static_cast<unsigned long>(p)), f));
    }
  }
}

TEST_CASE("squarefree decomposition reconstructs the input") {
  std::mt19937_64 rng(0xb5);
  for (std::uint64_t p : {3ULL, 5ULL, 101ULL}) {
    const ModPoly a = random_mod(rng, 4, p, true);
    const ModPoly b = random_mod(rng, 3, p, true);
    const ModPoly f = a * a * a * b;
    ModPoly prod = ModPoly::constant(1, p);
    for (const auto& [g, e] : squarefree_decomposition(f)) {
      CHECK(gcd(g, g.derivative()).is_one());
      for (unsigned t = 0; t < e; ++t) prod = prod * g;
    }
    CHECK(prod == f);
  }
}

TEST_CASE("distinct- and equal-degree factorization split into irreducibles") {
  std::mt19937_64 rng(0xb6);
  for (std::uint64_t p : {7ULL, 101ULL, 1009ULL}) {
    for (int trial = 0; trial < 6; ++trial) {
      // A random squarefree monic polynomial of moderate degree.
      ModPoly f = random_mod(rng, 30, p, true);
      const ModPoly g = gcd(f, f.derivative());
      f = divrem(f, g).first.monic();
      const FrobeniusMap frob(f);
      ModPoly prod = ModPoly::constant(1, p);
      for (const auto& [d, gd] : distinct_degree_factorization(f, frob)) {
        CHECK(gd.degree() % static_cast<int>(d) == 0);
        const FrobeniusMap sub(gd);
        std::mt19937_64 split_rng(p + d);
        for (const auto& factor : equal_degree_factorization(gd, d, sub, split_rng)) {
          CHECK(factor.degree() == static_cast<int>(d));
          if (d == 2) CHECK_FALSE(has_root(factor));
          prod = prod * factor;
        }
      }
      CHECK(prod == f);
    }
  }
}

TEST_CASE("x^2 + 1 splits mod 5 and stays irreducible mod 3") {
  for (auto [p, expect] : {std::pair<std::uint64_t, int>{5, 2}, {3, 1}}) {
    const ModPoly f = ModPoly::reduce(IntPoly{1, 0, 1}, p);
    const FrobeniusMap frob(f);
    auto ddf = distinct_degree_factorization(f, frob);
    REQUIRE(ddf.size() == 1);
    CHECK(static_cast<int>(ddf[0].second.degree() / ddf[0].first) == expect);
  }
}
