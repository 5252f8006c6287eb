#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "amd/cyclotomic.hpp"
#include "amd/structure.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace amd;
using amd::test::Gen;

namespace {

IntPoly power(const IntPoly& base, unsigned e) {
  IntPoly r{1};
  for (unsigned t = 0; t < e; ++t) r = poly_mul(r, base);
  return r;
}

// Permutation of 0..N-1 with the cycle type of `s`, cycles laid out
// consecutively.
std::vector<std::size_t> permutation_of(const CycleStructure& s) {
  std::vector<std::size_t> perm;
  for (const auto& [j, mj] : s.entries()) {
    for (std::uint64_t c = 0; c < mj; ++c) {
      const std::size_t base = perm.size();
      for (std::uint64_t t = 0; t < j; ++t) perm.push_back(base + (t + 1) % j);
    }
  }
  return perm;
}

// det(t I - M) at t = 0..N compared with the candidate polynomial; N + 1
// points pin a degree-N polynomial.
void check_char_poly(const std::vector<std::vector<Integer>>& m, const IntPoly& candidate) {
  const std::size_t n = m.size();
  REQUIRE(candidate.degree() == static_cast<int>(n));
  for (long t = 0; t <= static_cast<long>(n); ++t) {
    auto a = m;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? Integer(t) : Integer(0)) - m[i][j];
    }
    const Integer det = n <= 7 ? test::det_expand(a) : test::det_rational(a);
    REQUIRE(det == candidate.eval(Integer(t)));
  }
}

// Brute force over every m-vector on indices 2..d'-1: Sigma j m_j = N - k,
// every index j > 1 present equal to 2^t alpha for one alpha > 1 dividing
// d' - 1. Returned as "j:m" strings for set comparison.
std::set<std::string> brute_force_structures(std::uint64_t d_prime, unsigned k) {
  std::set<std::string> out;
  const std::uint64_t top = d_prime - 1;
  const Integer total = moore_sum(d_prime, k) - k;
  const std::uint64_t rest = total.get_ui();
  std::vector<std::uint64_t> m(top + 1, 0);
  std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t j, std::uint64_t left) {
    if (j > top) {
      if (left != 0) return;
      std::vector<std::uint64_t> used;
      for (std::uint64_t t = 2; t <= top; ++t) {
        if (m[t]) used.push_back(t);
      }
      bool ok = false;
      for (std::uint64_t alpha = 2; alpha <= top && !ok; ++alpha) {
        if (top % alpha) continue;
        ok = std::all_of(used.begin(), used.end(), [&](std::uint64_t t) {
          if (t % alpha) return false;
          const std::uint64_t q = t / alpha;
          return (q & (q - 1)) == 0;
        });
      }
      if (!ok || used.empty()) return;
      std::string key = "1:" + std::to_string(k);
      for (std::uint64_t t : used) key += "," + std::to_string(t) + ":" + std::to_string(m[t]);
      out.insert(key);
      return;
    }
    for (std::uint64_t c = 0; c * j <= left; ++c) {
      m[j] = c;
      rec(j + 1, left - c * j);
    }
    m[j] = 0;
  };
  if (top >= 2) rec(2, rest);
  return out;
}

}  // namespace

TEST_CASE("CycleStructure basics") {
  const CycleStructure s(3, {{1, 3}, {3, 27}});
  CHECK(s.order() == 84);
  CHECK(s.is_self_repeat());
  CHECK(s.to_string() == "1:3,3:27");
  CHECK(CycleStructure::parse(3, "1:3,3:27") == s);
  CHECK_THROWS(CycleStructure(3, {{0, 1}}));
  CHECK_THROWS(CycleStructure::parse(3, "1:3,3"));
  CHECK_THROWS(CycleStructure::parse(3, "1:3,1:4"));
}

TEST_CASE("m_of") {
  const CycleStructure s(3, {{1, 3}, {3, 27}});
  CHECK(m_of(s, 1) == 30);
  CHECK(m_of(s, 3) == 27);
  CHECK(m_of(s, 2) == 0);
  CHECK_THROWS(m_of(s, 0));
}

TEST_CASE("is_two_critical") {
  auto tc = is_two_critical(CycleStructure(5, {{1, 5}, {3, 27}}));
  CHECK(tc.two_critical);
  CHECK(tc.alpha == 3);
  tc = is_two_critical(CycleStructure(5, {{1, 5}, {2, 4}, {4, 1}}));
  CHECK(tc.two_critical);
  CHECK(tc.alpha == 2);
  CHECK_FALSE(is_two_critical(CycleStructure(5, {{1, 5}, {3, 1}, {5, 1}})).two_critical);
  CHECK_FALSE(is_two_critical(CycleStructure(5, {{1, 5}})).two_critical);
  tc = is_two_critical(CycleStructure(5, {{1, 5}, {6, 1}, {12, 2}}));
  CHECK(tc.two_critical);
  CHECK(tc.alpha == 6);
  tc = is_two_critical(CycleStructure(5, {{1, 5}, {3, 1}, {12, 2}}));
  CHECK(tc.two_critical);
  CHECK(tc.alpha == 3);
  CHECK_FALSE(is_two_critical(CycleStructure(5, {{1, 5}, {6, 1}, {9, 1}})).two_critical);
}

TEST_CASE("enumerate_structures examples") {
  const auto s43 = enumerate_structures(4, 3);
  REQUIRE(s43.size() == 1);
  CHECK(s43[0] == CycleStructure(3, {{1, 3}, {3, 27}}));

  const auto s52 = enumerate_structures(5, 2);
  std::set<std::string> got;
  for (const auto& s : s52) got.insert(s.to_string());
  // alpha = 2: 2 m_2 + 4 m_4 = 28, m_4 = 0..7 (8 solutions);
  // alpha = 4 is m_4 = 7, already the m_2 = 0 solution.
  CHECK(got.size() == 8);
  CHECK(got.count("1:2,4:7") == 1);
  CHECK(got.count("1:2,2:14") == 1);

  CHECK(enumerate_structures(2, 5).empty());
  CHECK_THROWS_AS(enumerate_structures(9, 4, 10), std::length_error);
}

TEST_CASE("enumerate_structures matches brute force") {
  for (std::uint64_t dp = 2; dp <= 7; ++dp) {
    for (unsigned k = 2; k <= (dp <= 4 ? 4u : 2u); ++k) {
      std::set<std::string> got;
      for (const auto& s : enumerate_structures(dp, k)) {
        CHECK(got.insert(s.to_string()).second);
        CHECK(s.order() == moore_sum(dp, k));
        const auto tc = is_two_critical(s);
        CHECK(tc.two_critical);
        CHECK((dp - 1) % tc.alpha == 0);
        CHECK(s.m(1) == k);
      }
      CAPTURE(dp);
      CAPTURE(k);
      CHECK(got == brute_force_structures(dp, k));
    }
  }
}

TEST_CASE("order spectrum") {
  OrderSpectrum spectrum;
  spectrum.multiplicity = {{1, 2}, {3, 1}};
  CHECK(spectrum.consistent_with_degree(6));
  CHECK_FALSE(spectrum.consistent_with_degree(5));
  OrderSpectrum no_one;
  no_one.multiplicity = {{3, 1}};
  CHECK_FALSE(no_one.consistent_with_degree(4));
  CHECK(order_spectrum_feasible(CycleStructure(3, {{1, 3}, {3, 27}}), 4));
  // Order 1 is always available, so the filter never rejects for d >= 1.
  Gen gen(0xd3);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<std::uint64_t, std::uint64_t> entries{{1, 2}};
    for (int c = 0; c < 3; ++c) entries[static_cast<std::uint64_t>(gen.range(2, 40))] += 1;
    const CycleStructure s(2, entries);
    for (std::uint64_t d = 1; d <= 30; ++d) CHECK(order_spectrum_feasible(s, d));
  }
  CHECK_FALSE(order_spectrum_feasible(CycleStructure(3, {{1, 3}}), 0));
}

TEST_CASE("lcm_closure") {
  CHECK(lcm_closure({1, 3}) == std::set<std::uint64_t>{1, 3});
  CHECK(lcm_closure({1, 2, 4}) == std::set<std::uint64_t>{1, 2, 4});
  CHECK(lcm_closure({2, 3}) == std::set<std::uint64_t>{2, 3, 6});
  CHECK_THROWS(lcm_closure({}));

  Gen gen(0xd1);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::uint64_t> s;
    const int size = static_cast<int>(gen.range(1, 5));
    for (int t = 0; t < size; ++t) s.insert(static_cast<std::uint64_t>(gen.range(1, 30)));
    const auto c = lcm_closure(s);
    CHECK(std::includes(c.begin(), c.end(), s.begin(), s.end()));
    CHECK(lcm_closure(c) == c);
    for (auto a : c) {
      for (auto b : c) CHECK(c.count(std::lcm(a, b)) == 1);
    }
  }
  // 2-critical order sets are already closed.
  for (std::uint64_t alpha = 2; alpha <= 15; ++alpha) {
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::set<std::uint64_t> s{1};
      std::uint64_t top = 0;
      for (unsigned t = 0; t < 4; ++t) {
        if (mask & (1u << t)) {
          s.insert(alpha << t);
          top = t;
        }
      }
      for (auto v : lcm_closure(s)) {
        if (v == 1) continue;
        CHECK(v % alpha == 0);
        const std::uint64_t q = v / alpha;
        CHECK((q & (q - 1)) == 0);
        CHECK(q <= (1ULL << top));
      }
    }
  }
}

TEST_CASE("characteristic polynomial examples") {
  const CycleStructure s(3, {{1, 3}, {3, 27}});
  CHECK(char_poly_P(s) == poly_mul(power(IntPoly{-1, 1}, 3), power(IntPoly::x_pow_minus_one(3), 27)));
  const IntPoly jp = poly_mul(poly_mul(IntPoly{-85, 1}, power(IntPoly{-1, 1}, 29)),
                              power(cyclotomic(3), 27));
  CHECK(char_poly_JP(s) == jp);
  CHECK(char_poly_JP(s).degree() == 84);

  CHECK(char_poly_JP(CycleStructure(2, {{1, 2}})) == poly_mul(IntPoly{-3, 1}, IntPoly{-1, 1}));
  CHECK(char_poly_P(CycleStructure(5, {{1, 5}})) == power(IntPoly{-1, 1}, 5));
  CHECK_THROWS(char_poly_P(CycleStructure(5, {{1, 4}, {2, 1}})));
}

TEST_CASE("characteristic polynomials agree with explicit matrices for N <= 12") {
  Gen gen(0xd2);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 60; ++trial) {
    const unsigned k = static_cast<unsigned>(gen.range(1, 4));
    std::map<std::uint64_t, std::uint64_t> entries{{1, k}};
    std::uint64_t n = k;
    const int cycles = static_cast<int>(gen.range(0, 4));
    for (int c = 0; c < cycles; ++c) {
      const auto j = static_cast<std::uint64_t>(gen.range(2, 6));
      if (n + j > 12) break;
      ++entries[j];
      n += j;
    }
    const CycleStructure s(k, entries);
    const auto perm = permutation_of(s);
    std::vector<std::vector<Integer>> p(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t v = 0; v < n; ++v) p[v][perm[v]] = 1;
    check_char_poly(p, char_poly_P(s));
    auto jp = p;
    for (auto& row : jp) {
      for (auto& x : row) x += 1;
    }
    check_char_poly(jp, char_poly_JP(s));
    ++checked;
  }
  CHECK(checked >= 40);
}
