#include "amd/structure.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "amd/cyclotomic.hpp"

namespace amd {

CycleStructure::CycleStructure(unsigned k, std::map<std::uint64_t, std::uint64_t> entries)
    : k_(k), entries_(std::move(entries)) {
  for (const auto& [j, mj] : entries_) {
    if (j == 0 || mj == 0) throw std::invalid_argument("cycle lengths and counts must be positive");
    N_ += Integer(static_cast<unsigned long>(j)) * static_cast<unsigned long>(mj);
  }
}

std::uint64_t CycleStructure::m(std::uint64_t j) const {
  auto it = entries_.find(j);
  return it == entries_.end() ? 0 : it->second;
}

bool CycleStructure::is_self_repeat() const { return m(1) == k_; }

std::string CycleStructure::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, mj] : entries_) {
    if (!first) os << ',';
    os << j << ':' << mj;
    first = false;
  }
  return os.str();
}

CycleStructure CycleStructure::parse(unsigned k, const std::string& text) {
  std::map<std::uint64_t, std::uint64_t> entries;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected j:m_j, got " + item);
    std::uint64_t j = std::stoull(item.substr(0, colon));
    std::uint64_t mj = std::stoull(item.substr(colon + 1));
    if (!entries.emplace(j, mj).second) throw std::invalid_argument("repeated index");
  }
  return CycleStructure(k, std::move(entries));
}

bool OrderSpectrum::consistent_with_degree(std::uint64_t d) const {
  if (!multiplicity.contains(1)) return false;
  Integer sum = 1;
  for (const auto& [s, n] : multiplicity) {
    sum += Integer(static_cast<unsigned long>(s)) * static_cast<unsigned long>(n);
  }
  return sum == static_cast<unsigned long>(d);
}

bool order_spectrum_feasible(const CycleStructure& s, std::uint64_t d) {
  if (d == 0) return false;
  const std::uint64_t target = d - 1;
  std::vector<bool> reach(target + 1, false);
  reach[0] = true;
  std::vector<std::uint64_t> orders{1};
  for (const auto& [j, mj] : s.entries()) {
    if (j > 1) orders.push_back(j);
  }
  for (std::uint64_t v = 1; v <= target; ++v) {
    for (std::uint64_t o : orders) {
      if (o <= v && reach[v - o]) {
        reach[v] = true;
        break;
      }
    }
  }
  return reach[target];
}

std::uint64_t m_of(const CycleStructure& s, std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("m(i) needs i >= 1");
  std::uint64_t total = 0;
  for (const auto& [j, mj] : s.entries()) {
    if (j % i == 0) total += mj;
  }
  return total;
}

namespace {

std::uint64_t odd_part(std::uint64_t j) {
  while (j % 2 == 0) j /= 2;
  return j;
}

bool is_power_of_two_multiple(std::uint64_t j, std::uint64_t alpha) {
  if (j % alpha != 0) return false;
  std::uint64_t q = j / alpha;
  return (q & (q - 1)) == 0;
}

IntPoly poly_pow(IntPoly base, std::uint64_t e) {
  IntPoly result{1};
  while (e > 0) {
    if (e & 1) result = poly_mul(result, base);
    e >>= 1;
    if (e > 0) base = poly_mul(base, base);
  }
  return result;
}

}  // namespace

std::optional<std::uint64_t> alpha_normal_form(const CycleStructure& s) {
  std::optional<std::uint64_t> least_odd_part, least_index;
  bool any_odd = false;
  for (const auto& [j, mj] : s.entries()) {
    if (j <= 1) continue;
    if (!least_index) least_index = j;
    any_odd = any_odd || j % 2 == 1;
    const std::uint64_t o = odd_part(j);
    if (!least_odd_part || o < *least_odd_part) least_odd_part = o;
  }
  if (!least_index) return std::nullopt;
  return any_odd ? least_odd_part : least_index;
}

TwoCriticality is_two_critical(const CycleStructure& s) {
  auto alpha = alpha_normal_form(s);
  if (!alpha || *alpha <= 1) return {};
  for (const auto& [j, mj] : s.entries()) {
    if (j > 1 && !is_power_of_two_multiple(j, *alpha)) return {};
  }
  return {true, *alpha};
}

Integer moore_sum(std::uint64_t d_prime, unsigned k) {
  Integer sum = 0, power = 1;
  for (unsigned t = 1; t <= k; ++t) {
    power *= static_cast<unsigned long>(d_prime);
    sum += power;
  }
  return sum;
}

namespace {

struct Enumerator {
  unsigned k;
  std::uint64_t d_prime;
  std::uint64_t alpha;
  std::vector<std::uint64_t> indices;
  std::vector<std::uint64_t> counts;
  std::size_t limit;
  std::vector<CycleStructure>* out;

  void emit() {
    std::map<std::uint64_t, std::uint64_t> entries{{1, k}};
    for (std::size_t t = 0; t < indices.size(); ++t) {
      if (counts[t] > 0) entries[indices[t]] = counts[t];
    }
    CycleStructure s(k, std::move(entries));
    const auto tc = is_two_critical(s);
    // The same structure is reached from every alpha it is compatible with;
    // keep it only under its normal-form witness.
    if (!tc.two_critical || tc.alpha != alpha) return;
    if (!order_spectrum_feasible(s, d_prime)) return;
    if (out->size() >= limit) throw std::length_error("structure enumeration limit exceeded");
    out->push_back(std::move(s));
  }

  void run(std::size_t pos, const Integer& rest) {
    const Integer j = static_cast<unsigned long>(indices[pos]);
    if (pos + 1 == indices.size()) {
      if (!mpz_divisible_p(rest.get_mpz_t(), j.get_mpz_t())) return;
      Integer q = rest / j;
      if (!q.fits_ulong_p()) throw std::length_error("cycle count out of range");
      counts[pos] = q.get_ui();
      emit();
      return;
    }
    Integer top = rest / j;
    if (!top.fits_ulong_p()) throw std::length_error("cycle count out of range");
    for (std::uint64_t m = 0; m <= top.get_ui(); ++m) {
      counts[pos] = m;
      run(pos + 1, rest - j * static_cast<unsigned long>(m));
    }
  }
};

}  // namespace

std::vector<CycleStructure> enumerate_structures(std::uint64_t d_prime, unsigned k,
                                                 std::size_t limit) {
  if (d_prime < 2 || k < 2) throw std::invalid_argument("need d' >= 2 and k >= 2");
  std::vector<CycleStructure> out;
  const Integer rest = moore_sum(d_prime, k) - k;
  for (std::uint64_t alpha : divisors(d_prime - 1)) {
    if (alpha <= 1) continue;
    Enumerator e{k, d_prime, alpha, {}, {}, limit, &out};
    for (std::uint64_t j = alpha; j <= d_prime - 1; j *= 2) e.indices.push_back(j);
    e.counts.assign(e.indices.size(), 0);
    e.run(0, rest);
  }
  return out;
}

std::set<std::uint64_t> lcm_closure(const std::set<std::uint64_t>& s1) {
  if (s1.empty()) throw std::invalid_argument("lcm closure of the empty set");
  std::set<std::uint64_t> cur = s1;
  while (true) {
    std::set<std::uint64_t> next = cur;
    for (std::uint64_t a : cur) {
      for (std::uint64_t b : cur) next.insert(std::lcm(a, b));
    }
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

IntPoly char_poly_P(const CycleStructure& s) {
  if (!s.is_self_repeat()) throw std::invalid_argument("structure needs m_1 == k");
  IntPoly result{1};
  for (const auto& [j, mj] : s.entries()) {
    result = poly_mul(result, poly_pow(IntPoly::x_pow_minus_one(j), mj));
  }
  return result;
}

IntPoly char_poly_JP(const CycleStructure& s) {
  if (!s.is_self_repeat()) throw std::invalid_argument("structure needs m_1 == k");
  const Integer n_plus_one = s.order() + 1;
  IntPoly result = IntPoly(std::vector<Integer>{-n_plus_one, Integer(1)});
  result = poly_mul(result, poly_pow(IntPoly{-1, 1}, m_of(s, 1) - 1));
  std::set<std::uint64_t> orders;
  for (const auto& [j, mj] : s.entries()) {
    for (std::uint64_t i : divisors(j)) {
      if (i > 1) orders.insert(i);
    }
  }
  for (std::uint64_t i : orders) {
    result = poly_mul(result, poly_pow(cyclotomic(i), m_of(s, i)));
  }
  return result;
}

}  // namespace amd
