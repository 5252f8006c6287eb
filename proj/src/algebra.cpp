#include "amd/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace amd {

namespace {

// Below this size schoolbook beats packing into one big integer.
constexpr std::size_t kKroneckerThreshold = 24;

std::size_t bit_length(std::size_t v) {
  std::size_t b = 0;
  while (v) {
    ++b;
    v >>= 1;
  }
  return b;
}

IntPoly schoolbook_mul(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Integer& ai = a.coeffs()[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), ai.get_mpz_t(),
                 b.coeffs()[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out));
}

// Packs |coefficients| into slots of `slot_words` 64-bit words and returns
// sum(sign_i * |c_i| * 2^(64*slot_words*i)).
Integer pack(const IntPoly& p, std::size_t slot_words) {
  std::vector<std::uint64_t> pos(p.size() * slot_words, 0);
  std::vector<std::uint64_t> neg(p.size() * slot_words, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Integer& c = p.coeffs()[i];
    int s = sgn(c);
    if (s == 0) continue;
    auto* dst = (s > 0 ? pos.data() : neg.data()) + i * slot_words;
    std::size_t count = 0;
    mpz_export(dst, &count, -1, sizeof(std::uint64_t), 0, 0, c.get_mpz_t());
    assert(count <= slot_words);
    if (s < 0) any_neg = true;
  }
  Integer result;
  mpz_import(result.get_mpz_t(), pos.size(), -1, sizeof(std::uint64_t), 0, 0,
             pos.data());
  if (any_neg) {
    Integer n;
    mpz_import(n.get_mpz_t(), neg.size(), -1, sizeof(std::uint64_t), 0, 0,
               neg.data());
    result -= n;
  }
  return result;
}

// Inverse of `pack` for balanced digits |c_i| < 2^(64*slot_words - 1).
IntPoly unpack(Integer value, std::size_t slot_words, std::size_t slots) {
  int sign = sgn(value);
  if (sign == 0) return {};
  if (sign < 0) value = -value;
  std::size_t count = 0;
  std::vector<std::uint64_t> words((mpz_sizeinbase(value.get_mpz_t(), 2) + 63) /
                                       64 +
                                   slot_words);
  mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0,
             value.get_mpz_t());
  words.resize(std::max(count, slots * slot_words) + slot_words, 0);

  const std::size_t bits = 64 * slot_words;
  Integer half, full;
  mpz_setbit(half.get_mpz_t(), bits - 1);
  mpz_setbit(full.get_mpz_t(), bits);

  std::vector<Integer> out(slots);
  bool carry = false;
  Integer u;
  for (std::size_t j = 0; j < slots; ++j) {
    mpz_import(u.get_mpz_t(), slot_words, -1, sizeof(std::uint64_t), 0, 0,
               words.data() + j * slot_words);
    if (carry) u += 1;
    if (u >= half) {
      u -= full;
      carry = true;
    } else {
      carry = false;
    }
    out[j] = sign > 0 ? u : Integer(-u);
  }
  assert(!carry);
  return IntPoly(std::move(out));
}

IntPoly kronecker_mul(const IntPoly& a, const IntPoly& b) {
  std::size_t bits = a.max_bits() + b.max_bits() +
                     bit_length(std::min(a.size(), b.size())) + 2;
  std::size_t slot_words = (bits + 63) / 64;
  Integer pa = pack(a, slot_words);
  Integer pb = pack(b, slot_words);
  Integer prod = pa * pb;
  return unpack(std::move(prod), slot_words, a.size() + b.size() - 1);
}

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const Integer& c) { return IntPoly({c}); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t degree) {
  std::vector<Integer> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::x_pow_minus_one(std::size_t n) {
  std::vector<Integer> v(n + 1);
  v[0] = -1;
  v[n] += 1;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Integer& IntPoly::operator[](std::size_t i) const {
  static const Integer zero = 0;
  return i < coeffs_.size() ? coeffs_[i] : zero;
}

const Integer& IntPoly::leading() const {
  assert(!coeffs_.empty());
  return coeffs_.back();
}

Integer IntPoly::eval(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  }
  return IntPoly(std::move(d));
}

Integer IntPoly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (!coeffs_.empty() && coeffs_.back() < 0) g = -g;
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  Integer g = content();
  std::vector<Integer> v(coeffs_);
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

std::size_t IntPoly::max_bits() const {
  std::size_t b = 0;
  for (const auto& c : coeffs_) {
    if (c != 0) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  }
  return b;
}

Integer IntPoly::l2_norm_ceil() const {
  Integer sq = 0;
  for (const auto& c : coeffs_) mpz_addmul(sq.get_mpz_t(), c.get_mpz_t(), c.get_mpz_t());
  Integer r;
  mpz_sqrt(r.get_mpz_t(), sq.get_mpz_t());
  if (r * r < sq) r += 1;
  return r;
}

std::string IntPoly::to_string(char var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator*=(const Integer& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

IntPoly operator-(IntPoly a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) { return poly_mul(a, b); }

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (std::min(a.size(), b.size()) < kKroneckerThreshold) {
    return schoolbook_mul(a, b);
  }
  return kronecker_mul(a, b);
}

std::optional<IntPoly> try_divexact(const IntPoly& a, const IntPoly& b,
                                    const Integer* coeff_bound) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  // Cheap rejection on the constant terms.
  if (b[0] != 0 && !mpz_divisible_p(a[0].get_mpz_t(), b[0].get_mpz_t())) {
    return std::nullopt;
  }
  const std::size_t db = static_cast<std::size_t>(b.degree());
  const Integer& lc = b.leading();
  std::vector<Integer> rem(a.coeffs());
  std::vector<Integer> q(a.size() - db);
  for (std::size_t i = q.size(); i-- > 0;) {
    Integer& top = rem[i + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_divexact(q[i].get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    if (coeff_bound && abs(q[i]) > *coeff_bound) return std::nullopt;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[i + j].get_mpz_t(), q[i].get_mpz_t(),
                 b.coeffs()[j].get_mpz_t());
    }
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (rem[i] != 0) return std::nullopt;
  }
  return IntPoly(std::move(q));
}

IntPoly poly_divexact(const IntPoly& a, const IntPoly& b) {
  auto q = try_divexact(a, b);
  if (!q) {
    throw NotDivisible("(" + a.to_string() + ") is not divisible by (" +
                       b.to_string() + ")");
  }
  return *std::move(q);
}

IntPoly poly_compose(const IntPoly& outer, const IntPoly& inner) {
  IntPoly acc;
  for (std::size_t i = outer.size(); i-- > 0;) {
    acc = acc * inner;
    acc += IntPoly::constant(outer.coeffs()[i]);
  }
  return acc;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(std::uint64_t n) {
  assert(n >= 1);
  int m = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

std::uint64_t euler_phi(std::uint64_t n) {
  assert(n >= 1);
  std::uint64_t r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set below 2^64.
  for (std::uint64_t a : {2, 325, 9375, 28178, 450775, 9780504, 1795265022}) {
    std::uint64_t x = powmod64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi <= lo) return out;
  // A plain sieve for the ranges used here; fall back to testing for
  // windows far from the origin.
  if (hi <= (1u << 26)) {
    std::vector<bool> comp(hi, false);
    for (std::uint64_t i = 2; i * i < hi; ++i) {
      if (comp[i]) continue;
      for (std::uint64_t j = i * i; j < hi; j += i) comp[j] = true;
    }
    for (std::uint64_t i = std::max<std::uint64_t>(lo, 2); i < hi; ++i) {
      if (!comp[i]) out.push_back(i);
    }
    return out;
  }
  for (std::uint64_t i = lo; i < hi; ++i) {
    if (is_prime(i)) out.push_back(i);
  }
  return out;
}

std::uint64_t next_prime(std::uint64_t n) {
  do {
    ++n;
  } while (!is_prime(n));
  return n;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace amd
