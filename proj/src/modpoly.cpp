#include "amd/modpoly.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <limits>

namespace amd {

namespace {

// Number of products (p-1)^2 that fit in a word on top of a value < p.
std::uint64_t lazy_budget(std::uint64_t p) {
  const std::uint64_t sq = (p - 1) * (p - 1);
  if (sq == 0) return std::numeric_limits<std::uint64_t>::max();
  return (std::numeric_limits<std::uint64_t>::max() - p) / sq;
}

// x mod p for x < 2^64 without a hardware division.
class Barrett {
 public:
  explicit Barrett(std::uint64_t p) : p_(p), m_(~std::uint64_t{0} / p) {}
  std::uint64_t operator()(std::uint64_t x) const {
    const auto q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * m_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return r;
  }

 private:
  std::uint64_t p_, m_;
};

void reduce_all(std::vector<std::uint64_t>& v, std::size_t n, std::uint64_t p) {
  const Barrett red(p);
  for (std::size_t i = 0; i < n; ++i) v[i] = red(v[i]);
}

// Kronecker substitution: both operands are packed into big integers with
// slots wide enough for n * (p-1)^2, multiplied by GMP, and unpacked.
constexpr std::size_t kKroneckerThreshold = 48;

std::vector<std::uint64_t> kronecker_mul(const std::vector<std::uint64_t>& a,
                                         const std::vector<std::uint64_t>& b,
                                         std::uint64_t p) {
  const std::size_t len = std::min(a.size(), b.size());
  const unsigned __int128 bound =
      static_cast<unsigned __int128>(len) * (p - 1) * (p - 1);
  std::size_t bits = 1;
  while (bits < 128 && (bound >> bits) != 0) ++bits;
  const std::size_t slot = (bits + 31) / 32;  // 32-bit words per slot

  auto pack = [&](const std::vector<std::uint64_t>& v, mpz_class& z) {
    std::vector<std::uint32_t> words(v.size() * slot, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      words[i * slot] = static_cast<std::uint32_t>(v[i]);
      if (slot > 1) words[i * slot + 1] = static_cast<std::uint32_t>(v[i] >> 32);
    }
    mpz_import(z.get_mpz_t(), words.size(), -1, sizeof(std::uint32_t), 0, 0,
               words.data());
  };
  mpz_class za, zb;
  pack(a, za);
  pack(b, zb);
  mpz_class prod = za * zb;

  const std::size_t out_len = a.size() + b.size() - 1;
  std::vector<std::uint32_t> words(out_len * slot + 1, 0);
  std::size_t count = 0;
  mpz_export(words.data(), &count, -1, sizeof(std::uint32_t), 0, 0, prod.get_mpz_t());
  std::vector<std::uint64_t> out(out_len);
  const Barrett red(p);
  for (std::size_t i = 0; i < out_len; ++i) {
    unsigned __int128 v = 0;
    for (std::size_t w = slot; w-- > 0;) v = (v << 32) | words[i * slot + w];
    out[i] = slot <= 2 ? red(static_cast<std::uint64_t>(v))
                       : static_cast<std::uint64_t>(v % p);
  }
  return out;
}

void check_modulus(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 32)) {
    throw std::invalid_argument("modulus must lie in [2, 2^32)");
  }
}

}  // namespace

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("element is not invertible");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

ModPoly::ModPoly(std::vector<std::uint64_t> coeffs, std::uint64_t p)
    : c_(std::move(coeffs)), p_(p) {
  check_modulus(p);
  const Barrett red(p_);
  for (auto& c : c_) {
    if (c >= p_) c = red(c);
  }
  normalize();
}

ModPoly ModPoly::reduce(const IntPoly& f, std::uint64_t p) {
  check_modulus(p);
  std::vector<std::uint64_t> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    v[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
  }
  return ModPoly(std::move(v), p);
}

ModPoly ModPoly::constant(std::uint64_t c, std::uint64_t p) {
  return ModPoly({c}, p);
}

ModPoly ModPoly::x_pow(std::size_t n, std::uint64_t p) {
  std::vector<std::uint64_t> v(n + 1, 0);
  v[n] = 1;
  return ModPoly(std::move(v), p);
}

void ModPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly ModPoly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  return scaled(inv_mod(c_.back(), p_));
}

ModPoly ModPoly::scaled(std::uint64_t s) const {
  const Barrett red(p_);
  std::vector<std::uint64_t> v(c_);
  for (auto& c : v) c = red(c * s);
  return ModPoly(std::move(v), p_);
}

ModPoly ModPoly::derivative() const {
  if (c_.size() <= 1) return ModPoly({}, p_);
  std::vector<std::uint64_t> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * (i % p_) % p_;
  return ModPoly(std::move(v), p_);
}

IntPoly ModPoly::lift() const {
  std::vector<Integer> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    v[i] = static_cast<unsigned long>(c_[i]);
  }
  return IntPoly(std::move(v));
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
  const std::uint64_t p = a.p_;
  std::vector<std::uint64_t> v(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a[i] + b[i]) % p;
  return ModPoly(std::move(v), p);
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
  const std::uint64_t p = a.p_;
  std::vector<std::uint64_t> v(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a[i] + p - b[i]) % p;
  return ModPoly(std::move(v), p);
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
  const std::uint64_t p = a.p_;
  if (a.is_zero() || b.is_zero()) return ModPoly({}, p);
  if (std::min(a.size(), b.size()) >= kKroneckerThreshold) {
    return ModPoly(kronecker_mul(a.c_, b.c_, p), p);
  }
  const std::uint64_t budget = lazy_budget(p);
  std::vector<std::uint64_t> out(a.size() + b.size() - 1, 0);
  std::uint64_t rows = 0;
  const std::uint64_t* bp = b.c_.data();
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t ai = a.c_[i];
    if (ai == 0) continue;
    std::uint64_t* o = out.data() + i;
    for (std::size_t j = 0; j < nb; ++j) o[j] += ai * bp[j];
    if (++rows >= budget) {
      reduce_all(out, out.size(), p);
      rows = 0;
    }
  }
  return ModPoly(std::move(out), p);
}

std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  const std::uint64_t p = b.modulus();
  if (a.degree() < b.degree()) return {ModPoly({}, p), a};
  const std::uint64_t inv = inv_mod(b.leading(), p);
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<std::uint64_t> bm(db);
  for (std::size_t j = 0; j < db; ++j) bm[j] = b[j] * inv % p;

  const std::uint64_t budget = lazy_budget(p);
  const Barrett red(p);
  std::vector<std::uint64_t> acc(a.coeffs());
  std::vector<std::uint64_t> q(a.size() - db, 0);
  std::uint64_t steps = 0;
  for (std::size_t i = acc.size(); i-- > db;) {
    const std::uint64_t t = red(acc[i]);
    acc[i] = 0;
    if (t == 0) continue;
    q[i - db] = red(t * inv);
    const std::uint64_t c = p - t;
    std::uint64_t* o = acc.data() + (i - db);
    for (std::size_t j = 0; j < db; ++j) o[j] += c * bm[j];
    if (++steps >= budget) {
      reduce_all(acc, i, p);
      steps = 0;
    }
  }
  acc.resize(db);
  reduce_all(acc, db, p);
  return {ModPoly(std::move(q), p), ModPoly(std::move(acc), p)};
}

ModPoly rem(const ModPoly& a, const ModPoly& b) {
  if (a.degree() < b.degree()) return a;
  return divrem(a, b).second;
}

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
  ModPoly x = a, y = b;
  while (!y.is_zero()) {
    ModPoly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : x.monic();
}

ExtGcd ext_gcd(const ModPoly& a, const ModPoly& b) {
  const std::uint64_t p = a.modulus();
  ModPoly r0 = a, r1 = b;
  ModPoly s0 = ModPoly::constant(1, p), s1({}, p);
  ModPoly t0({}, p), t1 = ModPoly::constant(1, p);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    ModPoly s2 = s0 - q * s1;
    ModPoly t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const std::uint64_t inv = inv_mod(r0.leading(), p);
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

ModPoly powmod(const ModPoly& base, const Integer& e, const ModPoly& m) {
  if (m.degree() <= 0) throw std::invalid_argument("modulus must be nonconstant");
  return ModReducer(m).powmod(base, e);
}

ModPoly ModReducer::powmod(const ModPoly& base, const Integer& e) const {
  const std::uint64_t p = m_.modulus();
  ModPoly result = rem(ModPoly::constant(1, p), m_);
  ModPoly b = rem(base, m_);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b);
  }
  return result;
}

namespace {

ModPoly truncated(const ModPoly& a, std::size_t len) {
  std::vector<std::uint64_t> v(a.coeffs().begin(),
                               a.coeffs().begin() + std::min(len, a.size()));
  return ModPoly(std::move(v), a.modulus());
}

ModPoly reversed(const ModPoly& a, std::size_t len) {
  std::vector<std::uint64_t> v(len, 0);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) v[len - 1 - i] = a[i];
  return ModPoly(std::move(v), a.modulus());
}

}  // namespace

ModReducer::ModReducer(const ModPoly& m) : m_(m.monic()) {
  const std::uint64_t p = m_.modulus();
  const std::size_t n = static_cast<std::size_t>(std::max(m_.degree(), 0));
  precision_ = n > 1 ? n - 1 : 0;
  if (precision_ == 0) return;
  // Newton iteration for 1 / rev(m) mod x^precision.
  const ModPoly rev = reversed(m_, n + 1);
  ModPoly inv = ModPoly::constant(1, p);
  const ModPoly two = ModPoly::constant(2, p);
  for (std::size_t prec = 1; prec < precision_;) {
    prec = std::min(2 * prec, precision_);
    ModPoly e = truncated(truncated(rev, prec) * inv, prec);
    inv = truncated(inv * (two - e), prec);
  }
  inv_rev_ = std::move(inv);
}

ModPoly ModReducer::reduce(const ModPoly& a) const {
  const int n = m_.degree();
  if (a.degree() < n) return a;
  const std::size_t qlen = static_cast<std::size_t>(a.degree() - n + 1);
  if (qlen > precision_) return rem(a, m_);
  const std::size_t alen = a.size();
  ModPoly ra = truncated(reversed(a, alen), qlen);
  ModPoly q = reversed(truncated(ra * inv_rev_, qlen), qlen);
  return truncated(a - q * m_, static_cast<std::size_t>(n));
}

ModPoly ModReducer::mulmod(const ModPoly& a, const ModPoly& b) const {
  return reduce(a * b);
}

FrobeniusMap::FrobeniusMap(const ModPoly& f) : f_(f.monic()) {
  const std::uint64_t p = f_.modulus();
  n_ = static_cast<std::size_t>(std::max(f_.degree(), 0));
  rows_.assign(n_ * n_, 0);
  if (n_ == 0) return;
  rows_[0] = 1;
  if (n_ == 1) return;

  if (p <= 2 * n_) {
    // Walk x^j for j up to (n-1)p by repeated shifting, keeping every
    // p-th power.
    const std::uint64_t budget = lazy_budget(p);
    std::vector<std::uint64_t> acc(n_, 0);
    acc[0] = 1;
    std::uint64_t steps = 0;
    const std::uint64_t* fc = f_.coeffs().data();
    const std::uint64_t total = static_cast<std::uint64_t>(n_ - 1) * p;
    for (std::uint64_t s = 1; s <= total; ++s) {
      const std::uint64_t top = acc[n_ - 1] % p;
      std::memmove(acc.data() + 1, acc.data(), (n_ - 1) * sizeof(std::uint64_t));
      acc[0] = 0;
      if (top != 0) {
        const std::uint64_t c = p - top;
        for (std::size_t j = 0; j < n_; ++j) acc[j] += c * fc[j];
      }
      if (++steps >= budget) {
        reduce_all(acc, n_, p);
        steps = 0;
      }
      if (s % p == 0) {
        reduce_all(acc, n_, p);
        steps = 0;
        std::copy(acc.begin(), acc.end(), rows_.begin() + (s / p) * n_);
      }
    }
  } else {
    const ModReducer red(f_);
    ModPoly xp = red.powmod(ModPoly::x_pow(1, p), Integer(static_cast<unsigned long>(p)));
    ModPoly cur = ModPoly::constant(1, p);
    for (std::size_t i = 1; i < n_; ++i) {
      cur = red.mulmod(cur, xp);
      std::copy(cur.coeffs().begin(), cur.coeffs().end(), rows_.begin() + i * n_);
    }
  }
}

ModPoly FrobeniusMap::apply(const ModPoly& h) const {
  const std::uint64_t p = f_.modulus();
  assert(h.degree() < static_cast<int>(n_) || n_ == 0);
  const std::uint64_t budget = lazy_budget(p);
  std::vector<std::uint64_t> out(n_, 0);
  std::uint64_t rows = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const std::uint64_t hi = h[i];
    if (hi == 0) continue;
    const std::uint32_t* r = rows_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) out[j] += hi * r[j];
    if (++rows >= budget) {
      reduce_all(out, n_, p);
      rows = 0;
    }
  }
  return ModPoly(std::move(out), p);
}

namespace {

// For f with f' = 0: f = g(x^p) = g(x)^p over F_p.
ModPoly pth_root(const ModPoly& f) {
  const std::uint64_t p = f.modulus();
  std::vector<std::uint64_t> v(f.size() / p + 1, 0);
  for (std::size_t i = 0; i < f.size(); i += p) v[i / p] = f[i];
  return ModPoly(std::move(v), p);
}

}  // namespace

std::vector<std::pair<ModPoly, unsigned>> squarefree_decomposition(
    const ModPoly& f0) {
  std::vector<std::pair<ModPoly, unsigned>> out;
  ModPoly f = f0.monic();
  if (f.degree() <= 0) return out;
  const std::uint64_t p = f.modulus();

  ModPoly c = gcd(f, f.derivative());
  ModPoly w = divrem(f, c).first;
  unsigned i = 1;
  while (!w.is_one()) {
    ModPoly y = gcd(w, c);
    ModPoly z = divrem(w, y).first;
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = std::move(y);
    c = divrem(c, w).first;
  }
  if (c.degree() > 0) {
    for (auto& [g, e] : squarefree_decomposition(pth_root(c))) {
      out.emplace_back(g, e * static_cast<unsigned>(p));
    }
  }
  return out;
}

std::vector<std::pair<unsigned, ModPoly>> distinct_degree_factorization(
    const ModPoly& f, const FrobeniusMap& frob) {
  // Gcds are batched: the product of (x^(p^i) - x) over a block of i is
  // accumulated mod g and only its gcd with g is taken, then split inside
  // the block when nontrivial.
  constexpr unsigned kBlock = 24;
  std::vector<std::pair<unsigned, ModPoly>> out;
  const std::uint64_t p = f.modulus();
  ModPoly g = f.monic();
  const ModPoly x = ModPoly::x_pow(1, p);
  ModPoly h = rem(x, frob.modulus_poly());
  unsigned i = 1;
  std::vector<ModPoly> block;
  while (g.degree() >= 2 * static_cast<int>(i)) {
    const ModReducer red(g);
    const bool same = g == frob.modulus_poly();
    ModPoly prod = ModPoly::constant(1, p);
    block.clear();
    for (unsigned j = 0; j < kBlock && g.degree() >= 2 * static_cast<int>(i + j); ++j) {
      h = frob.apply(h);
      ModPoly hg = same ? h : red.reduce(h);
      block.push_back(hg - x);
      prod = red.mulmod(prod, block.back());
    }
    ModPoly t = gcd(g, prod);
    if (t.degree() > 0) {
      for (unsigned j = 0; j < block.size() && t.degree() > 0; ++j) {
        ModPoly tj = gcd(t, rem(block[j], t));
        if (tj.degree() <= 0) continue;
        t = divrem(t, tj).first;
        g = divrem(g, tj).first;
        out.emplace_back(i + j, std::move(tj));
      }
    }
    i += static_cast<unsigned>(block.size());
  }
  if (g.degree() > 0) out.emplace_back(static_cast<unsigned>(g.degree()), g);
  return out;
}

std::vector<ModPoly> equal_degree_factorization(const ModPoly& g0, unsigned d,
                                                const FrobeniusMap& frob,
                                                std::mt19937_64& rng) {
  const std::uint64_t p = g0.modulus();
  if (p == 2) throw std::invalid_argument("equal-degree splitting needs odd p");
  ModPoly g = g0.monic();
  if (g.degree() == static_cast<int>(d)) return {g};

  const ModPoly& f = frob.modulus_poly();
  std::uniform_int_distribution<std::uint64_t> coin(0, p - 1);
  const Integer half = Integer(static_cast<unsigned long>((p - 1) / 2));
  const ModReducer red(g);
  while (true) {
    std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(g.degree()));
    for (auto& c : coeffs) c = coin(rng);
    ModPoly a(std::move(coeffs), p);
    if (a.degree() <= 0) continue;
    // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
    ModPoly norm = a;
    ModPoly conj = a;
    for (unsigned j = 1; j < d; ++j) {
      conj = frob.apply(rem(conj, f));
      norm = red.mulmod(norm, red.reduce(conj));
    }
    ModPoly b = red.powmod(norm, half);
    ModPoly split = gcd(g, b - ModPoly::constant(1, p));
    if (split.degree() <= 0 || split.degree() == g.degree()) continue;
    ModPoly other = divrem(g, split).first;
    auto left = equal_degree_factorization(split, d, frob, rng);
    auto right = equal_degree_factorization(other, d, frob, rng);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
}

}  // namespace amd
