#include "amd/factor.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <random>

#include "amd/cyclotomic.hpp"
#include "amd/modpoly.hpp"

namespace amd {

unsigned prime_budget() {
  if (const char* env = std::getenv("AMD_PRIME_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return kDefaultPrimeBudget;
}

// Degree sets ------------------------------------------------------------

DegreeSet DegreeSet::full(unsigned n) {
  DegreeSet s;
  s.bits_.assign(n + 1, true);
  return s;
}

DegreeSet DegreeSet::subset_sums(std::span<const unsigned> degrees) {
  unsigned n = std::accumulate(degrees.begin(), degrees.end(), 0u);
  DegreeSet s;
  s.bits_.assign(n + 1, false);
  s.bits_[0] = true;
  unsigned reach = 0;
  for (unsigned d : degrees) {
    for (unsigned v = reach + 1; v-- > 0;) {
      if (s.bits_[v]) s.bits_[v + d] = true;
    }
    reach += d;
  }
  return s;
}

bool DegreeSet::is_trivial() const {
  for (std::size_t d = 1; d + 1 < bits_.size(); ++d) {
    if (bits_[d]) return false;
  }
  return true;
}

std::vector<unsigned> DegreeSet::values() const {
  std::vector<unsigned> out;
  for (std::size_t d = 0; d < bits_.size(); ++d) {
    if (bits_[d]) out.push_back(static_cast<unsigned>(d));
  }
  return out;
}

void DegreeSet::intersect(const DegreeSet& other) {
  if (other.bits_.size() != bits_.size()) {
    throw std::invalid_argument("degree sets of different polynomials");
  }
  for (std::size_t d = 0; d < bits_.size(); ++d) bits_[d] = bits_[d] && other.bits_[d];
}

// Modular factor degrees --------------------------------------------------

namespace {

std::vector<unsigned> ddf_degrees(const ModPoly& squarefree_monic) {
  std::vector<unsigned> out;
  if (squarefree_monic.degree() <= 0) return out;
  FrobeniusMap frob(squarefree_monic);
  for (auto& [d, g] : distinct_degree_factorization(squarefree_monic, frob)) {
    unsigned count = static_cast<unsigned>(g.degree()) / d;
    out.insert(out.end(), count, d);
  }
  return out;
}

}  // namespace

std::vector<unsigned> factor_mod_p(const IntPoly& f, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus is not prime");
  if (f.is_zero() || mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) {
    throw BadPrime("prime " + std::to_string(p) + " divides the leading coefficient");
  }
  ModPoly fp = ModPoly::reduce(f, p).monic();
  std::vector<unsigned> out;
  for (auto& [g, e] : squarefree_decomposition(fp)) {
    for (unsigned d : ddf_degrees(g)) out.insert(out.end(), e, d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PrimeProbe probe_prime(const IntPoly& f, std::uint64_t p) {
  PrimeProbe probe;
  probe.p = p;
  if (f.is_zero() || mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) return probe;
  ModPoly fp = ModPoly::reduce(f, p).monic();
  if (fp.degree() >= 1 && !gcd(fp, fp.derivative()).is_one()) return probe;
  probe.usable = true;
  probe.degrees = ddf_degrees(fp);
  std::sort(probe.degrees.begin(), probe.degrees.end());
  return probe;
}

DegreeSetResult degree_set(const IntPoly& f, std::span<const std::uint64_t> primes) {
  if (f.degree() < 1) throw std::invalid_argument("degree set of a constant");
  DegreeSetResult result;
  result.set = DegreeSet::full(static_cast<unsigned>(f.degree()));
  for (std::uint64_t p : primes) {
    PrimeProbe probe = probe_prime(f, p);
    if (!probe.usable) {
      result.primes_skipped.push_back(p);
      continue;
    }
    result.set.intersect(DegreeSet::subset_sums(probe.degrees));
    result.primes_used.push_back(p);
  }
  if (result.primes_used.empty()) throw NoUsablePrime("no supplied prime is usable");
  return result;
}

std::vector<std::uint64_t> IrreducibilityCertificate::primes_used() const {
  std::vector<std::uint64_t> out;
  for (const auto& pr : probes) out.push_back(pr.p);
  return out;
}

IrreducibilityCertificate certify_irreducible(const IntPoly& f, unsigned budget) {
  if (f.degree() < 1) throw std::invalid_argument("constant polynomial");
  IrreducibilityCertificate cert;
  const unsigned n = static_cast<unsigned>(f.degree());
  cert.set = DegreeSet::full(n);
  if (n == 1) {
    cert.irreducible = true;
    return cert;
  }
  std::uint64_t p = kFirstCertificatePrime - 1;
  // Guard against inputs that are not squarefree over Q, for which no prime
  // is ever usable.
  unsigned misses = 0;
  while (cert.probes.size() < budget && misses < 4 * budget + 64) {
    p = next_prime(p);
    PrimeProbe probe = probe_prime(f, p);
    if (!probe.usable) {
      ++misses;
      continue;
    }
    cert.set.intersect(DegreeSet::subset_sums(probe.degrees));
    cert.probes.push_back(std::move(probe));
    if (cert.set.is_trivial()) {
      cert.irreducible = true;
      break;
    }
  }
  return cert;
}

// Integer helpers for lifting ----------------------------------------------

namespace {

IntPoly reduce_mod(const IntPoly& a, const Integer& m) {
  std::vector<Integer> v(a.coeffs());
  for (auto& c : v) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  return IntPoly(std::move(v));
}

IntPoly symmetric_mod(const IntPoly& a, const Integer& m) {
  Integer half = m / 2;
  std::vector<Integer> v(a.coeffs());
  for (auto& c : v) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  return IntPoly(std::move(v));
}

IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const Integer& m) {
  return reduce_mod(a * b, m);
}

// Division by a polynomial that is monic modulo m.
std::pair<IntPoly, IntPoly> divrem_monic_mod(const IntPoly& a, const IntPoly& b,
                                             const Integer& m) {
  assert(!b.is_zero());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  if (a.degree() < b.degree()) return {IntPoly{}, reduce_mod(a, m)};
  std::vector<Integer> rem(a.coeffs());
  std::vector<Integer> q(a.size() - db);
  for (std::size_t i = q.size(); i-- > 0;) {
    Integer& top = rem[i + db];
    mpz_fdiv_r(top.get_mpz_t(), top.get_mpz_t(), m.get_mpz_t());
    if (top == 0) continue;
    q[i] = top;
    for (std::size_t j = 0; j < db; ++j) {
      mpz_submul(rem[i + j].get_mpz_t(), q[i].get_mpz_t(), b.coeffs()[j].get_mpz_t());
    }
    top = 0;
  }
  rem.resize(db);
  return {IntPoly(std::move(q)), reduce_mod(IntPoly(std::move(rem)), m)};
}

IntPoly from_mod(const ModPoly& a) { return a.lift(); }

// Binary factor tree for multifactor Hensel lifting. Each internal node
// keeps Bezout cofactors for its two children: s * left + t * right == 1.
struct HenselTree {
  struct Node {
    IntPoly g;
    IntPoly s, t;
    int left = -1, right = -1;
  };
  std::vector<Node> nodes;
  int root = -1;
  std::size_t leaves = 0;

  HenselTree(const std::vector<ModPoly>& factors) {
    leaves = factors.size();
    const std::uint64_t p = factors.front().modulus();
    std::vector<ModPoly> mod_g;
    using Item = std::pair<int, int>;  // (degree, node)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (const auto& u : factors) {
      nodes.push_back({from_mod(u), {}, {}, -1, -1});
      mod_g.push_back(u);
      queue.emplace(u.degree(), static_cast<int>(nodes.size()) - 1);
    }
    while (queue.size() > 1) {
      auto [da, a] = queue.top();
      queue.pop();
      auto [db, b] = queue.top();
      queue.pop();
      ModPoly prod = mod_g[a] * mod_g[b];
      ExtGcd eg = ext_gcd(mod_g[a], mod_g[b]);
      assert(eg.g.is_one());
      nodes.push_back({from_mod(prod), from_mod(eg.s), from_mod(eg.t), a, b});
      mod_g.push_back(prod);
      queue.emplace(da + db, static_cast<int>(nodes.size()) - 1);
    }
    root = queue.top().second;
    (void)p;
  }

  // One quadratic step: everything valid mod m becomes valid mod m2 = m^2.
  void lift(int idx, const IntPoly& target, const Integer& m2) {
    Node& node = nodes[idx];
    node.g = target;
    if (node.left < 0) return;
    const IntPoly g = nodes[node.left].g;
    const IntPoly h = nodes[node.right].g;
    const IntPoly& s = node.s;
    const IntPoly& t = node.t;

    IntPoly e = reduce_mod(target - g * h, m2);
    auto [q, r] = divrem_monic_mod(reduce_mod(s * e, m2), h, m2);
    IntPoly g2 = reduce_mod(g + t * e + q * g, m2);
    IntPoly h2 = reduce_mod(h + r, m2);

    IntPoly b = reduce_mod(s * g2 + t * h2 - IntPoly{1}, m2);
    auto [c, d] = divrem_monic_mod(reduce_mod(s * b, m2), h2, m2);
    IntPoly s2 = reduce_mod(s - d, m2);
    IntPoly t2 = reduce_mod(t - t * b - c * g2, m2);
    node.s = std::move(s2);
    node.t = std::move(t2);

    const int left = node.left, right = node.right;
    lift(left, g2, m2);
    lift(right, h2, m2);
  }

  std::vector<IntPoly> leaf_polys() const {
    std::vector<IntPoly> out;
    for (std::size_t i = 0; i < leaves; ++i) out.push_back(nodes[i].g);
    return out;
  }
};

}  // namespace

HenselLift hensel_lift(const IntPoly& f, const std::vector<ModPoly>& local, const Integer& needed) {
  if (local.empty()) throw std::invalid_argument("no local factors to lift");
  HenselLift out;
  out.modulus = static_cast<unsigned long>(local.front().modulus());
  out.exponent = 1;
  HenselTree tree(local);
  while (out.modulus < needed) {
    Integer m2 = out.modulus * out.modulus;
    Integer lc_inv;
    Integer lc_mod = f.leading();
    mpz_fdiv_r(lc_mod.get_mpz_t(), lc_mod.get_mpz_t(), m2.get_mpz_t());
    if (mpz_invert(lc_inv.get_mpz_t(), lc_mod.get_mpz_t(), m2.get_mpz_t()) == 0) {
      throw BadPrime("leading coefficient is not invertible");
    }
    IntPoly target = reduce_mod(f * lc_inv, m2);
    tree.lift(tree.root, target, m2);
    out.modulus = std::move(m2);
    out.exponent *= 2;
  }
  out.factors = tree.leaf_polys();
  return out;
}

namespace {

std::vector<ModPoly> local_factorization(const IntPoly& f, std::uint64_t p) {
  ModPoly fp = ModPoly::reduce(f, p).monic();
  FrobeniusMap frob(fp);
  // Fixed seed: certificates and timings must be reproducible.
  std::mt19937_64 rng(0x5eed0000ULL + p);
  std::vector<ModPoly> out;
  for (auto& [d, g] : distinct_degree_factorization(fp, frob)) {
    auto parts = equal_degree_factorization(g, d, frob, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

// Advances `idx` to the next s-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t s = idx.size();
  for (std::size_t i = s; i-- > 0;) {
    if (idx[i] < n - s + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Factorization zassenhaus(const IntPoly& f, std::span<const PrimeProbe> probes,
                         const DegreeSet* prune) {
  Factorization out;
  const unsigned n = static_cast<unsigned>(f.degree());
  for (const auto& pr : probes) out.primes_used.push_back(pr.p);

  const PrimeProbe* best = nullptr;
  for (const auto& pr : probes) {
    if (!pr.usable || pr.p == 2) continue;
    if (!best || pr.degrees.size() < best->degrees.size()) best = &pr;
  }
  if (!best) throw NoUsablePrime("no odd usable prime for lifting");
  out.prime = best->p;
  out.local_factors = static_cast<unsigned>(best->degrees.size());
  out.resolved = true;
  if (best->degrees.size() == 1) {
    out.factors = {f};
    return out;
  }

  const std::uint64_t p = best->p;
  std::vector<ModPoly> local = local_factorization(f, p);
  assert(local.size() == best->degrees.size());

  // Coefficient bound for the side of any split that we reconstruct.
  unsigned half = n / 2;
  if (prune) {
    unsigned m = 0;
    for (unsigned d = 1; d <= half; ++d) {
      if (prune->contains(d)) m = d;
    }
    half = m;
  }
  const Integer lc_abs = abs(f.leading());
  Integer bound = lc_abs * binomial(half, half / 2) * f.l2_norm_ceil();
  Integer needed = 2 * bound + 1;

  HenselLift lift = hensel_lift(f, local, needed);
  out.lift_exponent = lift.exponent;
  const Integer modulus = lift.modulus;
  std::vector<IntPoly> lifted = std::move(lift.factors);
  std::vector<unsigned> deg(lifted.size());
  std::vector<Integer> const_term(lifted.size());
  for (std::size_t j = 0; j < lifted.size(); ++j) {
    deg[j] = static_cast<unsigned>(lifted[j].degree());
    const_term[j] = lifted[j][0];
  }

  std::vector<std::size_t> remaining(lifted.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  IntPoly current = f;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    const unsigned cur_deg = static_cast<unsigned>(current.degree());
    const Integer lc = current.leading();
    Integer lc_f0 = lc * current[0];
    std::vector<std::size_t> comb(s);
    std::iota(comb.begin(), comb.end(), 0);
    do {
      std::vector<bool> in_subset(remaining.size(), false);
      unsigned dsub = 0;
      for (std::size_t c : comb) {
        in_subset[c] = true;
        dsub += deg[remaining[c]];
      }
      if (prune && (!prune->contains(dsub) || !prune->contains(cur_deg - dsub))) continue;
      // Reconstruct whichever side has degree <= cur_deg / 2.
      const bool use_subset = 2 * dsub <= cur_deg;
      std::vector<std::size_t> side;
      for (std::size_t c = 0; c < remaining.size(); ++c) {
        if (in_subset[c] == use_subset) side.push_back(remaining[c]);
      }
      Integer ct = lc;
      for (std::size_t j : side) {
        ct *= const_term[j];
        mpz_fdiv_r(ct.get_mpz_t(), ct.get_mpz_t(), modulus.get_mpz_t());
      }
      if (ct > modulus / 2) ct -= modulus;
      if (lc_f0 != 0) {
        if (ct == 0 || !mpz_divisible_p(lc_f0.get_mpz_t(), ct.get_mpz_t())) continue;
      }
      IntPoly cand = IntPoly::constant(lc);
      for (std::size_t j : side) cand = mul_mod(cand, lifted[j], modulus);
      cand = symmetric_mod(cand, modulus).primitive_part();
      auto quotient = try_divexact(current, cand);
      if (!quotient) continue;

      IntPoly factor = use_subset ? cand : *quotient;
      IntPoly rest = use_subset ? *quotient : cand;
      out.factors.push_back(factor.primitive_part());
      current = std::move(rest);
      std::vector<std::size_t> keep;
      for (std::size_t c = 0; c < remaining.size(); ++c) {
        if (!in_subset[c]) keep.push_back(remaining[c]);
      }
      remaining = std::move(keep);
      found = true;
      break;
    } while (next_combination(comb, remaining.size()));
    if (!found) ++s;
  }
  if (current.leading() < 0) current = -current;
  out.factors.push_back(current);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const IntPoly& a, const IntPoly& b) { return a.degree() < b.degree(); });
  return out;
}

// gcd over Z by the primitive remainder sequence; only used as a fallback
// squarefreeness test.
IntPoly gcd_Z(IntPoly a, IntPoly b) {
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    // Pseudo-remainder of a by b.
    IntPoly r = a;
    const Integer& lb = b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      IntPoly t = IntPoly::monomial(r.leading(), shift) * b;
      r = r * lb - t;
    }
    a = std::move(b);
    b = r.is_zero() ? r : r.primitive_part();
  }
  return a;
}

void require_primitive(const IntPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("polynomial must be nonconstant");
  if (abs(f.content()) != 1) throw std::invalid_argument("polynomial must be primitive");
}

}  // namespace

Factorization factor_over_Q(const IntPoly& f, unsigned degree_cap, unsigned budget) {
  require_primitive(f);
  if (static_cast<unsigned>(f.degree()) > degree_cap) return {};
  if (f.degree() == 1) {
    Factorization out;
    out.resolved = true;
    out.factors = {f};
    return out;
  }
  // A handful of usable primes is enough to pick a good lifting prime.
  const unsigned wanted = std::min(budget, 5u);
  std::vector<PrimeProbe> probes;
  std::uint64_t p = kFirstCertificatePrime - 1;
  unsigned misses = 0;
  while (probes.size() < wanted) {
    p = next_prime(p);
    PrimeProbe probe = probe_prime(f, p);
    if (probe.usable) {
      probes.push_back(std::move(probe));
    } else if (++misses == 32 && probes.empty()) {
      if (gcd_Z(f, f.derivative()).degree() > 0) {
        throw NotSquarefree("gcd(f, f') is nonconstant");
      }
    }
  }
  return zassenhaus(f, probes, nullptr);
}

Factorization factor_over_Q(const IntPoly& f, const IrreducibilityCertificate& known,
                            unsigned degree_cap) {
  require_primitive(f);
  if (static_cast<unsigned>(f.degree()) > degree_cap) return {};
  if (known.irreducible) {
    Factorization out;
    out.resolved = true;
    out.factors = {f};
    out.primes_used = known.primes_used();
    return out;
  }
  if (known.probes.empty()) {
    if (gcd_Z(f, f.derivative()).degree() > 0) {
      throw NotSquarefree("gcd(f, f') is nonconstant");
    }
    return factor_over_Q(f, degree_cap);
  }
  return zassenhaus(f, known.probes, &known.set);
}

// Reports ------------------------------------------------------------------

std::string to_string(FactorVerdict v) {
  switch (v) {
    case FactorVerdict::Irreducible: return "Irreducible";
    case FactorVerdict::Reducible: return "Reducible";
    case FactorVerdict::Unresolved: return "Unresolved";
  }
  return "?";
}

std::string to_string(CertificateKind c) {
  return c == CertificateKind::DegreeSetIntersection ? "DegreeSetIntersection"
                                                     : "FullFactorization";
}

std::string to_string(Match m) {
  switch (m) {
    case Match::Consistent: return "Consistent";
    case Match::Inconsistent: return "Inconsistent";
    case Match::Unresolved: return "Unresolved";
  }
  return "?";
}

FactorReport factor_report(std::uint64_t i, unsigned k, unsigned degree_cap) {
  FactorReport report;
  report.i = i;
  report.k = k;
  report.degree = static_cast<unsigned>(euler_phi(i)) * k;
  if (report.degree > degree_cap) return report;

  IntPoly F = build_F(i, k);
  IrreducibilityCertificate cert = certify_irreducible(F);
  report.primes_used = cert.primes_used();
  if (cert.irreducible) {
    report.verdict = FactorVerdict::Irreducible;
    report.certificate_kind = CertificateKind::DegreeSetIntersection;
    report.factor_degrees = {report.degree};
    return report;
  }
  Factorization fac = factor_over_Q(F, cert, degree_cap);
  if (!fac.resolved) return report;
  report.certificate_kind = CertificateKind::FullFactorization;
  report.verdict = fac.factors.size() == 1 ? FactorVerdict::Irreducible
                                           : FactorVerdict::Reducible;
  for (const auto& g : fac.factors) {
    report.factor_degrees.push_back(static_cast<unsigned>(g.degree()));
  }
  std::sort(report.factor_degrees.begin(), report.factor_degrees.end());
  report.factors = std::move(fac.factors);
  return report;
}

const FactorReport& cached_factor_report(std::uint64_t i, unsigned k) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, FactorReport> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({i, k});
    if (it != cache.end()) return it->second;
  }
  FactorReport report = factor_report(i, k);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(i, k), std::move(report)).first->second;
}

// Conjecture ---------------------------------------------------------------

namespace {

bool even_rule(std::uint64_t i, unsigned k) { return (k + 2) % i == 0; }
// "irreducible iff i | 2(k+2)", read literally.
bool odd_literal(std::uint64_t i, unsigned k) { return (2 * (k + 2)) % i != 0; }
// "reducible iff i | 2(k+2)", mirroring the even clause.
bool odd_symmetric(std::uint64_t i, unsigned k) { return (2 * (k + 2)) % i == 0; }

constexpr ConjectureReading kReadings[] = {
    {"even", false, even_rule, 2},
    {"odd-literal", true, odd_literal, 0},
    {"odd-symmetric", true, odd_symmetric, 2},
};

Match check_reading(const ConjectureReading& r, bool predicted, const FactorReport& obs) {
  if (obs.verdict == FactorVerdict::Unresolved) return Match::Unresolved;
  const bool reducible = obs.verdict == FactorVerdict::Reducible;
  if (reducible != predicted) return Match::Inconsistent;
  if (reducible && r.factors_when_reducible != 0 &&
      obs.factor_count() != r.factors_when_reducible) {
    return Match::Inconsistent;
  }
  return Match::Consistent;
}

}  // namespace

std::span<const ConjectureReading> conjecture_readings() { return kReadings; }

ConjectureVerdict conjecture_verdict(std::uint64_t i, unsigned k) {
  if (i <= 2 || k <= 1) throw std::invalid_argument("conjecture needs i > 2 and k > 1");
  ConjectureVerdict v;
  v.i = i;
  v.k = k;
  v.in_checked_range = i <= 14 && k > 4 && k <= 200;
  v.observed = cached_factor_report(i, k);
  const bool odd = k % 2 == 1;
  bool any_consistent = false, all_inconsistent = true;
  for (const auto& r : kReadings) {
    if (r.odd_k != odd) continue;
    bool predicted = r.predicts_reducible(i, k);
    Match m = check_reading(r, predicted, v.observed);
    v.readings.push_back({r.name, predicted, m});
    any_consistent = any_consistent || m == Match::Consistent;
    all_inconsistent = all_inconsistent && m == Match::Inconsistent;
  }
  v.predicted_reducible_reading_A = v.readings.front().predicted_reducible;
  if (v.observed.verdict == FactorVerdict::Unresolved) {
    v.match = Match::Unresolved;
  } else if (any_consistent) {
    v.match = Match::Consistent;
  } else {
    v.match = all_inconsistent ? Match::Inconsistent : Match::Unresolved;
  }
  return v;
}

}  // namespace amd
