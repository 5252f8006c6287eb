#ifndef AMD_FACTOR_HPP
#define AMD_FACTOR_HPP

// Irreducibility certificates and complete factorizations over Q for the
// compositions F_{i,k}, plus the comparison against the cyclotomic
// conjecture.
//
// Two independent routes are offered:
//   * degree sets: intersect, over many primes, the subset sums of the
//     mod-p factor degrees. Shrinking to {0, n} proves irreducibility.
//   * Zassenhaus: factor mod one prime, Hensel-lift, recombine. The result
//     is a complete factorization into irreducibles.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "amd/algebra.hpp"
#include "amd/modpoly.hpp"

namespace amd {

struct BadPrime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NoUsablePrime : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSquarefree : std::domain_error {
  using std::domain_error::domain_error;
};

/// First prime tried by the adaptive prime sequence.
inline constexpr std::uint64_t kFirstCertificatePrime = 101;
inline constexpr unsigned kDefaultPrimeBudget = 24;
inline constexpr unsigned kDefaultDegreeCap = 1600;

/// Usable-prime budget, overridable through AMD_PRIME_BUDGET.
unsigned prime_budget();

/// Degrees of the irreducible factors of `f` mod p, with multiplicity,
/// ascending. Throws BadPrime if p divides the leading coefficient.
std::vector<unsigned> factor_mod_p(const IntPoly& f, std::uint64_t p);

/// Subset of {0, ..., n}.
class DegreeSet {
 public:
  DegreeSet() = default;
  /// All of {0, ..., n}.
  static DegreeSet full(unsigned n);
  /// Subset sums of a degree multiset.
  static DegreeSet subset_sums(std::span<const unsigned> degrees);

  unsigned top() const { return static_cast<unsigned>(bits_.size()) - 1; }
  bool contains(unsigned d) const { return d < bits_.size() && bits_[d]; }
  /// True when only 0 and n remain.
  bool is_trivial() const;
  std::vector<unsigned> values() const;
  void intersect(const DegreeSet& other);
  friend bool operator==(const DegreeSet&, const DegreeSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// What one prime says about a polynomial.
struct PrimeProbe {
  std::uint64_t p = 0;
  bool usable = false;  // p does not divide lc and the image is squarefree
  std::vector<unsigned> degrees;
};

PrimeProbe probe_prime(const IntPoly& f, std::uint64_t p);

struct DegreeSetResult {
  DegreeSet set;
  std::vector<std::uint64_t> primes_used;
  std::vector<std::uint64_t> primes_skipped;
};

/// Intersection over the usable primes in `primes`. Throws NoUsablePrime
/// when none is usable.
DegreeSetResult degree_set(const IntPoly& f, std::span<const std::uint64_t> primes);

struct IrreducibilityCertificate {
  bool irreducible = false;
  DegreeSet set;
  std::vector<PrimeProbe> probes;  // usable primes only, in order
  std::vector<std::uint64_t> primes_used() const;
};

/// Walks primes upward from kFirstCertificatePrime, skipping unusable ones,
/// until the degree set is {0, n} or `budget` usable primes are spent.
/// Never reports a reducible polynomial as irreducible.
IrreducibilityCertificate certify_irreducible(const IntPoly& f,
                                              unsigned budget = prime_budget());

struct HenselLift {
  Integer modulus;  // p^exponent
  unsigned exponent = 0;
  std::vector<IntPoly> factors;  // monic, coefficients in [0, modulus)
};

/// Quadratic multifactor Hensel lifting. `local` holds the distinct monic
/// irreducible factors of f mod p, so f == lc(f) * prod(local) mod p. The
/// same congruence is lifted to p^e, e the least power of two with p^e >=
/// `needed`, with each lifted factor congruent to its local factor mod p.
HenselLift hensel_lift(const IntPoly& f, const std::vector<ModPoly>& local, const Integer& needed);

struct Factorization {
  bool resolved = false;
  std::vector<IntPoly> factors;  // irreducible, primitive, product == input
  std::uint64_t prime = 0;       // prime used for the modular factorization
  unsigned local_factors = 0;
  unsigned lift_exponent = 0;  // lifted modulo prime^lift_exponent
  std::vector<std::uint64_t> primes_used;
};

/// Complete factorization of a primitive squarefree polynomial. Returns an
/// unresolved result when the degree exceeds `degree_cap`. Throws
/// NotSquarefree when gcd(f, f') is nonconstant.
Factorization factor_over_Q(const IntPoly& f, unsigned degree_cap = kDefaultDegreeCap,
                            unsigned budget = prime_budget());

/// Same, reusing probes already computed for `f` (e.g. by
/// certify_irreducible) to prune the recombination.
Factorization factor_over_Q(const IntPoly& f, const IrreducibilityCertificate& known,
                            unsigned degree_cap = kDefaultDegreeCap);

enum class FactorVerdict { Irreducible, Reducible, Unresolved };
enum class CertificateKind { DegreeSetIntersection, FullFactorization };

std::string to_string(FactorVerdict v);
std::string to_string(CertificateKind c);

struct FactorReport {
  std::uint64_t i = 0;
  unsigned k = 0;
  unsigned degree = 0;
  FactorVerdict verdict = FactorVerdict::Unresolved;
  std::vector<unsigned> factor_degrees;  // ascending; empty when Unresolved
  CertificateKind certificate_kind = CertificateKind::DegreeSetIntersection;
  std::vector<std::uint64_t> primes_used;
  std::vector<IntPoly> factors;  // filled for FullFactorization

  unsigned factor_count() const { return static_cast<unsigned>(factor_degrees.size()); }
};

/// Definite report for F_{i,k} when possible: a degree-set certificate if
/// one exists within the prime budget, otherwise a full factorization.
FactorReport factor_report(std::uint64_t i, unsigned k,
                           unsigned degree_cap = kDefaultDegreeCap);

/// Process-wide memo of factor_report, safe for concurrent use.
const FactorReport& cached_factor_report(std::uint64_t i, unsigned k);

// Conjecture comparison ---------------------------------------------------

enum class Match { Consistent, Inconsistent, Unresolved };
std::string to_string(Match m);

/// One candidate reading of the conjecture for a parity of k. Stored as
/// data because the odd-k clause admits two readings.
struct ConjectureReading {
  const char* name;
  bool odd_k;
  bool (*predicts_reducible)(std::uint64_t i, unsigned k);
  /// Required number of irreducible factors when reducible (0 = any).
  unsigned factors_when_reducible;
};

/// All readings: one for even k, two for odd k.
std::span<const ConjectureReading> conjecture_readings();

struct ReadingCheck {
  std::string reading;
  bool predicted_reducible = false;
  Match match = Match::Unresolved;
};

struct ConjectureVerdict {
  std::uint64_t i = 0;
  unsigned k = 0;
  /// k even: i | k+2. k odd: the literal-text reading.
  bool predicted_reducible_reading_A = false;
  FactorReport observed;
  std::vector<ReadingCheck> readings;
  /// Even k: the single reading. Odd k: Consistent if some reading holds,
  /// Inconsistent if every reading is contradicted.
  Match match = Match::Unresolved;
  /// Inside 2 < i <= 14, 4 < k <= 200.
  bool in_checked_range = false;
};

ConjectureVerdict conjecture_verdict(std::uint64_t i, unsigned k);

}  // namespace amd

#endif  // AMD_FACTOR_HPP
