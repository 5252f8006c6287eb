#ifndef AMD_SIEVE_HPP
#define AMD_SIEVE_HPP

// Trace constraints on the repeat structure and the decision pipeline for
// the existence of (d,k)-digraphs with self-repeats.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amd/algebra.hpp"
#include "amd/factor.hpp"
#include "amd/structure.hpp"

namespace amd {

/// One linear equation sum_v coeffs[v] * var_v = rhs over the variables
/// (a_0, a_n for n in divisors).
struct TraceRow {
  unsigned ell = 0;  // 0 marks the multiplicity row
  std::vector<Integer> coeffs;
  Integer rhs;
};

struct TraceSystem {
  std::uint64_t d = 0;
  unsigned k = 0;
  unsigned ell_max = 0;                 // largest ell with ell (d - 1) < k + 1
  std::vector<std::uint64_t> divisors;  // n > 1 with n | k, ascending
  /// S_table[ell - 1][t] = ramanujan_sum(ell, divisors[t]).
  std::vector<std::vector<std::int64_t>> S_table;
  /// Trace rows for ell = 1..ell_max: sum_n S_ell(Phi_n) a_n = -d^ell, with a
  /// zero coefficient on a_0. The multiplicity row a_0 + sum phi(n) a_n =
  /// m(1) - 1 follows when a structure was supplied.
  std::vector<TraceRow> rows;

  std::size_t variable_count() const { return divisors.size() + 1; }
};

/// Largest ell >= 0 with ell * (d - 1) < k + 1.
unsigned ell_max_for(std::uint64_t d, unsigned k);

TraceSystem build_trace_system(std::uint64_t d, unsigned k,
                               const std::optional<CycleStructure>& structure = std::nullopt);

/// Smallest prime ell with gcd(ell, k) == 1 and 1 < ell < (k+1)/(d-1).
std::optional<unsigned> prime_witness(std::uint64_t d, unsigned k);

enum class ThresholdBranch { Odd, Even };

/// k odd and k >= 2(d-1), or k even and k >= 2(d-1)^2. Requires d >= 6.
std::optional<ThresholdBranch> threshold_covered(std::uint64_t d, unsigned k);

/// The ell = 1 row minus the ell = ell* row: identical coefficients, so the
/// system forces d^ell* - d == 0.
struct CollapseProof {
  unsigned ell = 0;
  Integer difference;  // d^ell - d
};

enum class Feasibility { Infeasible, Inconclusive };

struct InfeasibilityResult {
  Feasibility status = Feasibility::Inconclusive;
  std::optional<CollapseProof> collapse;
  /// Exact elimination: rank of the coefficient matrix and of the augmented
  /// matrix. The system is rationally inconsistent iff they differ.
  unsigned rank = 0;
  unsigned augmented_rank = 0;
  bool elimination_inconsistent() const { return augmented_rank > rank; }
};

InfeasibilityResult check_infeasible(const TraceSystem& sys);

/// Rank of an integer matrix by fraction-free elimination.
unsigned integer_rank(std::vector<std::vector<Integer>> m);

enum class Verdict { Exists, NotExistSelfRepeat, Unknown };
enum class Method {
  Known_k2,
  Literature_k34,
  Literature_d23,
  PrimeWitness,
  ThresholdOdd,
  ThresholdEven,
  ConjectureElimination,
  None,
};

std::string to_string(Verdict v);
std::string to_string(Method m);
std::optional<Verdict> parse_verdict(const std::string& s);
std::optional<Method> parse_method(const std::string& s);

/// Per-i evidence used by conjecture elimination.
struct CheckedCell {
  std::uint64_t i = 0;
  bool predicted_reducible = false;  // even k: i | k + 2; odd k: literal reading
  std::vector<unsigned> observed_degrees;
  std::vector<std::uint64_t> primes_used;
  std::string match;  // to_string(Match)

  friend bool operator==(const CheckedCell&, const CheckedCell&) = default;
};

struct Certificate {
  std::uint64_t d = 0;
  unsigned k = 0;
  Verdict verdict = Verdict::Unknown;
  Method method = Method::None;
  std::optional<unsigned> witness;
  unsigned ell_max = 0;
  std::vector<TraceRow> trace_rows;  // rows ell = 1 and ell = witness
  std::vector<CheckedCell> checked_i;
  std::vector<std::string> assumptions;

  bool definite() const { return verdict != Verdict::Unknown; }
};

bool operator==(const TraceRow& a, const TraceRow& b);
bool operator==(const Certificate& a, const Certificate& b);

namespace citations {
inline constexpr const char* kExistsK2 =
    "fiol83: (d,2)-digraphs exist for every d > 1";
inline constexpr const char* kNoK34 =
    "cggmm08, cggmm13: no (d,3)- or (d,4)-digraphs";
inline constexpr const char* kNoD23 =
    "miller92: no (2,k)-digraphs for k >= 3; b95, baskoro973: no (3,k)-digraphs for k >= 3";
inline constexpr const char* kThreshold =
    "no (d,k)-digraphs with self-repeats for d >= 6 when k is odd and k >= 2(d-1), or k is "
    "even and k >= 2(d-1)^2";
inline constexpr const char* kConjectureImplication =
    "cggmm14: if F_{i,k} factors as the cyclotomic conjecture predicts for every i with "
    "m(i) != 0, no (d,k)-digraph with that repeat structure exists";
}  // namespace citations

/// Decision pipeline: k = 2, literature, prime witness, threshold region
/// (only reached if no witness was found there), conjecture elimination,
/// Unknown.
Certificate decide(std::uint64_t d, unsigned k);

/// Recomputes every checkable claim of a certificate. Returns the failures,
/// empty when the certificate is valid.
std::vector<std::string> validate_certificate(const Certificate& c);

}  // namespace amd

#endif  // AMD_SIEVE_HPP
