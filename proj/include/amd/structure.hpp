#ifndef AMD_STRUCTURE_HPP
#define AMD_STRUCTURE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amd/algebra.hpp"

namespace amd {

/// Cycle type of a permutation: m_j cycles of length j. Only m_j >= 1 is
/// stored, so two structures compare equal iff their cycle types agree.
class CycleStructure {
 public:
  CycleStructure() = default;
  /// Throws std::invalid_argument on j == 0 or m_j == 0 entries.
  CycleStructure(unsigned k, std::map<std::uint64_t, std::uint64_t> entries);

  /// Sum of j * m_j.
  const Integer& order() const { return N_; }
  unsigned diameter() const { return k_; }
  const std::map<std::uint64_t, std::uint64_t>& entries() const { return entries_; }
  std::uint64_t m(std::uint64_t j) const;
  /// m_1 == k.
  bool is_self_repeat() const;

  /// "j:m_j" pairs joined by commas, ascending j.
  std::string to_string() const;
  /// Inverse of to_string for a given diameter.
  static CycleStructure parse(unsigned k, const std::string& text);

  friend bool operator==(const CycleStructure&, const CycleStructure&) = default;

 private:
  unsigned k_ = 0;
  std::map<std::uint64_t, std::uint64_t> entries_;
  Integer N_ = 0;
};

/// Orders of the out-neighbours of a self-repeat, with multiplicities.
struct OrderSpectrum {
  std::map<std::uint64_t, std::uint64_t> multiplicity;  // s_i -> n_i
  /// d == 1 + sum n_i s_i, with 1 present.
  bool consistent_with_degree(std::uint64_t d) const;
};

/// Whether d - 1 can be written as sum n_i s_i with n_i >= 0 and every s_i
/// an order occurring in `s` (1 included).
bool order_spectrum_feasible(const CycleStructure& s, std::uint64_t d);

/// m(i): number of cycles whose length is a multiple of i.
std::uint64_t m_of(const CycleStructure& s, std::uint64_t i);

/// Normal-form witness alpha for 2-criticality: the least odd part of the
/// stored indices j > 1 when some such index is odd, otherwise the least
/// stored index j > 1. Empty when there is no index j > 1.
std::optional<std::uint64_t> alpha_normal_form(const CycleStructure& s);

struct TwoCriticality {
  bool two_critical = false;
  std::uint64_t alpha = 0;  // normal-form witness when two_critical
};

/// True iff every stored index j > 1 is 2^t * alpha for the normal-form
/// alpha > 1.
TwoCriticality is_two_critical(const CycleStructure& s);

/// d' + d'^2 + ... + d'^k
Integer moore_sum(std::uint64_t d_prime, unsigned k);

/// All 2-critical structures of order d' + ... + d'^k with m_1 = k, witness
/// alpha | d' - 1, indices j <= d' - 1, and a feasible order spectrum.
/// Sorted by alpha, then lexicographically by (m_j) over ascending j.
/// Throws std::length_error once more than `limit` structures are found.
std::vector<CycleStructure> enumerate_structures(std::uint64_t d_prime, unsigned k,
                                                 std::size_t limit = 1'000'000);

/// Fixed point of S -> {lcm(a, b) : a, b in S}.
std::set<std::uint64_t> lcm_closure(const std::set<std::uint64_t>& s1);

/// (x - 1)^k * prod_{j > 1} (x^j - 1)^{m_j}. Requires a self-repeat structure.
IntPoly char_poly_P(const CycleStructure& s);

/// (x - (N + 1)) * (x - 1)^{m(1) - 1} * prod_{i > 1} Phi_i^{m(i)}.
IntPoly char_poly_JP(const CycleStructure& s);

}  // namespace amd

#endif  // AMD_STRUCTURE_HPP
