#ifndef AMD_CYCLOTOMIC_HPP
#define AMD_CYCLOTOMIC_HPP

#include <cstdint>
#include <map>
#include <mutex>

#include "amd/algebra.hpp"

namespace amd {

/// Memo of cyclotomic polynomials. Entries are write-once; concurrent
/// callers may race to compute the same index but always insert the same
/// value.
class CyclotomicCache {
 public:
  const IntPoly& get(std::uint64_t i);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::uint64_t, IntPoly> polys_;
};

/// Phi_i, computed by dividing x^i - 1 by Phi_d for every proper divisor d.
const IntPoly& cyclotomic(std::uint64_t i);

/// 1 + x + ... + x^k
IntPoly chain_poly(unsigned k);

/// Phi_i(1 + x + ... + x^k), of degree phi(i) * k.
IntPoly build_F(std::uint64_t i, unsigned k);

/// Sum of the ell-th powers of the primitive n-th roots of unity:
/// sum over j | gcd(n, ell) of mu(n / j) * j.
std::int64_t ramanujan_sum(std::uint64_t ell, std::uint64_t n);

}  // namespace amd

#endif  // AMD_CYCLOTOMIC_HPP
