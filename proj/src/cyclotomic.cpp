#include "amd/cyclotomic.hpp"

#include <numeric>
#include <stdexcept>

namespace amd {

const IntPoly& CyclotomicCache::get(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("cyclotomic index must be positive");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = polys_.find(i);
    if (it != polys_.end()) return it->second;
  }
  IntPoly value = IntPoly::x_pow_minus_one(i);
  for (std::uint64_t d : divisors(i)) {
    if (d == i) continue;
    value = poly_divexact(value, get(d));
  }
  std::lock_guard<std::mutex> lock(mu_);
  // std::map never moves its nodes, so handing out references is safe.
  return polys_.emplace(i, std::move(value)).first->second;
}

std::size_t CyclotomicCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return polys_.size();
}

const IntPoly& cyclotomic(std::uint64_t i) {
  static CyclotomicCache cache;
  return cache.get(i);
}

IntPoly chain_poly(unsigned k) {
  return IntPoly(std::vector<Integer>(k + 1, Integer(1)));
}

IntPoly build_F(std::uint64_t i, unsigned k) {
  return poly_compose(cyclotomic(i), chain_poly(k));
}

std::int64_t ramanujan_sum(std::uint64_t ell, std::uint64_t n) {
  if (ell == 0 || n == 0) throw std::invalid_argument("ell and n must be positive");
  std::int64_t sum = 0;
  for (std::uint64_t j : divisors(std::gcd(n, ell))) {
    sum += mobius(n / j) * static_cast<std::int64_t>(j);
  }
  return sum;
}

}  // namespace amd
