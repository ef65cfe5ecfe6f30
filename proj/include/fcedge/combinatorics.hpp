#pragma once

#include "fcedge/exact.hpp"

#include <cstdint>
#include <vector>

namespace fcedge {

/// C(n, k); zero when k > n.
Natural binomial(std::uint64_t n, std::uint64_t k);

Natural factorial(std::uint64_t n);

/// x (x-1) ... (x-k+1). Requires x >= k-1 so that no factor is negative;
/// the product is zero when x == k-1. Throws std::invalid_argument if x < k-1.
Natural falling_factorial(std::uint64_t x, std::uint64_t k);

/// Stirling numbers of the second kind, {n brace k}, from the recurrence
/// {n+1 brace k} = k {n brace k} + {n brace k-1} with {0 brace 0} = 1.
/// Served from a process-wide memo table that grows on demand.
Natural stirling2(std::uint64_t n, std::uint64_t k);

/// Independent evaluation of {n brace k} through the alternating sum
/// (1/k!) sum_i (-1)^(k-i) C(k,i) i^n, with 0^0 = 1. Exists to cross-check
/// the recurrence.
Natural stirling2_alternating(std::uint64_t n, std::uint64_t k);

/// FC_m(k) = C(mk+k, k) / (mk+1). Throws std::invalid_argument for m == 0 and
/// std::logic_error if the division is not exact.
Natural fuss_catalan(std::uint64_t m, std::uint64_t k);

/// Dense triangle of {n brace k} for 0 <= k <= n <= max_n. A value type, so a
/// caller can take a private copy (the verification suite uses this for fault
/// injection).
class StirlingTable {
 public:
  explicit StirlingTable(std::uint64_t max_n);

  std::uint64_t max_n() const { return rows_.size() - 1; }

  /// Zero for k > n; throws std::out_of_range for n > max_n().
  const Natural& operator()(std::uint64_t n, std::uint64_t k) const;

  /// Overwrites one entry. Test hook only.
  void set(std::uint64_t n, std::uint64_t k, Natural value);

 private:
  std::vector<std::vector<Natural>> rows_;
};

}  // namespace fcedge
