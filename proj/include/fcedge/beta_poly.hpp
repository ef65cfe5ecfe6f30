#pragma once

#include "fcedge/exact.hpp"

#include <cstdint>
#include <vector>

namespace fcedge {

/// Coefficients of P(x) = prod_{i=0}^{k-1} (1 - i/n + x)^(m+1), lowest degree
/// first. coeffs.size() == k(m+1) + 1 and the polynomial is monic.
struct BetaVector {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::vector<Rational> coeffs;

  std::uint64_t degree() const { return k * (m + 1); }
  const Rational& operator[](std::size_t r) const { return coeffs.at(r); }
};

/// Requires m >= 1, n >= 1 and 1 <= k <= n; throws std::invalid_argument
/// otherwise.
BetaVector compute_beta(std::uint64_t m, std::uint64_t n, std::uint64_t k);

struct BetaBoundRow {
  std::uint64_t r = 0;
  Rational lower;  // C(K,r) (1 - (k-1)/n)^(K-r)
  Rational beta;
  Rational upper;  // C(K,r)
  bool pass = false;
};

struct BetaBoundsReport {
  std::vector<BetaBoundRow> rows;
  bool pass = false;
};

/// Two-sided check C(K,r)(1-(k-1)/n)^(K-r) <= beta_r <= C(K,r), K = k(m+1).
BetaBoundsReport beta_bounds_check(const BetaVector& bv);

/// beta_{r+1} / beta_r for 0 <= r < degree(); std::out_of_range otherwise.
Rational beta_ratio(const BetaVector& bv, std::uint64_t r);

}  // namespace fcedge
