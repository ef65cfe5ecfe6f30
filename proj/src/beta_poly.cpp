#include "fcedge/beta_poly.hpp"

#include "fcedge/combinatorics.hpp"

#include <stdexcept>
#include <string>

namespace fcedge {

BetaVector compute_beta(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  if (m < 1 || n < 1 || k < 1) {
    throw std::invalid_argument("compute_beta requires m, n, k >= 1");
  }
  if (k > n) {
    throw std::invalid_argument("compute_beta requires k <= n (got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n) + ")");
  }
  // Expand Q(y) = prod_i (n - i + y)^(m+1) over the integers, with y = n x.
  // Then n^K P(x) = Q(n x), so beta_r = q_r / n^(K-r).
  const std::uint64_t degree = k * (m + 1);
  std::vector<Integer> q(degree + 1, 0);
  q[0] = 1;
  std::uint64_t current = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    const Integer root = n - i;
    for (std::uint64_t rep = 0; rep <= m; ++rep) {
      // multiply by (root + y), in place from the top
      q[current + 1] = q[current];
      for (std::uint64_t r = current; r > 0; --r) {
        q[r] = q[r] * root + q[r - 1];
      }
      q[0] *= root;
      ++current;
    }
  }

  BetaVector out{m, n, k, {}};
  out.coeffs.reserve(degree + 1);
  const Integer nn = n;
  for (std::uint64_t r = 0; r <= degree; ++r) {
    out.coeffs.push_back(make_rational(q[r], pow(nn, degree - r)));
  }
  return out;
}

BetaBoundsReport beta_bounds_check(const BetaVector& bv) {
  if (bv.k > bv.n) throw std::invalid_argument("beta_bounds_check requires k <= n");
  const std::uint64_t degree = bv.degree();
  const Rational shrink = make_rational(Integer(bv.n - (bv.k - 1)), Integer(bv.n));

  BetaBoundsReport report;
  report.pass = true;
  report.rows.reserve(degree + 1);
  for (std::uint64_t r = 0; r <= degree; ++r) {
    BetaBoundRow row;
    row.r = r;
    row.upper = Rational(binomial(degree, r));
    row.lower = row.upper * pow(shrink, degree - r);
    row.beta = bv.coeffs.at(r);
    row.pass = row.lower <= row.beta && row.beta <= row.upper;
    report.pass = report.pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

Rational beta_ratio(const BetaVector& bv, std::uint64_t r) {
  if (r >= bv.degree()) {
    throw std::out_of_range("beta_ratio: r=" + std::to_string(r) + " out of range [0, " +
                            std::to_string(bv.degree()) + ")");
  }
  return Rational(bv.coeffs[r + 1] / bv.coeffs[r]);
}

}  // namespace fcedge
