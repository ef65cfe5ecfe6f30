#include "fcedge/moments.hpp"

#include "fcedge/beta_poly.hpp"
#include "fcedge/combinatorics.hpp"

#include <stdexcept>
#include <string>

namespace fcedge {

namespace {

MomentValue from_scaled(const MomentQuery& q, Rational scaled) {
  const Integer norm = pow(Integer(q.n), q.m * q.k + 1);
  Rational value = scaled / norm;
  return {std::move(value), std::move(scaled)};
}

void require_k_le_n(const MomentQuery& q, const char* who) {
  if (q.k > q.n) {
    throw std::invalid_argument(std::string(who) + " requires k <= n (got k=" +
                                std::to_string(q.k) + ", n=" + std::to_string(q.n) + ")");
  }
}

}  // namespace

void validate(const MomentQuery& q) {
  if (q.m < 1 || q.n < 1 || q.k < 1) {
    throw std::invalid_argument("moment query requires m, n, k >= 1");
  }
}

MomentValue moment_gamma_sum(const MomentQuery& q) {
  validate(q);
  const std::uint64_t m = q.m, n = q.n, k = q.k;
  // Multiply every term by (n-1)! k so the sum stays integral:
  //   term * (n-1)! k = (-1)^(1+i) C(n-1,i) prod_j (j-k-i) ((k+i)!/i!)^m.
  Integer total = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    // prod_{j=0}^{n-1} (j - k - i): a factor is negative iff j < k+i and zero
    // iff j == k+i, which happens for some j < n exactly when k+i <= n-1.
    if (k + i <= n - 1) continue;
    const std::uint64_t negatives = n;  // every j in [0, n) is below k+i
    Integer product = falling_factorial(k + i, n);  // prod of |j - k - i|
    const bool negative = ((1 + i) + negatives) % 2 == 1;
    Integer gamma_ratio = falling_factorial(k + i, k);  // Gamma(k+i+1)/Gamma(i+1)
    Integer term = binomial(n - 1, i) * product * pow(gamma_ratio, m);
    if (negative) {
      total -= term;
    } else {
      total += term;
    }
  }
  Integer den = factorial(n - 1) * k;
  return from_scaled(q, make_rational(total, den));
}

MomentValue moment_gamma_restricted(const MomentQuery& q) {
  validate(q);
  require_k_le_n(q, "moment_gamma_restricted");
  const std::uint64_t m = q.m, n = q.n, k = q.k;
  Integer total = 0;
  for (std::uint64_t i = n - k; i <= n - 1; ++i) {
    Integer term = pow(falling_factorial(k + i, k), m + 1) * binomial(k - 1, k + i - n);
    if ((n + 1 + i) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return from_scaled(q, make_rational(total, factorial(k)));
}

MomentValue moment_falling_sum(const MomentQuery& q) {
  validate(q);
  const std::uint64_t m = q.m, n = q.n, k = q.k;
  Integer total = 0;
  for (std::uint64_t j = 0; j < k; ++j) {
    // (n+j)(n+j-1)...(n+j-k+1) contains a zero factor once n+j <= k-1.
    if (n + j + 1 < k) continue;
    Integer term = pow(falling_factorial(n + j, k), m + 1) * binomial(k - 1, j);
    if ((k + 1 - j) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return from_scaled(q, make_rational(total, factorial(k)));
}

MomentValue moment_stirling_beta(const MomentQuery& q) {
  validate(q);
  require_k_le_n(q, "moment_stirling_beta");
  const std::uint64_t n = q.n, k = q.k;
  const BetaVector beta = compute_beta(q.m, n, k);
  const std::uint64_t degree = beta.degree();
  const Integer nn = n;

  // n^K * n^-r * beta_r = n^(K-r) beta_r
  Rational sum = 0;
  for (std::uint64_t r = k - 1; r <= degree; ++r) {
    Natural s = stirling2(r, k - 1);
    if (s == 0) continue;
    sum += pow(nn, degree - r) * beta[r] * s;
  }
  sum /= k;
  return from_scaled(q, std::move(sum));
}

CrossCheckReport moment_cross_check(const MomentQuery& q) {
  validate(q);
  require_k_le_n(q, "moment_cross_check");
  CrossCheckReport report{q, moment_gamma_sum(q), moment_falling_sum(q), moment_stirling_beta(q),
                          false};
  report.agree = report.gamma_sum == report.falling_sum &&
                 report.falling_sum == report.stirling_beta;
  return report;
}

Rational moment_limit_gap(std::uint64_t m, std::uint64_t k, std::uint64_t n) {
  MomentQuery q{m, n, k};
  validate(q);
  require_k_le_n(q, "moment_limit_gap");
  return moment_falling_sum(q).value - Rational(fuss_catalan(m, k));
}

}  // namespace fcedge
