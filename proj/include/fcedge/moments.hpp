#pragma once

#include "fcedge/exact.hpp"

#include <cstdint>

namespace fcedge {

/// (m, n, k): number of factors, matrix size, moment order. All >= 1.
struct MomentQuery {
  std::uint64_t m = 1;
  std::uint64_t n = 1;
  std::uint64_t k = 1;
};

/// G(m,n,k), the k-th moment of the expected empirical distribution of the
/// squared singular values, together with n^(mk+1) G(m,n,k).
struct MomentValue {
  Rational value;
  Rational scaled;

  friend bool operator==(const MomentValue&, const MomentValue&) = default;
};

/// Throws std::invalid_argument unless m, n, k >= 1.
void validate(const MomentQuery& q);

/// sum_{i=0}^{n-1} (-1)^(1+i) prod_{j<n}(j-k-i) / (i! (n-1-i)! k) * ((k+i)!/i!)^m,
/// with the signed product evaluated by counting its negative factors.
/// Agreement with the other formulations is only claimed for k <= n.
MomentValue moment_gamma_sum(const MomentQuery& q);

/// The same sum restricted to its non-vanishing range i = n-k .. n-1:
/// (1/k!) sum (-1)^(n+1+i) ((k+i)!/i!)^(m+1) C(k-1, k+i-n). Used to catch sign
/// bookkeeping errors in moment_gamma_sum.
MomentValue moment_gamma_restricted(const MomentQuery& q);

/// (1/k!) sum_{j=0}^{k-1} (-1)^(k+1-j) ((n+j)!/(n+j-k)!)^(m+1) C(k-1,j).
/// Total in k: falling factorials that cross zero contribute nothing.
MomentValue moment_falling_sum(const MomentQuery& q);

/// (n^K / k) sum_{r=k-1}^{K} n^(-r) beta_r {r brace k-1}, K = k(m+1).
/// Requires k <= n.
MomentValue moment_stirling_beta(const MomentQuery& q);

struct CrossCheckReport {
  MomentQuery query;
  MomentValue gamma_sum;
  MomentValue falling_sum;
  MomentValue stirling_beta;
  bool agree = false;
};

/// All three formulations; agree iff they are identical rationals. Requires
/// k <= n.
CrossCheckReport moment_cross_check(const MomentQuery& q);

/// G(m,n,k) - FC_m(k), exact. Requires k <= n.
Rational moment_limit_gap(std::uint64_t m, std::uint64_t k, std::uint64_t n);

}  // namespace fcedge
