#pragma once

#include "fcedge/exact.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fcedge {

/// u_m = (m+1)^(m+1) / m^m, the right end of the limiting support.
struct EdgeConstant {
  std::uint64_t m = 1;
  Rational u;
};

/// Throws std::invalid_argument for m == 0.
EdgeConstant edge_constant(std::uint64_t m);

/// Relative margin applied above the critical exponent 3 / log(z/u_m) when no
/// explicit w is given.
inline constexpr double kDefaultScheduleMargin = 0.01;

/// Moment-order schedule k_n = ceil(w log n) for a fixed level z > u_m.
struct TailSchedule {
  std::uint64_t m = 1;
  Rational z;
  Rational u;
  double critical_w = 0.0;  // 3 / log(z/u)
  double w = 0.0;

  /// ceil(w log n), clamped to at least 1 (n = 1 would give 0).
  std::uint64_t k_of(std::uint64_t n) const;
  /// Same, for a real-valued log n.
  std::uint64_t k_at_log(double log_n) const;
};

/// Throws std::invalid_argument if z <= u_m or if w_override does not exceed
/// the critical exponent.
TailSchedule make_schedule(std::uint64_t m, const Rational& z,
                           std::optional<double> w_override = std::nullopt);

struct DominanceRatio {
  std::uint64_t r = 0;  // ratio is t_{r+1} / t_r
  Rational ratio;
  Rational bound;       // ((m+1)/2) (r+1)^2 / n
  bool pass = false;    // ratio < bound
};

/// Terms t_r = n^-r beta_r {r brace k-1} of the Stirling-form moment sum and
/// how fast they decay.
struct DominanceReport {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t first_r = 0;    // k - 1
  std::vector<Rational> terms;  // terms[i] is t_{first_r + i}
  std::vector<DominanceRatio> ratios;
  Rational term_sum;
  Rational first_term_share;    // t_{k-1} / sum
  double max_ratio = 0.0;
  /// Largest eps with every ratio <= ((m+1)/2) n^-eps, i.e. the measured
  /// margin when the constant is fixed at (m+1)/2. +inf with no ratios.
  double measured_epsilon = 0.0;
  bool all_pass = true;

  /// (n^K / k) * sum t_r, which must equal n^(mk+1) G(m,n,k).
  Rational reconstructed_scaled() const;
};

/// Requires 1 <= k <= n. The bound is asymptotic, so pass flags are only
/// meaningful for k^2 well below n.
DominanceReport dominance_report(std::uint64_t m, std::uint64_t n, std::uint64_t k);

/// Chain beta_{k-1}/k ~ (1/k) C(k(m+1), k-1) ~ sqrt((m+1)/(2 pi m^3)) u^k / k^1.5.
struct AsymptoticCheck {
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  std::uint64_t n = 0;  // exact side evaluated at n = k^3
  Rational exact;       // beta_{k-1} / k
  Rational mid;         // C(k(m+1), k-1) / k
  double closed_log = 0.0;
  double exact_vs_mid = 0.0;     // |exact/mid - 1|
  double mid_vs_closed = 0.0;    // |mid/closed - 1|
  double exact_vs_closed = 0.0;  // |exact/closed - 1|
};

/// Requires m >= 1, k >= 2.
AsymptoticCheck beta_leading_asymptotic(std::uint64_t m, std::uint64_t k);

/// n G(m,n,k) / z^k, the Markov bound on P(s_1^2 >= z). Requires k <= n.
Rational markov_chain_bound(std::uint64_t m, std::uint64_t n, const Rational& z,
                            std::uint64_t k);

struct TailSummand {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  Rational exact_bound;
  double log_exact = 0.0;
  double log_surrogate = 0.0;  // log n - 1.5 log k + k log(u/z)
  double minus_2_log_n = 0.0;
};

/// Throws std::invalid_argument when k_n > n, naming the smallest admissible
/// n at or above the requested one.
TailSummand tail_summand(const TailSchedule& schedule, std::uint64_t n);

/// Smallest n' >= n with schedule.k_of(n') <= n'.
std::uint64_t min_admissible_n(const TailSchedule& schedule, std::uint64_t n);

}  // namespace fcedge
