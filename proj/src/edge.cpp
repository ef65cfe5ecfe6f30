#include "fcedge/edge.hpp"

#include "fcedge/beta_poly.hpp"
#include "fcedge/combinatorics.hpp"
#include "fcedge/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fcedge {

EdgeConstant edge_constant(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("edge constant requires m >= 1");
  return {m, make_rational(pow(Integer(m + 1), m + 1), pow(Integer(m), m))};
}

std::uint64_t TailSchedule::k_at_log(double log_n) const {
  double k = std::ceil(w * log_n);
  return k < 1.0 ? 1 : static_cast<std::uint64_t>(k);
}

std::uint64_t TailSchedule::k_of(std::uint64_t n) const {
  return k_at_log(std::log(static_cast<double>(n)));
}

TailSchedule make_schedule(std::uint64_t m, const Rational& z, std::optional<double> w_override) {
  TailSchedule s;
  s.m = m;
  s.u = edge_constant(m).u;
  s.z = z;
  if (z <= s.u) {
    throw std::invalid_argument("level z=" + to_string(z) + " must exceed u_m=" + to_string(s.u) +
                                "; the tail bound is vacuous otherwise");
  }
  s.critical_w = 3.0 / log_of(Rational(z / s.u));
  if (w_override) {
    if (!(*w_override > s.critical_w)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "w=" << *w_override << " must exceed 3/log(z/u_m)=" << s.critical_w;
      throw std::invalid_argument(msg.str());
    }
    s.w = *w_override;
  } else {
    s.w = s.critical_w * (1.0 + kDefaultScheduleMargin);
  }
  return s;
}

Rational DominanceReport::reconstructed_scaled() const {
  const std::uint64_t degree = k * (m + 1);
  return Rational(pow(Integer(n), degree) * term_sum / k);
}

DominanceReport dominance_report(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  const BetaVector beta = compute_beta(m, n, k);
  const std::uint64_t degree = beta.degree();
  const Integer nn = n;

  DominanceReport report;
  report.m = m;
  report.n = n;
  report.k = k;
  report.first_r = k - 1;
  // {r brace 0} vanishes for r > 0, so with k = 1 only r = 0 contributes.
  const std::uint64_t last_r = k == 1 ? 0 : degree;
  for (std::uint64_t r = k - 1; r <= last_r; ++r) {
    Rational t = beta[r] * stirling2(r, k - 1);
    t /= pow(nn, r);
    report.terms.push_back(std::move(t));
  }

  report.term_sum = 0;
  for (const auto& t : report.terms) report.term_sum += t;
  report.first_term_share = report.terms.front() / report.term_sum;

  const Rational half_m1 = make_rational(Integer(m + 1), Integer(2));
  double max_log_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < report.terms.size(); ++i) {
    DominanceRatio row;
    row.r = report.first_r + i;
    row.ratio = report.terms[i + 1] / report.terms[i];
    row.bound = half_m1 * Integer((row.r + 1) * (row.r + 1)) / nn;
    row.pass = row.ratio < row.bound;
    report.all_pass = report.all_pass && row.pass;
    max_log_ratio = std::max(max_log_ratio, log_of(row.ratio));
    report.ratios.push_back(std::move(row));
  }
  if (report.ratios.empty() || n == 1) {
    report.max_ratio = report.ratios.empty() ? 0.0 : std::exp(max_log_ratio);
    report.measured_epsilon = std::numeric_limits<double>::infinity();
  } else {
    report.max_ratio = std::exp(max_log_ratio);
    report.measured_epsilon =
        (std::log((m + 1) / 2.0) - max_log_ratio) / std::log(static_cast<double>(n));
  }
  return report;
}

AsymptoticCheck beta_leading_asymptotic(std::uint64_t m, std::uint64_t k) {
  if (m < 1) throw std::invalid_argument("beta_leading_asymptotic requires m >= 1");
  if (k < 2) throw std::invalid_argument("beta_leading_asymptotic requires k >= 2");
  AsymptoticCheck c;
  c.m = m;
  c.k = k;
  c.n = k * k * k;
  const BetaVector beta = compute_beta(m, c.n, k);
  c.exact = beta[k - 1] / Integer(k);
  c.mid = make_rational(binomial(k * (m + 1), k - 1), Integer(k));

  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  const double log_u = log_of(edge_constant(m).u);
  c.closed_log = 0.5 * std::log((md + 1.0) / (2.0 * std::numbers::pi * md * md * md)) +
                 kd * log_u - 1.5 * std::log(kd);

  const double log_exact = log_of(c.exact);
  const double log_mid = log_of(c.mid);
  c.exact_vs_mid = std::fabs(std::expm1(log_exact - log_mid));
  c.mid_vs_closed = std::fabs(std::expm1(log_mid - c.closed_log));
  c.exact_vs_closed = std::fabs(std::expm1(log_exact - c.closed_log));
  return c;
}

Rational markov_chain_bound(std::uint64_t m, std::uint64_t n, const Rational& z,
                            std::uint64_t k) {
  if (sgn(z) <= 0) throw std::invalid_argument("markov_chain_bound requires z > 0");
  MomentQuery q{m, n, k};
  validate(q);
  if (k > n) throw std::invalid_argument("markov_chain_bound requires k <= n");
  return Rational(Integer(n) * moment_falling_sum(q).value / pow(z, k));
}

std::uint64_t min_admissible_n(const TailSchedule& schedule, std::uint64_t n) {
  std::uint64_t candidate = std::max<std::uint64_t>(n, 1);
  while (schedule.k_of(candidate) > candidate) ++candidate;
  return candidate;
}

TailSummand tail_summand(const TailSchedule& schedule, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("tail_summand requires n >= 1");
  const std::uint64_t k = schedule.k_of(n);
  if (k > n) {
    throw std::invalid_argument("k_n=" + std::to_string(k) + " exceeds n=" + std::to_string(n) +
                                "; smallest admissible n is " +
                                std::to_string(min_admissible_n(schedule, n)));
  }
  TailSummand t;
  t.n = n;
  t.k = k;
  t.exact_bound = markov_chain_bound(schedule.m, n, schedule.z, k);
  t.log_exact = log_of(t.exact_bound);
  const double log_n = std::log(static_cast<double>(n));
  t.log_surrogate = log_n - 1.5 * std::log(static_cast<double>(k)) +
                    static_cast<double>(k) * log_of(Rational(schedule.u / schedule.z));
  t.minus_2_log_n = -2.0 * log_n;
  return t;
}

}  // namespace fcedge
