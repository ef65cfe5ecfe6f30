#include "fcedge/verify.hpp"

#include "fcedge/beta_poly.hpp"
#include "fcedge/combinatorics.hpp"
#include "fcedge/edge.hpp"
#include "fcedge/moments.hpp"

#include <stdexcept>
#include <utility>

namespace fcedge {

VerifyProfile parse_profile(const std::string& text) {
  if (text == "quick") return VerifyProfile::quick;
  if (text == "full") return VerifyProfile::full;
  throw std::invalid_argument("profile must be 'quick' or 'full', got '" + text + "'");
}

namespace {

struct Tuple {
  std::optional<std::uint64_t> m, n, k, r;
};

class Suite {
 public:
  Suite(std::string name, VerifyReport& report) : report_(report) { summary_.name = std::move(name); }
  ~Suite() { report_.suites.push_back(summary_); }
  Suite(const Suite&) = delete;
  Suite& operator=(const Suite&) = delete;

  void check(bool ok, const std::string& what, Tuple where, std::string detail = {}) {
    ++summary_.checks;
    if (ok) return;
    ++summary_.failures;
    report_.failures.push_back(
        {summary_.name, what, where.m, where.n, where.k, where.r, std::move(detail)});
  }

 private:
  VerifyReport& report_;
  SuiteSummary summary_;
};

void cross_formula_suite(VerifyProfile profile, VerifyReport& report) {
  Suite suite("cross_formula", report);
  auto one = [&](std::uint64_t m, std::uint64_t n, std::uint64_t k) {
    const MomentQuery q{m, n, k};
    const auto cc = moment_cross_check(q);
    suite.check(cc.agree, "three formulations agree", {m, n, k, {}},
                to_string(cc.gamma_sum.value) + " | " + to_string(cc.falling_sum.value) + " | " +
                    to_string(cc.stirling_beta.value));
    const auto restricted = moment_gamma_restricted(q);
    suite.check(restricted == cc.gamma_sum, "restricted gamma sum agrees", {m, n, k, {}},
                to_string(restricted.value) + " vs " + to_string(cc.gamma_sum.value));
    if (k == 1) {
      suite.check(cc.falling_sum.value == 1, "first moment is 1", {m, n, k, {}},
                  to_string(cc.falling_sum.value));
    }
  };
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 6; ++k) {
      for (std::uint64_t n = k; n <= 12; ++n) one(m, n, k);
    }
  }
  if (profile == VerifyProfile::full) {
    one(1, 50, 10);
    one(2, 40, 8);
    for (std::uint64_t n = 1; n <= 20; ++n) one(4, n, 1);
  }
}

void beta_bounds_suite(VerifyProfile profile, VerifyReport& report) {
  Suite suite("beta_bounds", report);
  const std::uint64_t k_max = profile == VerifyProfile::full ? 12 : 6;
  const std::uint64_t n_max = profile == VerifyProfile::full ? 100 : 30;
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= k_max; ++k) {
      for (std::uint64_t n = k; n <= n_max; ++n) {
        const BetaVector bv = compute_beta(m, n, k);
        const auto bounds = beta_bounds_check(bv);
        for (const auto& row : bounds.rows) {
          suite.check(row.pass, "two-sided bound", {m, n, k, row.r},
                      to_string(row.lower) + " <= " + to_string(row.beta) + " <= " +
                          to_string(row.upper));
          suite.check(row.beta > 0, "positive coefficient", {m, n, k, row.r});
        }
        suite.check(bv.coeffs.back() == 1, "monic", {m, n, k, bv.degree()});

        Rational sum = 0;
        for (const auto& c : bv.coeffs) sum += c;
        Rational at_one = 1;
        for (std::uint64_t i = 0; i < k; ++i) {
          at_one *= pow(make_rational(Integer(2 * n - i), Integer(n)), m + 1);
        }
        suite.check(sum == at_one, "coefficient sum equals P(1)", {m, n, k, {}});
      }
    }
  }
}

void stirling_suite(const VerifyOptions& options, VerifyReport& report) {
  Suite suite("stirling", report);
  const bool full = options.profile == VerifyProfile::full;
  const std::uint64_t n_alt = full ? 40 : 25;
  const std::uint64_t n_concave = full ? 60 : 30;
  const std::uint64_t r_ratio = full ? 40 : 25;

  StirlingTable table(n_concave + 1);
  if (options.stirling_fault) {
    const auto [n, k] = *options.stirling_fault;
    table.set(n, k, table(n, k) + 1);
  }

  for (std::uint64_t n = 0; n <= n_alt; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      suite.check(stirling2_alternating(n, k) == table(n, k), "alternating sum equals recurrence",
                  {{}, n, k, {}});
    }
  }
  for (std::uint64_t n = 0; n <= n_concave; ++n) {
    for (std::uint64_t k = 2; k + 1 <= n; ++k) {
      suite.check(table(n, k) * table(n, k) >= table(n, k + 1) * table(n, k - 1), "log-concave",
                  {{}, n, k, {}});
    }
    if (n >= 1) {
      suite.check(table(n, n - 1) == binomial(n, 2) * table(n, n), "endpoint ratio is C(n,2)",
                  {{}, n, n - 1, {}});
    }
  }
  // k-1 plays the role of the block count j below.
  for (std::uint64_t r = 2; r <= r_ratio; ++r) {
    for (std::uint64_t j = 2; j <= r; ++j) {
      const Rational ratio = make_rational(table(r + 1, j), table(r, j));
      const Rational rhs = Rational(j) + make_rational(table(r, j - 1), table(r, j));
      suite.check(ratio == rhs, "recurrence ratio identity", {{}, {}, j + 1, r});
      suite.check(ratio <= make_rational(Integer(r * (r + 1)), Integer(2)), "ratio <= r(r+1)/2",
                  {{}, {}, j + 1, r});
    }
  }
}

void dominance_suite(VerifyProfile profile, VerifyReport& report) {
  Suite suite("dominance", report);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;  // (m, k)
  std::uint64_t n = 10000;
  if (profile == VerifyProfile::full) {
    n = 100000;
    for (std::uint64_t m = 1; m <= 2; ++m) {
      for (std::uint64_t k = 1; k <= 6; ++k) points.emplace_back(m, k);
    }
  } else {
    for (std::uint64_t k = 1; k <= 5; ++k) points.emplace_back(1, k);
  }
  for (const auto& [m, k] : points) {
    const auto rep = dominance_report(m, n, k);
    for (const auto& row : rep.ratios) {
      suite.check(row.pass, "term ratio below ((m+1)/2)(r+1)^2/n", {m, n, k, row.r},
                  to_string(row.ratio) + " vs " + to_string(row.bound));
    }
    suite.check(rep.first_term_share >= make_rational(9, 10), "first term carries >= 90%",
                {m, n, k, {}}, std::to_string(to_double(rep.first_term_share)));
    suite.check(rep.reconstructed_scaled() == moment_stirling_beta({m, n, k}).scaled,
                "terms reconstruct the moment", {m, n, k, {}});
  }
}

void asymptotic_suite(VerifyProfile profile, VerifyReport& report) {
  Suite suite("asymptotic", report);
  const std::vector<std::uint64_t> ks = profile == VerifyProfile::full
                                            ? std::vector<std::uint64_t>{10, 20, 40}
                                            : std::vector<std::uint64_t>{10, 20};
  for (std::uint64_t m = 1; m <= 2; ++m) {
    double previous = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto c = beta_leading_asymptotic(m, ks[i]);
      if (i > 0) {
        suite.check(c.mid_vs_closed < previous, "closed-form error decreases in k",
                    {m, {}, ks[i], {}}, std::to_string(c.mid_vs_closed));
      }
      previous = c.mid_vs_closed;
    }
    const auto last = beta_leading_asymptotic(m, ks.back());
    suite.check(last.mid_vs_closed <= 0.10, "closed-form error <= 0.10", {m, {}, ks.back(), {}},
                std::to_string(last.mid_vs_closed));
  }
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  report.profile = options.profile;
  cross_formula_suite(options.profile, report);
  beta_bounds_suite(options.profile, report);
  stirling_suite(options, report);
  dominance_suite(options.profile, report);
  asymptotic_suite(options.profile, report);
  return report;
}

}  // namespace fcedge
