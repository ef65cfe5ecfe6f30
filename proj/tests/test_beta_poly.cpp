#include "fcedge/beta_poly.hpp"
#include "fcedge/combinatorics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace fcedge;

namespace {

// Naive rational convolution of the factors (1 - i/n + x), kept separate from
// the integer-scaled expansion under test.
std::vector<Rational> direct_expansion(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  std::vector<Rational> poly{Rational(1)};
  for (std::uint64_t i = 0; i < k; ++i) {
    const Rational root = Rational(1) - make_rational(Integer(i), Integer(n));
    for (std::uint64_t rep = 0; rep <= m; ++rep) {
      std::vector<Rational> next(poly.size() + 1, Rational(0));
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d] += poly[d] * root;
        next[d + 1] += poly[d];
      }
      poly = std::move(next);
    }
  }
  return poly;
}

}  // namespace

TEST(ComputeBeta, SingleRootIsBinomialRow) {
  for (std::uint64_t m = 1; m <= 5; ++m) {
    for (std::uint64_t n : {1u, 3u, 10u}) {
      const auto bv = compute_beta(m, n, 1);
      ASSERT_EQ(bv.coeffs.size(), m + 2);
      for (std::uint64_t r = 0; r <= m + 1; ++r) EXPECT_EQ(bv[r], Rational(binomial(m + 1, r)));
    }
  }
}

TEST(ComputeBeta, SmallExpansion) {
  const auto bv = compute_beta(1, 2, 2);
  const std::vector<Rational> expected{make_rational(1, 4), make_rational(3, 2),
                                       make_rational(13, 4), Rational(3), Rational(1)};
  EXPECT_EQ(bv.coeffs, expected);
  EXPECT_EQ(direct_expansion(1, 2, 2), expected);
}

TEST(ComputeBeta, MatchesDirectExpansionOnGrid) {
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 5; ++k) {
      for (std::uint64_t n = k; n <= 9; ++n) {
        EXPECT_EQ(compute_beta(m, n, k).coeffs, direct_expansion(m, n, k)) << m << n << k;
      }
    }
  }
}

TEST(ComputeBeta, ConstantTermIsProductOfRoots) {
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 7; ++k) {
      for (std::uint64_t n = k; n <= 15; ++n) {
        Rational expect = 1;
        for (std::uint64_t i = 0; i < k; ++i) {
          expect *= pow(Rational(Rational(1) - make_rational(Integer(i), Integer(n))), m + 1);
        }
        EXPECT_EQ(compute_beta(m, n, k)[0], expect);
      }
    }
  }
}

TEST(ComputeBeta, RejectsBadArguments) {
  EXPECT_THROW(compute_beta(1, 3, 4), std::invalid_argument);
  EXPECT_THROW(compute_beta(0, 3, 1), std::invalid_argument);
  EXPECT_THROW(compute_beta(1, 0, 1), std::invalid_argument);
  EXPECT_THROW(compute_beta(1, 3, 0), std::invalid_argument);
}

TEST(BetaProperty, MonicPositiveAndSumsToPAtOne) {
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 8; ++k) {
      for (std::uint64_t n = k; n <= 20; ++n) {
        const auto bv = compute_beta(m, n, k);
        ASSERT_EQ(bv.coeffs.size(), k * (m + 1) + 1);
        EXPECT_EQ(bv.coeffs.back(), 1);
        Rational sum = 0;
        for (const auto& c : bv.coeffs) {
          EXPECT_GT(c, 0);
          sum += c;
        }
        Rational at_one = 1;
        for (std::uint64_t i = 0; i < k; ++i) {
          at_one *= pow(Rational(2 - make_rational(Integer(i), Integer(n))), m + 1);
        }
        EXPECT_EQ(sum, at_one);
      }
    }
  }
}

TEST(BetaBoundsCheck, NamedRows) {
  const auto report = beta_bounds_check(compute_beta(1, 2, 2));
  ASSERT_TRUE(report.pass);
  const auto& row = report.rows[2];
  EXPECT_EQ(row.lower, make_rational(3, 2));
  EXPECT_EQ(row.beta, make_rational(13, 4));
  EXPECT_EQ(row.upper, Rational(6));
  const auto& top = report.rows.back();
  EXPECT_EQ(top.lower, 1);
  EXPECT_EQ(top.beta, 1);
  EXPECT_EQ(top.upper, 1);
}

TEST(BetaBoundsCheck, TightAboveForSingleRoot) {
  for (std::uint64_t m = 1; m <= 4; ++m) {
    const auto report = beta_bounds_check(compute_beta(m, 7, 1));
    EXPECT_TRUE(report.pass);
    for (const auto& row : report.rows) {
      EXPECT_EQ(row.beta, row.upper);
      EXPECT_EQ(row.lower, row.upper);  // (1 - 0/n)^... = 1
    }
  }
}

TEST(BetaBoundsProperty, HoldsOnModerateGrid) {
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 8; ++k) {
      for (std::uint64_t n = k; n <= 40; n += 3) {
        EXPECT_TRUE(beta_bounds_check(compute_beta(m, n, k)).pass) << m << "," << n << "," << k;
      }
    }
  }
}

TEST(BetaRatio, NamedValues) {
  EXPECT_EQ(beta_ratio(compute_beta(1, 2, 2), 0), Rational(6));
  EXPECT_EQ(beta_ratio(compute_beta(1, 5, 1), 1), make_rational(1, 2));
  EXPECT_THROW(beta_ratio(compute_beta(1, 5, 1), 2), std::out_of_range);
}

TEST(BetaRatio, CloseToBinomialRatioForLargeN) {
  // Grid deep inside k^2 << n: every ratio within 10% of (K - r)/(r + 1).
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 6; ++k) {
      const std::uint64_t n = 10 * k * k * 10;
      const auto bv = compute_beta(m, n, k);
      const std::uint64_t degree = bv.degree();
      for (std::uint64_t r = 0; r < degree; ++r) {
        const double ratio = to_double(beta_ratio(bv, r));
        const double binom_ratio = static_cast<double>(degree - r) / static_cast<double>(r + 1);
        EXPECT_LE(std::fabs(ratio / binom_ratio - 1.0), 0.10) << m << "," << k << "," << r;
      }
    }
  }
}

TEST(BetaProperty, ApproachesBinomialAsNGrows) {
  // Fixed k: beta_r / C(K,r) increases to 1 along n = 10^3, 10^4, 10^5 and the
  // final deviation is below (k-1) K / n.
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k : {2u, 4u, 6u}) {
      const std::uint64_t degree = k * (m + 1);
      std::vector<Rational> previous;
      for (std::uint64_t n : {1000u, 10000u, 100000u}) {
        const auto bv = compute_beta(m, n, k);
        std::vector<Rational> scaled;
        for (std::uint64_t r = 0; r <= degree; ++r) {
          scaled.push_back(bv[r] / binomial(degree, r));
          if (!previous.empty() && r < degree) EXPECT_GT(scaled[r], previous[r]);
        }
        previous = scaled;
      }
      for (std::uint64_t r = 0; r <= degree; ++r) {
        const Rational deviation = 1 - previous[r];
        EXPECT_LT(deviation, make_rational(Integer((k - 1) * degree), Integer(100000)));
      }
    }
  }
}
