#include "fcedge/combinatorics.hpp"
#include "fcedge/moments.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fcedge;

// Closed forms below come from expanding the falling-factorial sum by hand:
//   G(1,n,2) = 2,  G(2,n,2) = 3 + 1/n^2,  G(1,n,3) = 5 + 1/n^2.

TEST(MomentGammaSum, FirstMomentIsOne) {
  for (std::uint64_t m = 1; m <= 4; ++m) {
    for (std::uint64_t n = 1; n <= 20; ++n) {
      EXPECT_EQ(moment_gamma_sum({m, n, 1}).value, 1) << m << "," << n;
    }
  }
}

TEST(MomentGammaSum, NamedValues) {
  const auto g = moment_gamma_sum({1, 2, 2});
  EXPECT_EQ(g.value, 2);
  EXPECT_EQ(g.scaled, 16);
  EXPECT_EQ(moment_gamma_sum({2, 2, 2}).value, make_rational(13, 4));
}

TEST(MomentGammaSum, RestrictedRangeAgrees) {
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 7; ++k) {
      for (std::uint64_t n = k; n <= 14; ++n) {
        EXPECT_EQ(moment_gamma_sum({m, n, k}), moment_gamma_restricted({m, n, k}));
      }
    }
  }
}

TEST(MomentFallingSum, ClosedForms) {
  for (std::uint64_t n = 1; n <= 50; ++n) {
    const Rational inv_n2 = make_rational(1, Integer(n * n));
    EXPECT_EQ(moment_falling_sum({1, n, 2}).value, 2) << n;
    EXPECT_EQ(moment_falling_sum({2, n, 2}).value, 3 + inv_n2) << n;
    EXPECT_EQ(moment_falling_sum({1, n, 3}).value, 5 + inv_n2) << n;
  }
  for (std::uint64_t m = 1; m <= 6; ++m) EXPECT_EQ(moment_falling_sum({m, 1, 1}).value, 1);
}

TEST(MomentFallingSum, ScaledRelation) {
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 5; ++k) {
      for (std::uint64_t n = 1; n <= 8; ++n) {
        const auto v = moment_falling_sum({m, n, k});
        EXPECT_EQ(v.scaled, v.value * pow(Integer(n), m * k + 1));
        EXPECT_GT(v.value, 0);
      }
    }
  }
}

TEST(MomentStirlingBeta, NamedValues) {
  EXPECT_EQ(moment_stirling_beta({1, 2, 2}).value, 2);
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t n = 1; n <= 6; ++n) EXPECT_EQ(moment_stirling_beta({m, n, 1}).value, 1);
  }
  EXPECT_EQ(moment_stirling_beta({2, 3, 2}).value, make_rational(28, 9));
  EXPECT_EQ(moment_falling_sum({2, 3, 2}).value, make_rational(28, 9));
}

TEST(MomentQueries, RejectInvalid) {
  EXPECT_THROW(moment_gamma_sum({0, 2, 2}), std::invalid_argument);
  EXPECT_THROW(moment_falling_sum({1, 0, 2}), std::invalid_argument);
  EXPECT_THROW(moment_falling_sum({1, 2, 0}), std::invalid_argument);
  EXPECT_THROW(moment_stirling_beta({1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(moment_cross_check({1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(moment_limit_gap(1, 3, 2), std::invalid_argument);
}

TEST(MomentFallingSum, TotalBeyondKEqualsN) {
  // k > n is allowed here; the value still obeys the closed forms.
  EXPECT_EQ(moment_falling_sum({1, 1, 2}).value, 2);
  EXPECT_EQ(moment_falling_sum({1, 2, 3}).value, make_rational(21, 4));
  EXPECT_EQ(moment_falling_sum({2, 1, 2}).value, 4);
}

TEST(MomentCrossCheck, NamedPoints) {
  EXPECT_TRUE(moment_cross_check({1, 4, 3}).agree);
  EXPECT_TRUE(moment_cross_check({3, 5, 2}).agree);
  const auto cc = moment_cross_check({2, 2, 2});
  EXPECT_TRUE(cc.agree);
  EXPECT_EQ(cc.falling_sum.value, make_rational(13, 4));
}

TEST(MomentCrossCheckProperty, FullGridAndSpotPoints) {
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 6; ++k) {
      for (std::uint64_t n = k; n <= 12; ++n) {
        EXPECT_TRUE(moment_cross_check({m, n, k}).agree) << m << "," << n << "," << k;
      }
    }
  }
  EXPECT_TRUE(moment_cross_check({1, 50, 10}).agree);
  EXPECT_TRUE(moment_cross_check({2, 40, 8}).agree);
}

TEST(MomentProperty, LogConvexInK) {
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t n = 1; n <= 12; ++n) {
      for (std::uint64_t k = 2; k + 1 <= 8; ++k) {
        const Rational lo = moment_falling_sum({m, n, k - 1}).value;
        const Rational mid = moment_falling_sum({m, n, k}).value;
        const Rational hi = moment_falling_sum({m, n, k + 1}).value;
        EXPECT_LE(mid * mid, lo * hi) << m << "," << n << "," << k;
      }
    }
  }
}

TEST(MomentLimitGap, NamedValues) {
  for (std::uint64_t n = 2; n <= 30; ++n) {
    EXPECT_EQ(moment_limit_gap(1, 2, n), 0);
    EXPECT_EQ(moment_limit_gap(2, 2, n), make_rational(1, Integer(n * n)));
    for (std::uint64_t m = 1; m <= 3; ++m) EXPECT_EQ(moment_limit_gap(m, 1, n), 0);
  }
}

TEST(MomentLimitGap, FussCatalanLimitAtLargeN) {
  for (std::uint64_t m = 1; m <= 3; ++m) {
    for (std::uint64_t k = 1; k <= 5; ++k) {
      const Rational rel = moment_limit_gap(m, k, 1000) / fuss_catalan(m, k);
      EXPECT_GE(rel, 0);  // finite-n moments sit above the limit
      EXPECT_LE(rel, make_rational(5, 100)) << m << "," << k;
    }
  }
}
