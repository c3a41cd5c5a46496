// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qre/errors.hpp"
#include "qre/opfunc.hpp"

using namespace qre;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Functions, Values) {
  EXPECT_NEAR(make_neg_log()(2.0), -std::log(2.0), 1e-15);
  EXPECT_NEAR(make_f_p(0.5)(4.0), -4.0, 1e-14);
  EXPECT_NEAR(make_neg_power(0.5)(9.0), -3.0, 1e-15);
  EXPECT_NEAR(make_transpose(make_neg_log())(3.0), 3.0 * std::log(3.0), 1e-14);
  // x f_p(1/x) = (x - x^{1-p}) / (p(1-p)).
  EXPECT_NEAR(make_transpose(make_f_p(0.3))(2.0), (2.0 - std::pow(2.0, 0.7)) / 0.21, 1e-14);
}

TEST(Functions, NormalizedAtOne) {
  for (double p : {-0.5, 0.25, 0.5, 0.75, 1.5}) {
    const auto f = make_f_p(p);
    EXPECT_NEAR(f(1.0), 0.0, 1e-15) << f.id();
    EXPECT_DOUBLE_EQ(f.second_derivative_at_one(), 1.0);
    // Central difference for f''(1).
    const double h = 1e-4;
    EXPECT_NEAR((f(1 + h) - 2 * f(1.0) + f(1 - h)) / (h * h), 1.0, 1e-5) << f.id();
  }
  EXPECT_NEAR(make_neg_power(0.3).second_derivative_at_one(), 0.21, 1e-15);
}

TEST(Functions, ParameterValidation) {
  EXPECT_THROW(make_f_p(0.0), InvalidParameter);
  EXPECT_THROW(make_f_p(1.0), InvalidParameter);
  EXPECT_THROW(make_f_p(2.5), InvalidParameter);
  EXPECT_THROW(make_neg_power(1.2), InvalidParameter);
}

TEST(Functions, RegularityClassification) {
  EXPECT_TRUE(make_neg_log().is_regular());
  EXPECT_TRUE(make_f_p(0.5).is_regular());
  EXPECT_FALSE(make_f_p(1.5).is_regular());
  EXPECT_FALSE(make_f_p(-0.5).is_regular());
  EXPECT_THROW(make_f_p(1.5).regularity(0.5), IrregularFunction);
  EXPECT_THROW(regularity_constant(make_f_p(-0.5), 4.0, 0.5), IrregularFunction);
  EXPECT_THROW(representation_value(make_f_p(1.5), 2.0), IrregularFunction);
}

TEST(Functions, FromId) {
  EXPECT_EQ(function_from_id("neg_log").id(), "neg_log");
  EXPECT_EQ(function_from_id("f_p:0.5").id(), "f_p:0.5");
  EXPECT_EQ(function_from_id("neg_power:0.25").id(), "neg_power:0.25");
  EXPECT_EQ(function_from_id("T(f_p:0.5)").id(), "T(f_p:0.5)");
  EXPECT_THROW(function_from_id("log"), InputError);
  EXPECT_THROW(function_from_id("f_p:abc"), InputError);
  EXPECT_THROW(function_from_id("f_p:0.5x"), InputError);
  EXPECT_EQ(f_p_exponent("f_p:0.25"), 0.25);
  EXPECT_FALSE(f_p_exponent("neg_log").has_value());
}

TEST(Functions, BoundaryBehaviour) {
  EXPECT_FALSE(make_neg_log().value_at_zero().has_value());
  EXPECT_EQ(make_f_p(0.5).value_at_zero(), 4.0);
  EXPECT_FALSE(make_f_p(-0.5).value_at_zero().has_value());
  EXPECT_FALSE(make_f_p(1.5).slope_at_infinity().has_value());
  // Transposition swaps f(0+) and lim f(x)/x.
  const auto t = make_transpose(make_neg_log());
  EXPECT_EQ(t.value_at_zero(), 0.0);
  EXPECT_FALSE(t.slope_at_infinity().has_value());
}

TEST(Representation, AffineConstants) {
  EXPECT_EQ(make_neg_log().loewner_a(), 0.0);
  EXPECT_EQ(make_neg_log().loewner_b(), 0.0);
  EXPECT_NEAR(make_neg_log().mu_density(3.7), 1.0, 1e-15);
  // b = Re f(i) = -cos(p pi / 2) for -x^p.
  EXPECT_NEAR(make_neg_power(0.5).loewner_b(), -std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(make_neg_power(0.5).mu_density(4.0), 2.0 / kPi, 1e-15);
  EXPECT_NEAR(make_f_p(0.5).mu_density(4.0), 8.0 / kPi, 1e-14);
}

TEST(Representation, NegLogAtTwo) {
  EXPECT_NEAR(representation_value(make_neg_log(), 2.0), -std::log(2.0), 1e-6);
}

TEST(Representation, NegPowerAtThree) {
  EXPECT_NEAR(representation_value(make_neg_power(0.5), 3.0), -std::sqrt(3.0), 1e-6);
}

TEST(Representation, GridFidelity) {
  const std::vector<double> grid = {1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1e3};
  for (const auto& f : {make_neg_log(), make_f_p(0.3), make_f_p(0.5), make_f_p(0.7),
                        make_neg_power(0.25)}) {
    for (const auto& r : representation_check(f, grid)) {
      EXPECT_LT(r.abs_error, 1e-6) << f.id() << " at x = " << r.x;
    }
  }
}

TEST(Regularity, WindowEndpoints) {
  const auto lo = regularity_window(16.0, 0.25);
  EXPECT_DOUBLE_EQ(lo.T_L, 16.0);
  EXPECT_NEAR(lo.T_R, std::pow(16.0, 1.0 / 3.0), 1e-13);
  const auto hi = regularity_window(16.0, 0.8);
  EXPECT_NEAR(hi.T_L, std::pow(16.0, 0.25), 1e-13);
  EXPECT_DOUBLE_EQ(hi.T_R, 16.0);
  EXPECT_THROW(regularity_window(16.0, 1.0), InvalidParameter);
}

TEST(Regularity, NegLogIsConstant) {
  for (double beta : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(regularity_constant(make_neg_log(), 37.0, beta).C, 1.0, 1e-15);
    const auto rc = make_neg_log().regularity(beta);
    EXPECT_EQ(rc.C, 1.0);
    EXPECT_EQ(rc.c, 0.0);
  }
}

TEST(Regularity, FpAtHalf) {
  const double p = 0.5;
  const double want = kPi * p * (1 - p) / std::sin(p * kPi) * std::pow(4.0, 0.5);
  EXPECT_NEAR(regularity_constant(make_f_p(p), 4.0, 0.5).C, want, 1e-13);
}

TEST(Regularity, ClosedFormMatchesGridSearch) {
  for (const auto& f : {make_neg_log(), make_f_p(0.3), make_f_p(0.7), make_neg_power(0.5),
                        make_transpose(make_f_p(0.4))}) {
    for (double beta : {0.2, 0.5, 0.75}) {
      for (double T : {2.0, 50.0, 1e4}) {
        const double exact = regularity_constant(f, T, beta).C;
        const double grid = regularity_constant_numeric(f, T, beta).C;
        EXPECT_NEAR(grid, exact, 1e-9 * exact) << f.id() << " beta " << beta << " T " << T;
        const auto rc = f.regularity(beta);
        EXPECT_NEAR(rc.C * std::pow(T, 2 * rc.c), exact, 1e-9 * exact);
      }
    }
  }
}

TEST(Regularity, ExponentBranches) {
  // c = q/2 below beta = 1/2, q (1 - beta) / (2 beta) above.
  const auto f = make_f_p(0.6);
  EXPECT_NEAR(f.regularity(0.3).c, 0.3, 1e-15);
  EXPECT_NEAR(f.regularity(0.75).c, 0.6 * 0.25 / 1.5, 1e-15);
  EXPECT_NEAR(f.regularity(0.5).c, 0.3, 1e-15);
  EXPECT_NEAR(f.regularity(0.3).C, kPi * 0.24 / std::sin(0.6 * kPi), 1e-14);
  // x log x: density s, so c = 1/2 below beta = 1/2.
  EXPECT_NEAR(make_transpose(make_neg_log()).regularity(0.4).c, 0.5, 1e-15);
}
