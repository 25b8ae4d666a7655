// Copyright 2026 The quantum-grueneisen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qg/elliptic.hpp"
#include "qg/error.hpp"
#include "qg/quadrature.hpp"

namespace {

using qg::elliptic::carlson_rd;
using qg::elliptic::carlson_rf;
using qg::elliptic::ell_e;
using qg::elliptic::ell_e_quadrature;

// Reference values computed with mpmath at 30 digits.
constexpr double kEm8 = 3.34122330513881455753;
constexpr double kEmHalf = 1.75177127569481786203;
constexpr double kEHalf = 1.35064388104767550252;
constexpr double kE09 = 1.10477473270407330792;
constexpr double kE0999 = 1.00217079083444516758;
constexpr double kEm100 = 10.2092609198145720096;

TEST(Elliptic, TrivialEndpoints) {
  EXPECT_DOUBLE_EQ(ell_e(0.0), std::numbers::pi / 2);
  EXPECT_EQ(ell_e(1.0), 1.0);
}

TEST(Elliptic, MatchesHighPrecisionValues) {
  EXPECT_NEAR(ell_e(-8.0), kEm8, 1e-14 * kEm8);
  EXPECT_NEAR(ell_e(-0.5), kEmHalf, 1e-14 * kEmHalf);
  EXPECT_NEAR(ell_e(0.5), kEHalf, 1e-14 * kEHalf);
  EXPECT_NEAR(ell_e(0.9), kE09, 1e-14 * kE09);
  EXPECT_NEAR(ell_e(0.999), kE0999, 1e-13 * kE0999);
  EXPECT_NEAR(ell_e(-100.0), kEm100, 1e-14 * kEm100);
}

TEST(Elliptic, MinusEightAgreesWithQuadrature) {
  EXPECT_NEAR(ell_e(-8.0), ell_e_quadrature(-8.0, 1e-12), 1e-11);
  EXPECT_NEAR(ell_e_quadrature(-8.0, 1e-12), kEm8, 1e-11);
}

TEST(Elliptic, RejectsParameterAboveOne) {
  EXPECT_THROW(ell_e(1.0000001), qg::domain_error);
  EXPECT_THROW(ell_e(std::nan("")), qg::domain_error);
  EXPECT_THROW(ell_e_quadrature(2.0), qg::domain_error);
  EXPECT_THROW(ell_e_quadrature(0.5, 0.0), qg::domain_error);
}

TEST(EllipticQuadrature, TrivialEndpoints) {
  EXPECT_NEAR(ell_e_quadrature(0.0, 1e-12), std::numbers::pi / 2, 1e-12);
  EXPECT_NEAR(ell_e_quadrature(1.0, 1e-12), 1.0, 1e-12);
}

TEST(EllipticQuadrature, AgreesWithClosedFormAtMinusHalf) {
  EXPECT_NEAR(ell_e_quadrature(-0.5, 1e-12), ell_e(-0.5), 1e-11);
}

TEST(Elliptic, RandomParametersAgreeWithQuadrature) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double m = u(rng);
    const double e = ell_e(m);
    EXPECT_NEAR(e, ell_e_quadrature(m, 1e-13), 1e-10 * std::max(1.0, std::abs(e))) << "m=" << m;
  }
}

TEST(Elliptic, LargeNegativeParameterGrowsLikeSqrt) {
  double prev_dev = HUGE_VAL;
  for (double M : {1e2, 1e3, 1e4}) {
    const double dev = std::abs(ell_e(-M) / std::sqrt(M) - 1.0);
    EXPECT_LT(dev, prev_dev);
    prev_dev = dev;
  }
  EXPECT_LT(prev_dev, 0.05);
}

TEST(Elliptic, StrictlyDecreasing) {
  double prev = ell_e(-1000.0);
  for (double m = -999.0; m <= 1.0; m += 0.5) {
    const double e = ell_e(m);
    EXPECT_GT(prev, e) << "m=" << m;
    prev = e;
  }
}

TEST(Carlson, KnownValues) {
  EXPECT_NEAR(carlson_rf(1, 2, 0), 1.31102877714605990523, 1e-15);
  EXPECT_NEAR(carlson_rf(2, 3, 4), 0.584082841677151706693, 1e-15);
  EXPECT_NEAR(carlson_rf(0.5, 1, 0), 1.85407467730137191843, 1e-15);
  EXPECT_NEAR(carlson_rd(0, 2, 1), 1.79721035210338831116, 1e-15);
  EXPECT_NEAR(carlson_rd(2, 3, 4), 0.165105272942610533487, 1e-15);
}

TEST(Carlson, Symmetry) {
  EXPECT_NEAR(carlson_rf(1, 2, 3), carlson_rf(3, 1, 2), 1e-15);
  EXPECT_NEAR(carlson_rd(1, 2, 3), carlson_rd(2, 1, 3), 1e-15);
  // R_F(x, x, x) = x^-1/2, R_D(x, x, x) = x^-3/2
  EXPECT_NEAR(carlson_rf(4, 4, 4), 0.5, 1e-15);
  EXPECT_NEAR(carlson_rd(4, 4, 4), 0.125, 1e-15);
}

TEST(AdaptiveSimpson, PolynomialsAndTranscendentals) {
  using qg::quadrature::adaptive_simpson;
  EXPECT_NEAR(adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12), 4.0, 1e-12);
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12),
              2.0, 1e-12);
  EXPECT_EQ(adaptive_simpson([](double) { return 1.0; }, 1.0, 1.0, 1e-12), 0.0);
}

TEST(AdaptiveSimpson, ReportsNonConvergence) {
  using qg::quadrature::adaptive_simpson;
  auto spiky = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); };
  EXPECT_THROW(adaptive_simpson(spiky, 0.0, 1.0, 1e-12, 4), qg::convergence_error);
}

}  // namespace
