#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace octanorm;

TEST(AbsNorm2, LpValues) {
  EXPECT_DOUBLE_EQ(eval(AbsNorm2::lp(1), {0.5, -0.25}), 0.75);
  EXPECT_DOUBLE_EQ(eval(AbsNorm2::lp(2), {3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(eval(AbsNorm2::lp(kInf), {-3, 2}), 3.0);
  EXPECT_NEAR(eval(AbsNorm2::lp(3), {1, 1}), std::cbrt(2.0), 1e-15);
}

TEST(AbsNorm2, TwoParameterFamilyValues) {
  const auto n = AbsNorm2::param_ab(0.5, 0.0);
  // max{0.875, 1.5, (0.875 + 0.5 * 1.5) / 1}
  EXPECT_DOUBLE_EQ(eval(n, {0.875, 1.5}), 1.625);
  EXPECT_DOUBLE_EQ(eval(n, {1, 1}), 1.5);
  EXPECT_DOUBLE_EQ(eval(n, {0.5, 1}), 1.0);
  const auto m = AbsNorm2::param_ab(0.5, 0.5);
  EXPECT_DOUBLE_EQ(eval(m, {1, 1}), 4.0 / 3.0);
}

TEST(AbsNorm2, TwoParameterFamilyAgreesWithItsPolygon) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (double a : {0.0, 0.2, 0.5, 0.9})
    for (double b : {0.0, 0.3, 0.7}) {
      if (a == 0 && b == 0) continue;
      const auto n = AbsNorm2::param_ab(a, b);
      const auto poly = AbsNorm2::polygon(n.lowered());
      for (int k = 0; k < 100; ++k) {
        const Vec2 v{u(rng), u(rng)};
        EXPECT_NEAR(eval(n, v), eval(poly, v), 1e-12);
      }
    }
}

TEST(AbsNorm2, ConstructionErrors) {
  EXPECT_THROW(AbsNorm2::lp(0.5), DomainError);
  EXPECT_THROW(AbsNorm2::lp(std::nan("")), DomainError);
  EXPECT_THROW(AbsNorm2::param_ab(1.0, 0.0), DomainError);
  EXPECT_THROW(AbsNorm2::param_ab(-0.1, 0.5), DomainError);
  EXPECT_THROW(AbsNorm2::param_ab(0.0, 0.0), PreconditionError);
}

TEST(AbsNorm2, LoweringOfEndpointExponents) {
  EXPECT_TRUE(AbsNorm2::lp(1).is_polygonal());
  EXPECT_EQ(AbsNorm2::lp(1).lowered().vertices().size(), 2u);
  EXPECT_EQ(AbsNorm2::lp(kInf).lowered().vertices().size(), 3u);
  EXPECT_FALSE(AbsNorm2::lp(2).is_polygonal());
  EXPECT_THROW(AbsNorm2::lp(2).lowered(), PreconditionError);
  EXPECT_DOUBLE_EQ(AbsNorm2::dual_of(AbsNorm2::lp(3)).smooth_exponent(), 1.5);
}

TEST(AbsNorm2, DualValues) {
  EXPECT_DOUBLE_EQ(dual_eval(AbsNorm2::lp(1), {0.3, -0.8}), 0.8);
  EXPECT_DOUBLE_EQ(dual_eval(AbsNorm2::lp(kInf), {0.3, -0.8}), 1.1);
  EXPECT_NEAR(dual_eval(AbsNorm2::lp(2), {3, 4}), 5.0, 1e-15);
  // Dual of the two-parameter norm with (a,b) = (0.5, 0): max{|c|, 0.5|c| + |d|}.
  const auto d = AbsNorm2::dual_of(AbsNorm2::param_ab(0.5, 0.0));
  EXPECT_DOUBLE_EQ(eval(d, {1, 1}), 1.5);
  EXPECT_DOUBLE_EQ(eval(d, {1, 0.5}), 1.0);
}

TEST(AbsNorm2, DualMatchesGoldenSectionOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<AbsNorm2> norms{AbsNorm2::lp(1.3), AbsNorm2::lp(2), AbsNorm2::lp(4), AbsNorm2::lp(kInf),
                              AbsNorm2::param_ab(0.3, 0.7)};
  for (int i = 0; i < 10; ++i) norms.push_back(fixtures::random_polygon_norm(rng));
  for (const auto& n : norms) {
    for (int k = 0; k < 20; ++k) {
      const Functional2 f{u(rng), u(rng)};
      EXPECT_NEAR(dual_eval(n, f), dual_eval_golden(n, f), 1e-8);
    }
  }
}

TEST(AbsNorm2, BidualReproducesTheNorm) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2, 2);
  for (double p : {1.0, 1.1, 1.5, 2.0, 3.0, 10.0, kInf}) {
    const auto n = AbsNorm2::lp(p);
    const auto nn = AbsNorm2::dual_of(AbsNorm2::dual_of(n));
    for (int k = 0; k < 1000; ++k) {
      const Vec2 v{u(rng), u(rng)};
      EXPECT_NEAR(eval(nn, v), eval(n, v), 1e-6);
    }
  }
}

TEST(AbsNorm2, ValidatePassesForAllRepresentations) {
  std::mt19937_64 rng(12);
  std::vector<AbsNorm2> norms{AbsNorm2::lp(1), AbsNorm2::lp(1.5), AbsNorm2::lp(kInf), AbsNorm2::param_ab(0.5, 0),
                              AbsNorm2::dual_of(AbsNorm2::param_ab(0.2, 0.9)), fixtures::random_polygon_norm(rng)};
  for (const auto& n : norms) EXPECT_TRUE(validate(n, 2000, 1).passed());
}

TEST(Subdiff2, SmoothAndPolygonalPoints) {
  const auto l2 = subdiff2(AbsNorm2::lp(2), {0.6, 0.8});
  ASSERT_EQ(l2.size(), 1u);
  EXPECT_NEAR(l2[0].c, 0.6, 1e-15);
  EXPECT_NEAR(l2[0].d, 0.8, 1e-15);

  const auto l1 = subdiff2(AbsNorm2::lp(1), {1, 0});
  ASSERT_EQ(l1.size(), 2u);
  EXPECT_EQ(l1[0], (Functional2{1, 0}));
  EXPECT_EQ(l1[1], (Functional2{1, 1}));

  const auto inner = subdiff2(AbsNorm2::lp(1), {0.5, 0.5});
  ASSERT_EQ(inner.size(), 1u);
  EXPECT_EQ(inner[0], (Functional2{1, 1}));

  EXPECT_THROW(subdiff2(AbsNorm2::lp(1), {0, 0}), PreconditionError);
  EXPECT_THROW(subdiff2(AbsNorm2::lp(1), {-1, 0}), PreconditionError);
}

TEST(Subdiff2, ElementsNormThePoint) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 2);
  for (int i = 0; i < 30; ++i) {
    const auto n = fixtures::random_polygon_norm(rng);
    for (int k = 0; k < 30; ++k) {
      const Vec2 v{u(rng), u(rng)};
      for (const auto& f : subdiff2(n, v)) {
        EXPECT_NEAR(dual_eval(n, f), 1.0, 1e-12);
        EXPECT_NEAR(f(v), eval(n, v), 1e-12);
      }
    }
  }
}

TEST(NormingFunctional, TieBreakAndSphereCheck) {
  const auto linf = AbsNorm2::lp(kInf);
  // At (1,1) the l_inf ball has the dual face [(1,0),(0,1)].
  EXPECT_EQ(norming_functional(linf, {1, 1}), (Functional2{0, 1}));
  EXPECT_EQ(norming_functional(linf, {1, 1}, TieBreak::LargestC), (Functional2{1, 0}));
  EXPECT_THROW(norming_functional(linf, {2, 1}), PreconditionError);
}

TEST(ExposednessModulus, ClosedForms) {
  // l1: u(a) = 1 - a >= eps iff a <= 1 - eps.
  EXPECT_NEAR(exposedness_modulus(AbsNorm2::lp(1), 0.1), 0.1, 1e-11);
  // l2: u(a) = sqrt(1 - a^2) >= eps iff a <= sqrt(1 - eps^2).
  EXPECT_NEAR(exposedness_modulus(AbsNorm2::lp(2), 0.1), 1 - std::sqrt(0.99), 1e-11);
  // Chain (1,0),(0.5,1): u(a) = 2(1 - a) >= 0.25 iff a <= 0.875.
  EXPECT_NEAR(exposedness_modulus(AbsNorm2::param_ab(0.5, 0), 0.25), 0.125, 1e-11);
  EXPECT_THROW(exposedness_modulus(AbsNorm2::lp(kInf), 0.1), PreconditionError);
  EXPECT_THROW(exposedness_modulus(AbsNorm2::lp(2), 0.0), DomainError);
}

TEST(ExposednessModulus, SmallFirstCoordinateGapForcesSmallSecond) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto& n : {AbsNorm2::lp(1.5), AbsNorm2::param_ab(0.4, 0), AbsNorm2::lp(1)}) {
    for (double eps : {0.05, 0.2, 0.5}) {
      const double g = exposedness_modulus(n, eps);
      for (int k = 0; k < 500; ++k) {
        const double a = 1 - g * u(rng) * 0.999;
        EXPECT_LT(upper_boundary(n, a), eps + 1e-9);
      }
    }
  }
}

TEST(GammaInf, Values) {
  EXPECT_DOUBLE_EQ(gamma_inf(AbsNorm2::lp(kInf)), 1.0);
  EXPECT_DOUBLE_EQ(gamma_inf(AbsNorm2::lp(1)), 0.5);
  EXPECT_NEAR(gamma_inf(AbsNorm2::lp(2)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(gamma_inf(AbsNorm2::param_ab(0.5, 0)), 2.0 / 3.0, 1e-15);
}
