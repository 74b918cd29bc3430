#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace octanorm;
using fixtures::e;

namespace {

SpaceVec pair_vec(const SpaceVec& x, const SpaceVec& y) { return concat(x, y); }

SpaceVec single(std::size_t index, double value = 1.0) { return e(1, 0, index, value); }

// Random unit vectors of l1 on indices 0..5.
std::vector<SpaceVec> random_l1_witness(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::bernoulli_distribution keep(0.5);
  std::vector<SpaceVec> pts;
  while (pts.size() < count) {
    SparseVec v;
    for (std::size_t i = 0; i < 6; ++i)
      if (keep(rng)) v.set(i, u(rng));
    if (v.empty()) continue;
    pts.push_back(scaled(SpaceVec{{v}}, 1.0 / lp_norm(v, 1)));
  }
  return pts;
}

}  // namespace

TEST(WitnessSet, Validation) {
  const auto l1 = SpaceExpr::leaf(1);
  EXPECT_THROW(make_witness_set(l1, {}), PreconditionError);
  EXPECT_THROW(make_witness_set(l1, {single(0, 2.0)}), PreconditionError);
  EXPECT_THROW(make_witness_set(l1, {single(0), single(1)}, {0.5}), StructuralError);
  EXPECT_THROW(make_witness_set(l1, {single(0), single(1)}, {0.5, 0.6}), PreconditionError);
  EXPECT_NO_THROW(make_witness_set(l1, {single(0), single(1)}, {0.25, 0.75}));
}

TEST(WitnessValue, Examples) {
  const auto l1 = make_witness_set(SpaceExpr::leaf(1), {single(0), single(1)});
  EXPECT_DOUBLE_EQ(witness_value(l1, single(2)), 2.0);
  // tau(e0, e0) = 0 and tau(e1, e0) = 2.
  EXPECT_DOUBLE_EQ(witness_value(l1, single(0)), 1.0);
  const auto l2 = make_witness_set(SpaceExpr::leaf(2), {single(0)});
  EXPECT_DOUBLE_EQ(witness_value(l2, single(1)), 0.0);
  EXPECT_THROW(witness_value(l1, SpaceVec{{SparseVec{}}}), DomainError);
}

TEST(WitnessValue, IgnoresPositiveScalingOfTheDirection) {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 100; ++k) {
    const auto s = fixtures::random_space(rng, 2);
    const auto w = make_witness_set(s, {fixtures::random_unit_vec(rng, s), fixtures::random_unit_vec(rng, s)});
    const auto y = fixtures::random_unit_vec(rng, s);
    EXPECT_NEAR(witness_value(w, scaled(y, 3.5)), witness_value(w, y), 1e-12);
  }
}

TEST(DirectionSearch, L1WitnessSetsReachTwo) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> size(1, 10);
  for (int k = 0; k < 20; ++k) {
    const auto w = make_witness_set(SpaceExpr::leaf(1), random_l1_witness(rng, size(rng)));
    const auto r = direction_search(w, 50, static_cast<std::uint64_t>(k));
    EXPECT_EQ(r.lower, 2.0);
    EXPECT_EQ(witness_value(w, r.lower_direction), r.lower);
  }
}

TEST(DirectionSearch, SmoothLeafGivesZero) {
  const auto w = make_witness_set(SpaceExpr::leaf(2), {single(0), single(1)});
  EXPECT_EQ(direction_search(w, 50, 0).lower, 0.0);
}

TEST(DirectionSearch, LpSumModelApproachesTheConstant) {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto s = l1_psum_model(p);
    const auto w = make_witness_set(s, {pair_vec(single(0), single(0, 0.0)), pair_vec(single(0, 0.0), single(0))});
    const auto r = direction_search(w, 200, 0);
    EXPECT_NEAR(r.lower, std::pow(2.0, 1 - 1 / p), 1e-3) << p;
    EXPECT_LE(r.lower, std::pow(2.0, 1 - 1 / p) + 1e-12);
  }
}

TEST(DirectionSearch, IsReproducible) {
  std::mt19937_64 rng(43);
  const auto s = fixtures::random_space(rng, 3);
  const auto w = make_witness_set(s, {fixtures::random_unit_vec(rng, s), fixtures::random_unit_vec(rng, s)});
  const auto a = direction_search(w, 100, 9);
  const auto b = direction_search(w, 100, 9);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.lower_direction, b.lower_direction);
}

TEST(DirectionSearch, LowerBoundIsRealizedAndAtMostTwo) {
  std::mt19937_64 rng(44);
  for (int k = 0; k < 30; ++k) {
    const auto s = fixtures::random_space(rng, 2);
    const auto w = make_witness_set(s, {fixtures::random_unit_vec(rng, s), fixtures::random_unit_vec(rng, s)});
    const auto r = direction_search(w, 30, 1);
    EXPECT_NEAR(witness_value(w, r.lower_direction), r.lower, 1e-12);
    EXPECT_LE(r.lower, 2.0 + 1e-12);
    EXPECT_NEAR(norm(s, r.lower_direction), 1.0, 1e-12);
  }
}

class TheoremSum : public ::testing::TestWithParam<int> {
 protected:
  static AbsNorm2 sum_norm(int i) {
    switch (i) {
      case 0:
        return AbsNorm2::lp(kInf);
      case 1:
        return AbsNorm2::lp(2);
      default:
        return AbsNorm2::param_ab(0.5, 0);
    }
  }
};

TEST_P(TheoremSum, BothFactorsSearched) {
  const auto n = sum_norm(GetParam());
  const auto l1 = SpaceExpr::leaf(1);
  std::vector<SpaceVec> xs, ys;
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = 0.3 + 0.2 * static_cast<double>(i);
    const Vec2 st = (1.0 / eval(n, {1 - t, t})) * Vec2{1 - t, t};
    xs.push_back(single(i, st.x));
    ys.push_back(single(i + 1, -st.y));
  }
  const auto r = theorem_sum_direction(n, l1, l1, xs, ys, 0.5, 50, 0);
  EXPECT_EQ(r.branch, "both");
  EXPECT_NEAR(*r.delta_x, 2.0, 1e-12);
  EXPECT_NEAR(*r.delta_y, 2.0, 1e-12);
  EXPECT_NEAR(r.predicted, 2 * gamma_inf(n), 1e-15);
  EXPECT_GE(r.achieved, r.predicted - 1e-6);
}

TEST_P(TheoremSum, ForcedDegenerateBranches) {
  const auto n = sum_norm(GetParam());
  const auto l1 = SpaceExpr::leaf(1);
  const SpaceVec zero{{SparseVec{}}};
  std::vector<SpaceVec> xs, ys, zeros;
  for (std::size_t i = 0; i < 3; ++i) {
    xs.push_back(single(i));
    ys.push_back(single(2 * i, i % 2 ? -1.0 : 1.0));
    zeros.push_back(zero);
  }
  const auto c0 = theorem_sum_direction(n, l1, l1, zeros, ys, 0.5, 50, 0);
  EXPECT_EQ(c0.branch, "c=0");
  EXPECT_EQ(c0.c, 0.0);
  EXPECT_FALSE(c0.delta_x.has_value());
  EXPECT_NEAR(c0.predicted, gamma_inf(n) * 2, 1e-15);
  EXPECT_GE(c0.achieved, c0.predicted - 1e-6);

  const auto d0 = theorem_sum_direction(n, l1, l1, xs, zeros, 0.5, 50, 0);
  EXPECT_EQ(d0.branch, "d=0");
  EXPECT_EQ(d0.d, 0.0);
  EXPECT_FALSE(d0.delta_y.has_value());
  EXPECT_GE(d0.achieved, d0.predicted - 1e-6);
}

INSTANTIATE_TEST_SUITE_P(SumNorms, TheoremSum, ::testing::Values(0, 1, 2));

TEST(TheoremSumErrors, Preconditions) {
  const auto l1 = SpaceExpr::leaf(1);
  const auto n = AbsNorm2::lp(kInf);
  EXPECT_THROW(theorem_sum_direction(n, l1, l1, {single(0)}, {}, 0.5, 10, 0), StructuralError);
  EXPECT_THROW(theorem_sum_direction(n, l1, l1, {single(0, 2.0)}, {single(0)}, 0.5, 10, 0), PreconditionError);
  EXPECT_THROW(theorem_sum_direction(n, l1, l1, {single(0)}, {single(0)}, 0.0, 10, 0), DomainError);
}

TEST(L1SumDirection, PassesTheFactorValueThrough) {
  const auto l1 = SpaceExpr::leaf(1);
  const SpaceVec zero{{SparseVec{}}};
  const std::vector<std::pair<SpaceVec, SpaceVec>> paired{
      {single(0, 0.5), single(0, 0.5)}, {zero, single(1, -1.0)}, {single(1, 0.25), single(2, 0.75)}};
  const auto r = l1_sum_direction(l1, l1, paired, 50, 0);
  EXPECT_EQ(r.x_value, 2.0);
  EXPECT_NEAR(r.achieved, r.x_value, 1e-12);
  EXPECT_TRUE(r.direction.leaves[1].empty());

  const auto l2 = SpaceExpr::leaf(2);
  const auto s = l1_sum_direction(l2, l1, {{single(0), zero}, {zero, single(0)}}, 50, 0);
  // tau(e0, y) = 0 in l2, the zero point contributes 2: mean 1.
  EXPECT_NEAR(s.x_value, 1.0, 1e-12);
  EXPECT_NEAR(s.achieved, 1.0, 1e-12);
  EXPECT_THROW(l1_sum_direction(l1, l1, {{single(0), single(0)}}, 10, 0), PreconditionError);
}

TEST(FEps, Values) {
  // p = 3: (p-1) 2^(p-3) 2^(1-2/p) eps + eps^(p-1)/p.
  const double p3 = 2 * std::pow(2.0, 0.0) * std::pow(2.0, 1 - 2.0 / 3) * 0.01 + 0.0001 / 3;
  EXPECT_NEAR(f_eps(3, 0.01), p3, 1e-15);
  EXPECT_NEAR(f_eps(3, 0.01), 0.0252317, 1e-7);
  EXPECT_NEAR(f_eps(1.5, 0.01), 0.0025 + 0.1 / 1.5, 1e-15);
  EXPECT_NEAR(f_eps(2, 0.1), 0.05 + 0.05, 1e-15);
  EXPECT_THROW(f_eps(1, 0.1), DomainError);
  EXPECT_THROW(f_eps(kInf, 0.1), DomainError);
  EXPECT_THROW(f_eps(2, 1.0), DomainError);
}

TEST(FEps, VanishesAsEpsShrinks) {
  for (double p : {1.2, 2.0, 4.0}) {
    double prev = kInf;
    for (double eps = 0.5; eps > 1e-30; eps /= 10) {
      const double f = f_eps(p, eps);
      EXPECT_LT(f, prev);
      prev = f;
    }
    EXPECT_LT(prev, 1e-3);
  }
}

TEST(UpperInequality, HoldsOnSamples) {
  for (double p : {1.5, 2.0, 3.0})
    for (double eps : {0.05, 0.5}) {
      const auto r = check_upper_inequality(p, eps, 2000, 5);
      EXPECT_TRUE(r.passed()) << p << " " << eps << " " << r.max_excess;
      EXPECT_EQ(r.samples, 2000u);
    }
}

TEST(ExactDelta, BracketsTheConstant) {
  for (double p : {1.5, 2.0, 3.0}) {
    const auto r = exact_delta_report(p, 1e-3);
    EXPECT_TRUE(r.passed()) << p << " " << r.width;
    EXPECT_DOUBLE_EQ(*r.bracket.upper, std::pow(2.0, 1 - 1 / p));
  }
  EXPECT_THROW(exact_delta_report(1.0, 1e-3), DomainError);
}
