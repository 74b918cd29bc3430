#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace octanorm;

namespace {

std::size_t error_position(std::string_view text, bool space = false) {
  try {
    if (space)
      parse_space(text);
    else
      parse_norm(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no parse error for " << text;
  return 0;
}

}  // namespace

TEST(ParseNorm, Forms) {
  EXPECT_EQ(parse_norm("lp:1").kind(), NormKind::Lp);
  EXPECT_EQ(parse_norm("lp:inf").p(), kInf);
  EXPECT_DOUBLE_EQ(parse_norm("lp:2.5").p(), 2.5);
  const auto ab = parse_norm("ab:0.5,0");
  EXPECT_EQ(ab.kind(), NormKind::ParamAB);
  EXPECT_DOUBLE_EQ(ab.a(), 0.5);
  EXPECT_EQ(parse_norm("poly:[(1,0),(0.5,1),(0,1)]").kind(), NormKind::Polygon);
  const auto d = parse_norm("dual(dual(lp:3))");
  EXPECT_EQ(d.kind(), NormKind::DualOf);
  EXPECT_DOUBLE_EQ(eval(d, {1, 1}), eval(AbsNorm2::lp(3), {1, 1}));
}

TEST(ParseNorm, IgnoresWhitespace) {
  const auto n = parse_norm("  poly : [ (1, 0) ,\n (1,1), ( 0 ,1) ] ");
  EXPECT_EQ(n.polygon_rep(), Polygon2::from_vertices({{1, 0}, {1, 1}, {0, 1}}));
}

TEST(ParseNorm, ErrorPositions) {
  EXPECT_EQ(error_position("lp:x"), 3u);
  EXPECT_EQ(error_position("lp: x"), 4u);
  EXPECT_EQ(error_position("ab:0.5;0"), 6u);
  EXPECT_EQ(error_position("lp:2 junk"), 5u);
  EXPECT_EQ(error_position("dual(lp:2"), 9u);
  EXPECT_EQ(error_position("foo"), 0u);
  EXPECT_EQ(error_position("sum(lp:1; leaf:1)", true), 16u);
}

TEST(ParseNorm, SemanticErrorsKeepTheirType) {
  EXPECT_THROW(parse_norm("lp:0.5"), DomainError);
  EXPECT_THROW(parse_norm("ab:0,0"), PreconditionError);
  EXPECT_THROW(parse_norm("poly:[(0,1),(1,0)]"), ValidationError);
  EXPECT_THROW(parse_space("leaf:0.2"), DomainError);
}

TEST(ParseSpace, Forms) {
  const auto s = parse_space("sum(lp:2; leaf:1; sum(ab:0.5,0; leaf:inf; leaf:3))");
  EXPECT_FALSE(s.is_leaf());
  EXPECT_EQ(s.leaf_count(), 3u);
  EXPECT_TRUE(s.left().is_leaf());
  EXPECT_EQ(s.right().right().p(), 3.0);
}

TEST(ToSpec, RoundTrips) {
  std::mt19937_64 rng(61);
  std::vector<AbsNorm2> norms{AbsNorm2::lp(1), AbsNorm2::lp(kInf), AbsNorm2::lp(4.0 / 3.0),
                              AbsNorm2::param_ab(0.1, 0.7), AbsNorm2::dual_of(AbsNorm2::lp(1.7))};
  for (int i = 0; i < 20; ++i) norms.push_back(fixtures::random_polygon_norm(rng));
  for (const auto& n : norms) {
    const std::string text = to_spec(n);
    EXPECT_EQ(to_spec(parse_norm(text)), text);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 0; k < 5; ++k) {
      const Vec2 v{u(rng), u(rng)};
      EXPECT_EQ(eval(parse_norm(text), v), eval(n, v));
    }
  }
  for (int i = 0; i < 50; ++i) {
    const auto s = fixtures::random_space(rng, 3);
    const std::string text = to_spec(s);
    EXPECT_EQ(to_spec(parse_space(text)), text);
  }
}

TEST(ToSpec, Format) {
  EXPECT_EQ(to_spec(AbsNorm2::lp(kInf)), "lp:inf");
  EXPECT_EQ(to_spec(AbsNorm2::param_ab(0.5, 0)), "ab:0.5,0");
  EXPECT_EQ(to_spec(SpaceExpr::sum(AbsNorm2::lp(2), SpaceExpr::leaf(1), SpaceExpr::leaf(kInf))),
            "sum(lp:2; leaf:1; leaf:inf)");
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}
