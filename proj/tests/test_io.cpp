#include "support.hpp"

#include "revnf/io.hpp"

#include <gtest/gtest.h>

using namespace revnf;

TEST(TextFormat, ParsesSpecExample) {
  auto x = io::parse_field("dx1 = -1*x2 + 3/2*x2*y1^2\ndx2 = 1*x1\ndy1 = -2*y2\ndy2 = 2*y1\n", 7);
  EXPECT_EQ(x.comp[0].coeff({0, 1, 2, 0}), Rational(3, 2));
  EXPECT_EQ(x.comp[0].coeff({0, 1, 0, 0}), Rational(-1));
  EXPECT_EQ(x.linear_part(), Mat4::rotation_generator(1, 2));
}

TEST(TextFormat, CommentsAndAnyOrder) {
  auto x = io::parse_field("# comment\ndy2 = 2*y1\n\ndx2 = x1  # trailing\ndy1 = -2*y2\ndx1 = -x2\n", 3);
  EXPECT_EQ(x.linear_part(), Mat4::rotation_generator(1, 2));
}

TEST(TextFormat, StrictErrors) {
  EXPECT_THROW(io::parse_field("dx1 = -x2\ndx2 = x1\ndy1 = -2*y2\n", 3), ParseError);                 // missing
  EXPECT_THROW(io::parse_field("dx1 = -x2\ndx1 = x1\ndy1 = -2*y2\ndy2 = y1\n", 3), ParseError);       // duplicate
  EXPECT_THROW(io::parse_field("dx1 = -x3\ndx2 = x1\ndy1 = -2*y2\ndy2 = y1\n", 3), ParseError);       // variable
  EXPECT_THROW(io::parse_field("dx1 = 2 x2\ndx2 = x1\ndy1 = -2*y2\ndy2 = y1\n", 3), ParseError);      // missing '*'
  EXPECT_THROW(io::parse_field("dx1 = \ndx2 = x1\ndy1 = -2*y2\ndy2 = y1\n", 3), ParseError);          // empty
  EXPECT_THROW(io::parse_field("dz1 = x1\ndx2 = x1\ndy1 = -2*y2\ndy2 = y1\n", 3), ParseError);        // lhs
}

TEST(TextFormat, RoundTrip) {
  std::mt19937 rng(2);
  for (int t = 0; t < 10; ++t) {
    auto x = fixtures::with_linear(Mat4::rotation_generator(1, 2), fixtures::random_polys(rng, 2, 5, 5), 7);
    EXPECT_EQ(io::parse_field(io::format_field(x), 7), x);
    PolyMap h = fixtures::random_near_identity(rng, 4, 6);
    EXPECT_EQ(io::parse_map(io::format_map(h), 6), h);
  }
}

TEST(Json, ScalarsAndMatrices) {
  AlgScalar s{Rational{-1, 2}, Rational{3, 4}, 3};
  EXPECT_EQ(io::scalar_from_json(io::to_json(s)), s);
  EXPECT_EQ(io::to_json(Rational{3, 2}), (io::json{{"num", 3}, {"den", 2}}));
  for (const auto &m : builtins::d3_list()) EXPECT_EQ(io::matrix_from_json(io::to_json(m)), m);
  EXPECT_EQ(io::rational_from_json(io::json("5/10")), Rational(1, 2));
  EXPECT_THROW(io::matrix_from_json(io::json::array({1, 2})), ParseError);
}

TEST(Json, GroupsAndSolutions) {
  auto g = generate_closure({Mat4::canonical_involution(), builtins::xi_classes()[4][0]});
  auto rho = sign_assignment(g, Mat4::rotation_generator(1, 2));
  auto [g2, rho2] = io::group_from_json(io::to_json(g, rho));
  EXPECT_EQ(g2.elements, g.elements);
  ASSERT_TRUE(rho2.has_value());
  EXPECT_EQ(rho2->sign, rho.sign);
  for (const auto &s : solve_involutions(LinearPart{1, 2}, 3)) {
    auto [back, id] = io::solution_from_json(io::to_json(s, 7));
    EXPECT_EQ(back.s, s.s);
    EXPECT_EQ(back.block_angles, s.block_angles);
    EXPECT_EQ(back.degenerate, s.degenerate);
    EXPECT_EQ(id, 7);
  }
}

TEST(Json, NormalFormAndFields) {
  for (int g = 1; g <= 6; ++g) {
    auto r = survival_analysis({3, 5}, g, 7);
    auto back = io::normal_form_from_json(io::to_json(r));
    EXPECT_EQ(back.surviving, r.surviving);
    EXPECT_EQ(back.hypothesis_status, r.hypothesis_status);
    EXPECT_EQ(back.group, g);
  }
  std::mt19937 rng(5);
  auto x = fixtures::with_linear(Mat4::rotation_generator(1, 2), fixtures::random_polys(rng, 2, 4, 4), 6);
  EXPECT_EQ(io::field_from_json(io::to_json(x)), x);
  auto h = fixtures::random_near_identity(rng, 3, 5);
  EXPECT_EQ(io::map_from_json(io::to_json(h)), h);
}
