#include "revnf/builtins.hpp"
#include "revnf/solver.hpp"

#include <gtest/gtest.h>

#include <cctype>
#include <random>

using namespace revnf;

namespace {

auto matrices(const std::vector<InvolutionSolution> &sols) {
  std::vector<Mat4> out;
  for (const auto &s : sols) out.push_back(s.s);
  std::sort(out.begin(), out.end());
  return out;
}

/// Parses "2*a1*b1^2 - alpha*c3 + 1" over the raw variables.
auto parse_raw(const std::string &s) -> RawPoly {
  RawPoly out;
  std::size_t i = 0;
  auto ws = [&] {
    while (i < s.size() && s[i] == ' ') ++i;
  };
  while (true) {
    ws();
    if (i >= s.size()) break;
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    ws();
    long coeff = 1;
    RawPoly::Exp e{};
    bool any = false;
    while (i < s.size() && s[i] != '+' && s[i] != '-') {
      if (s[i] == '*' || s[i] == ' ') {
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        coeff *= std::stol(s.substr(i, j - i));
        i = j;
        any = true;
        continue;
      }
      std::size_t v;
      if (s.compare(i, 5, "alpha") == 0) {
        v = alpha_var;
        i += 5;
      } else if (s.compare(i, 4, "beta") == 0) {
        v = beta_var;
        i += 4;
      } else {
        v = 4 * (s[i + 1] - '1') + (s[i] - 'a');
        i += 2;
      }
      int power = 1;
      if (i < s.size() && s[i] == '^') {
        power = s[i + 1] - '0';
        i += 2;
      }
      e[v] = static_cast<std::uint16_t>(e[v] + power);
      any = true;
    }
    EXPECT_TRUE(any);
    out.add_term(e, Rational{sign * coeff});
  }
  return out;
}

auto contains_up_to_sign(const std::vector<RawEquation> &eqs, const RawPoly &p) -> bool {
  for (const auto &eq : eqs)
    if (eq.poly == p || eq.poly == -p) return true;
  return false;
}

} // namespace

TEST(Solver, KleinFourSolutions) {
  auto sols = solve_involutions(LinearPart{1, 2}, 2);
  ASSERT_EQ(sols.size(), 4u);
  auto expected = builtins::klein_list();
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(matrices(sols), expected);
  int degenerate = 0;
  for (const auto &s : sols)
    if (s.degenerate) {
      ++degenerate;
      EXPECT_EQ(s.s, Mat4::canonical_involution());
    }
  EXPECT_EQ(degenerate, 1);
}

TEST(Solver, ThirdOrderListsEveryPublishedMatrix) {
  auto nd = non_degenerate(solve_involutions(LinearPart{1, 2}, 3));
  auto got = matrices(nd);
  for (const auto &s : builtins::d3_list()) EXPECT_TRUE(std::binary_search(got.begin(), got.end(), s));
  // angle pairs (k1, k2) with k1, k2 in {0, 1, 2}, not both 0
  EXPECT_EQ(nd.size(), 8u);
  EXPECT_EQ(partition_by_group(nd).size(), 4u);
}

TEST(Solver, FourthOrderMatchesXiUnion) {
  auto nd = non_degenerate(solve_involutions(LinearPart{1, 2}, 4));
  ASSERT_EQ(nd.size(), 12u);
  std::vector<Mat4> xi;
  for (const auto &c : builtins::xi_classes()) xi.insert(xi.end(), c.begin(), c.end());
  std::sort(xi.begin(), xi.end());
  EXPECT_EQ(matrices(nd), xi);
}

TEST(Solver, SixthOrderCount) {
  auto nd = non_degenerate(solve_involutions(LinearPart{1, 2}, 6));
  EXPECT_EQ(nd.size(), 24u);
}

TEST(Solver, SolutionsAreInvolutionsWithReflectionBlocks) {
  for (int n : {2, 3, 4, 6})
    for (const auto &sol : solve_involutions(LinearPart{1, 2}, n)) {
      EXPECT_TRUE(is_involution(sol.s));
      EXPECT_TRUE(anticommutes(sol.s, Mat4::rotation_generator(1, 2)));
      for (int b : {0, 2}) {
        EXPECT_EQ(sol.s(b, b), -sol.s(b + 1, b + 1));
        EXPECT_EQ(sol.s(b, b + 1), sol.s(b + 1, b));
      }
      EXPECT_EQ(sol.degenerate, sol.group_order < static_cast<std::size_t>(2 * n));
    }
}

TEST(Solver, IndependentOfFrequencies) {
  for (int n : {2, 3, 4})
    EXPECT_EQ(matrices(solve_involutions(LinearPart{1, 2}, n)),
              matrices(solve_involutions(LinearPart{Rational{-3, 2}, Rational{7}}, n)));
}

TEST(Solver, EqualFrequenciesRejected) {
  EXPECT_THROW(solve_involutions(LinearPart{2, -2}, 4), DegenerateResonance);
  EXPECT_THROW(solve_involutions(LinearPart{0, 1}, 4), DegenerateResonance);
  EXPECT_THROW(solve_involutions(LinearPart{1, 2}, 5), UnsupportedOrder);
}

TEST(Partition, KleinGivesSingletons) {
  auto cls = partition_by_group(non_degenerate(solve_involutions(LinearPart{1, 2}, 2)));
  ASSERT_EQ(cls.size(), 3u);
  for (const auto &c : cls) EXPECT_EQ(c.members.size(), 1u);
  EXPECT_TRUE(partition_by_group({}).empty());
}

TEST(Partition, FourthOrderClassesAreXi) {
  auto cls = partition_by_group(non_degenerate(solve_involutions(LinearPart{1, 2}, 4)));
  ASSERT_EQ(cls.size(), 6u);
  std::vector<std::vector<Mat4>> got, want;
  for (const auto &c : cls) {
    std::vector<Mat4> m;
    for (const auto &s : c.members) m.push_back(s.s);
    std::sort(m.begin(), m.end());
    got.push_back(m);
    EXPECT_EQ(c.group_order, 8u);
  }
  for (const auto &c : builtins::xi_classes()) {
    std::vector<Mat4> m(c.begin(), c.end());
    std::sort(m.begin(), m.end());
    want.push_back(m);
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(RawSystem, TranscribedEquationsArePresent) {
  auto eqs = raw_system(4);
  for (const char *text : {
           "d1*b4 + c1*b3 + b1*b2 + a1*b1",
           "d2*a4 + c2*a3 + a2*b2 + a1*a2",
           "c4*d4 + c3*c4 + c2*b4 + c1*a4",
           "-alpha*a2 + alpha*b1",
           "-beta*a4 + alpha*b3",
           "-beta*d4 - beta*c3",
           "d1*a4 + c1*a3 + b1*a2 + a1^2 - 1",
           "d4^2 + d3*c4 + d2*b4 + d1*a4 - 1",
           "a1 - d1*a4*d4 + d1*a3*c4 - d1*a2*b4 + c1*d3*a4 - c1*a3*c3 + c1*a2*b3 - b1*d2*a4 + b1*c2*a3"
           " - b1*a2*b2 + 2*a1*d1*a4 - 2*a1*c1*a3 + 2*a1*b1*a2 - a1^3",
       })
    EXPECT_TRUE(contains_up_to_sign(eqs, parse_raw(text))) << text;
}

TEST(RawSystem, PublishedSolutionsSatisfyIt) {
  LinearPart lin{1, 2};
  EXPECT_TRUE(verify_raw_system(builtins::xi_classes()[1][0], lin, 4).satisfied());
  for (const auto &s : builtins::d3_list()) EXPECT_TRUE(verify_raw_system(s, lin, 3).satisfied());
  for (const auto &s : builtins::klein_list()) EXPECT_TRUE(verify_raw_system(s, lin, 2).satisfied());
}

TEST(RawSystem, IdentityFailsAnticommutation) {
  auto report = verify_raw_system(Mat4::identity(), LinearPart{1, 2}, 4);
  EXPECT_FALSE(report.satisfied());
  auto failing = report.failing();
  EXPECT_TRUE(std::any_of(failing.begin(), failing.end(),
                          [](const std::string &l) { return l.rfind("anticommute", 0) == 0; }));
}

// The raw system accepts a candidate iff the solver lists it.
TEST(RawSystem, CrossValidatesSolver) {
  LinearPart lin{1, 2};
  std::vector<std::array<AlgScalar, 4>> blocks;
  for (auto [k, m] : std::vector<std::pair<int, int>>{{0, 4}, {1, 4}, {2, 4}, {3, 4}, {1, 6}, {2, 6}, {4, 6}, {5, 6}}) {
    auto [c, s] = unit_circle_point(k, m);
    blocks.push_back({c, s, s, -c});
    blocks.push_back({c, -s, s, c}); // rotations: never solutions
  }
  for (int n : {2, 3, 4, 6}) {
    auto listed = matrices(solve_involutions(lin, n));
    int accepted = 0;
    for (const auto &b1 : blocks)
      for (const auto &b2 : blocks) {
        Mat4 s = Mat4::block_diagonal(b1, b2);
        bool in_list = std::binary_search(listed.begin(), listed.end(), s);
        EXPECT_EQ(verify_raw_system(s, lin, n).satisfied(), in_list);
        accepted += in_list;
      }
    EXPECT_EQ(accepted, static_cast<int>(listed.size()));
  }
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(-1, 1);
  for (int t = 0; t < 200; ++t) {
    Mat4::Entries en;
    for (auto &x : en) x = e(rng);
    Mat4 s{en};
    for (int n : {2, 4}) {
      auto listed = matrices(solve_involutions(lin, n));
      EXPECT_EQ(verify_raw_system(s, lin, n).satisfied(), std::binary_search(listed.begin(), listed.end(), s));
    }
  }
}
