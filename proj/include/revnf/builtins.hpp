#pragma once

#include "revnf/errors.hpp"
#include "revnf/mat4.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace revnf::builtins {

namespace blocks {
using B = std::array<AlgScalar, 4>;
inline auto k() -> B { return {1, 0, 0, -1}; }
inline auto minus_k() -> B { return {-1, 0, 0, 1}; }
inline auto swap() -> B { return {0, 1, 1, 0}; }
inline auto minus_swap() -> B { return {0, -1, -1, 0}; }
inline auto third_turn() -> B {
  AlgScalar h{Rational(1, 2)}, r{Rational{0}, Rational(1, 2), 3};
  return {-h, r, r, h};
}
} // namespace blocks

/// Klein-group involutions S1..S4 (S4 == R0).
inline auto klein_list() -> std::vector<Mat4> {
  return {Mat4::diagonal(-1, 1, -1, 1), Mat4::diagonal(-1, 1, 1, -1), Mat4::diagonal(1, -1, -1, 1),
          Mat4::diagonal(1, -1, 1, -1)};
}

/// The published D3 involutions S1..S3.
inline auto d3_list() -> std::vector<Mat4> {
  using namespace blocks;
  return {Mat4::block_diagonal(third_turn(), third_turn()), Mat4::block_diagonal(third_turn(), k()),
          Mat4::block_diagonal(k(), third_turn())};
}

/// The D4 classes Xi_1..Xi_6, members in their published order.
inline auto xi_classes() -> std::vector<std::array<Mat4, 2>> {
  using namespace blocks;
  auto bd = [](const B &x, const B &y) { return Mat4::block_diagonal(x, y); };
  return {
      {bd(minus_swap(), k()), bd(swap(), k())},
      {bd(minus_k(), swap()), bd(minus_k(), minus_swap())},
      {bd(k(), swap()), bd(k(), minus_swap())},
      {bd(swap(), swap()), bd(minus_swap(), minus_swap())},
      {bd(swap(), minus_k()), bd(minus_swap(), minus_k())},
      {bd(swap(), minus_swap()), bd(minus_swap(), swap())},
  };
}

/// Representative S_j of Xi_j: the member matching the complex involution
/// phi_j used by the normal-form engine (second member for Xi_1, first otherwise).
inline auto xi_representative(int j) -> Mat4 {
  if (j < 1 || j > 6) throw Error("Xi index must be in 1..6");
  return xi_classes()[j - 1][j == 1 ? 1 : 0];
}

/// 1-based Xi label of a D4 involution, 0 when it is in none of the classes.
inline auto xi_label(const Mat4 &s) -> int {
  auto cls = xi_classes();
  for (int j = 0; j < 6; ++j)
    if (cls[j][0] == s || cls[j][1] == s) return j + 1;
  return 0;
}

/// Registry: R0, S1@n2..S4@n2, S1@n3..S3@n3, S<j>@n4 / Xi<j>@n4 (representative),
/// Xi<j>.<m>@n4 (m-th member). Accepts an optional "builtin:" prefix.
inline auto involution(std::string name) -> Mat4 {
  if (name.rfind("builtin:", 0) == 0) name = name.substr(8);
  if (name == "R0") return Mat4::canonical_involution();
  std::map<std::string, Mat4> table;
  auto kl = klein_list();
  for (int i = 0; i < 4; ++i) table["S" + std::to_string(i + 1) + "@n2"] = kl[i];
  auto d3 = d3_list();
  for (int i = 0; i < 3; ++i) table["S" + std::to_string(i + 1) + "@n3"] = d3[i];
  auto xi = xi_classes();
  for (int j = 1; j <= 6; ++j) {
    table["S" + std::to_string(j) + "@n4"] = xi_representative(j);
    table["Xi" + std::to_string(j) + "@n4"] = xi_representative(j);
    for (int m = 0; m < 2; ++m) table["Xi" + std::to_string(j) + "." + std::to_string(m + 1) + "@n4"] = xi[j - 1][m];
  }
  auto it = table.find(name);
  if (it == table.end()) throw ParseError("unknown builtin involution '" + name + "'");
  return it->second;
}

} // namespace revnf::builtins
