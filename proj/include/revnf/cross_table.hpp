#pragma once

// Published constraints on b in b * conj(z1)^(q-1) z2^p d/dz1 under each phi_j,
// by residue class of (p, q), and a checker that recomputes them.

#include "revnf/normalform.hpp"

#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace revnf {

struct CrossTableRow {
  int phi = 0;
  std::string hypothesis;
  std::function<bool(int, int)> holds;
  std::optional<CoeffConstraint> stated; // nullopt: the published entry is a tautology
  bool reindexed = false;                // published hypothesis names q where p is meant
};

inline auto cross_table() -> std::vector<CrossTableRow> {
  using C = CoeffConstraint;
  auto m4 = [](int v) { return v % 4; };
  std::vector<CrossTableRow> rows;
  auto add = [&](int phi, std::string h, std::function<bool(int, int)> f, std::optional<C> c, bool re = false) {
    rows.push_back({phi, std::move(h), std::move(f), c, re});
  };
  add(0, "p+q even", [](int p, int q) { return (p + q) % 2 == 0; }, C::ReZero);
  add(0, "p+q odd", [](int p, int q) { return (p + q) % 2 == 1; }, C::ImZero);
  const C by_q[4] = {C::ReZero, C::ReEqMinusIm, C::ImZero, C::ReEqIm};
  for (int r = 0; r < 4; ++r)
    add(1, "q = " + std::to_string(r) + " mod 4", [=](int, int q) { return m4(q) == r; }, by_q[r]);
  // phi_2: {even, odd} in q for each residue of p
  const C phi2[4][2] = {{C::ReZero, C::ImZero}, {C::ReEqIm, C::ReEqMinusIm}, {C::ImZero, C::ReZero},
                        {C::ReEqMinusIm, C::ReEqIm}};
  for (int r = 0; r < 4; ++r)
    for (int odd : {0, 1})
      add(2, "p = " + std::to_string(r) + " mod 4, q " + (odd ? "odd" : "even"),
          [=](int p, int q) { return m4(p) == r && q % 2 == odd; }, phi2[r][odd], r != 0);
  const C by_p[4] = {C::ReZero, C::ReEqIm, C::ImZero, C::ReEqMinusIm};
  for (int r = 0; r < 4; ++r)
    add(3, "p = " + std::to_string(r) + " mod 4", [=](int p, int) { return m4(p) == r; }, by_p[r]);
  const C phi4[4][2] = {{C::ReZero, C::ImZero}, {C::ReEqIm, C::ReEqMinusIm}, {C::ImZero, C::ReZero},
                        {C::ReEqMinusIm, C::Free}};
  for (int r = 0; r < 4; ++r)
    for (int odd : {0, 1}) {
      std::optional<C> stated = phi4[r][odd];
      if (r == 3 && odd) stated.reset();
      add(4, "p+q = " + std::to_string(r) + " mod 4, q " + (odd ? "odd" : "even"),
          [=](int p, int q) { return m4(p + q) == r && q % 2 == odd; }, stated);
    }
  const C phi5[4][2] = {{C::ReZero, C::ImZero}, {C::ReEqIm, C::ReEqMinusIm}, {C::ImZero, C::ReZero},
                        {C::ReEqMinusIm, C::ReEqIm}};
  for (int r = 0; r < 4; ++r)
    for (int odd : {0, 1})
      add(5, "q = " + std::to_string(r) + " mod 4, p+q " + (odd ? "odd" : "even"),
          [=](int p, int q) { return m4(q) == r && (p + q) % 2 == odd; }, phi5[r][odd]);
  const C by_s[4] = {C::ReZero, C::ReEqMinusIm, C::ImZero, C::ReEqIm};
  for (int r = 0; r < 4; ++r)
    add(6, "p+q = " + std::to_string(r) + " mod 4", [=](int p, int q) { return m4(p + q) == r; }, by_s[r]);
  return rows;
}

struct CrossTableCheck {
  const CrossTableRow *row = nullptr;
  int p = 0, q = 0;
  bool coprime = true; // false: no coprime (p, q) fits the hypothesis
  CoeffConstraint computed = CoeffConstraint::Free;
  [[nodiscard]] auto matches() const -> bool { return row->stated && *row->stated == computed; }
  [[nodiscard]] auto flagged() const -> bool { return !row->stated; }
};

/// Smallest (p + q, then p) instance with p != q, coprime when possible.
inline auto minimal_instance(const CrossTableRow &row) -> std::tuple<int, int, bool> {
  for (bool want_coprime : {true, false})
    for (int s = 3; s <= 64; ++s)
      for (int p = 1; p < s; ++p) {
        int q = s - p;
        if (p == q || !row.holds(p, q)) continue;
        if (want_coprime && std::gcd(p, q) != 1) continue;
        return {p, q, std::gcd(p, q) == 1};
      }
  throw Error("no instance for table row '" + row.hypothesis + "'");
}

inline auto check_cross_table(const std::vector<CrossTableRow> &rows) -> std::vector<CrossTableCheck> {
  std::vector<CrossTableCheck> out;
  for (const auto &row : rows) {
    auto [p, q, coprime] = minimal_instance(row);
    ResMonomial m{1, {0, q - 1, p, 0}};
    out.push_back({&row, p, q, coprime, constraint_for(m, phi(row.phi))});
  }
  return out;
}

} // namespace revnf
