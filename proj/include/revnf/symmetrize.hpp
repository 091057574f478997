#pragma once

#include "revnf/groups.hpp"
#include "revnf/vecfield.hpp"

namespace revnf {

/// Signed group average (1/|G|) sum_g rho(g) g^-1 Y(g xi). The result
/// satisfies g X(xi) = rho(g) X(g xi) for every g in G. Rational groups only.
inline auto symmetrize(const Poly4<Rational> &y, const MatGroup &g, const SignAssignment &rho, int k)
    -> Poly4<Rational> {
  Poly4<Rational> acc;
  for (const auto &m : g.elements) {
    auto moved = apply_matrix(m.inverse(), substitute_all(y, linear_polys(m), k));
    Rational s{rho(m)};
    for (int i = 0; i < 4; ++i) acc[i] += s * moved[i];
  }
  Rational inv{1, static_cast<long>(g.order())};
  for (auto &p : acc) p *= inv;
  return acc;
}

/// Average over <gens> with the sign assignment induced by the linear part a.
inline auto symmetrize(const Poly4<Rational> &y, std::initializer_list<Mat4> gens, const Mat4 &a, int k)
    -> Poly4<Rational> {
  auto g = generate_closure(gens);
  return symmetrize(y, g, sign_assignment(g, a), k);
}

} // namespace revnf
