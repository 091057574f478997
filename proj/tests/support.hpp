#pragma once

#include "revnf/normalform.hpp"
#include "revnf/symmetrize.hpp"

#include <random>

namespace revnf::fixtures {

inline auto random_rational(std::mt19937 &rng, int range = 3) -> Rational {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  return Rational{num(rng), den(rng)};
}

/// Random sparse homogeneous-by-degree terms in degrees [lo, hi].
inline auto random_polys(std::mt19937 &rng, int lo, int hi, int terms_per_component) -> Poly4<Rational> {
  Poly4<Rational> out;
  std::uniform_int_distribution<int> deg(lo, hi), var(0, 3);
  for (auto &p : out)
    for (int t = 0; t < terms_per_component; ++t) {
      Exponent<4> e{};
      int d = deg(rng);
      for (int i = 0; i < d; ++i) ++e[var(rng)];
      p.add_term(e, random_rational(rng));
    }
  return out;
}

inline auto with_linear(const Mat4 &a, const Poly4<Rational> &nonlinear, int k) -> PolyVF {
  auto lin = linear_polys(a);
  Poly4<Rational> c;
  for (int i = 0; i < 4; ++i) c[i] = lin[i] + nonlinear[i];
  return PolyVF{c, k};
}

/// A(p, q) xi plus a random nonlinearity averaged over <gens>.
inline auto random_reversible_field(std::mt19937 &rng, const Mat4 &a, std::initializer_list<Mat4> gens, int lo, int hi,
                                    int k, int terms = 6) -> PolyVF {
  return with_linear(a, symmetrize(random_polys(rng, lo, hi, terms), gens, a, k), k);
}

/// Near-identity map Id + random terms of degree 2..hi.
inline auto random_near_identity(std::mt19937 &rng, int hi, int k, int terms = 3) -> PolyMap {
  auto c = random_polys(rng, 2, hi, terms);
  for (std::size_t i = 0; i < 4; ++i) c[i] += RPoly::variable(i);
  return PolyMap{c, k};
}

} // namespace revnf::fixtures
