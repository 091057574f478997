#pragma once

#include "revnf/errors.hpp"
#include "revnf/mat4.hpp"
#include "revnf/polynomial.hpp"

#include <array>
#include <string>
#include <vector>

namespace revnf {

/// Coordinates (x1, x2, y1, y2) -> variable indices 0..3.
using RPoly = Polynomial<Rational, 4>;
using APoly = Polynomial<AlgScalar, 4>;
template <class T> using Poly4 = std::array<Polynomial<T, 4>, 4>;

/// Four truncated polynomials. `watermark` is the highest monomial degree
/// silently discarded by the operations that produced the value (0 if none).
struct PolyTuple {
  Poly4<Rational> comp;
  int max_degree = 7;
  int watermark = 0;

  [[nodiscard]] auto linear_part() const -> Mat4 {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Exponent<4> e{};
        e[j] = 1;
        m.set(i, j, comp[i].coeff(e));
      }
    return m;
  }
  [[nodiscard]] auto degree() const -> int {
    int d = -1;
    for (const auto &p : comp) d = std::max(d, p.degree());
    return d;
  }
  void truncate(int k) {
    for (auto &p : comp) watermark = std::max(watermark, p.truncate(k));
  }
  [[nodiscard]] auto degree_range(int lo, int hi) const -> Poly4<Rational> {
    Poly4<Rational> out;
    for (int i = 0; i < 4; ++i) out[i] = comp[i].degree_range(lo, hi);
    return out;
  }
};

struct PolyVF : PolyTuple {
  PolyVF() = default;
  PolyVF(Poly4<Rational> c, int k) : PolyTuple{std::move(c), k, 0} { truncate(k); }
  [[nodiscard]] auto nonlinear_part() const -> Poly4<Rational> { return degree_range(2, max_degree); }
  friend auto operator==(const PolyVF &a, const PolyVF &b) -> bool {
    return a.comp == b.comp && a.max_degree == b.max_degree;
  }
};

struct PolyMap : PolyTuple {
  PolyMap() = default;
  PolyMap(Poly4<Rational> c, int k) : PolyTuple{std::move(c), k, 0} { truncate(k); }
  static auto identity(int k) -> PolyMap {
    Poly4<Rational> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = RPoly::variable(i);
    return {c, k};
  }
  friend auto operator==(const PolyMap &a, const PolyMap &b) -> bool {
    return a.comp == b.comp && a.max_degree == b.max_degree;
  }
};

inline auto to_rational(const AlgScalar &x) -> Rational {
  if (!x.is_rational()) throw IncompatibleRadicals("expected a rational value, got " + x.to_string());
  return x.rational_part();
}

/// The polynomials (m * xi)_i.
template <class T = Rational> auto linear_polys(const Mat4 &m) -> Poly4<T> {
  Poly4<T> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto &v = m(i, j);
      if (v.is_zero()) continue;
      Exponent<4> e{};
      e[j] = 1;
      if constexpr (std::is_same_v<T, Rational>) out[i].add_term(e, to_rational(v));
      else out[i].add_term(e, T{v});
    }
  return out;
}

/// m * (p_1, ..., p_4)^T
template <class T> auto apply_matrix(const Mat4 &m, const Poly4<T> &p) -> Poly4<T> {
  Poly4<T> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto &v = m(i, j);
      if (v.is_zero()) continue;
      T c;
      if constexpr (std::is_same_v<T, Rational>) c = to_rational(v);
      else c = T{v};
      out[i] += c * p[j];
    }
  return out;
}

template <class T> auto substitute_all(const Poly4<T> &p, const Poly4<T> &g, int k) -> Poly4<T> {
  Poly4<T> out;
  for (int i = 0; i < 4; ++i) out[i] = substitute(p[i], g, k);
  return out;
}

inline auto lift(const Poly4<Rational> &p) -> Poly4<AlgScalar> {
  Poly4<AlgScalar> out;
  for (int i = 0; i < 4; ++i) out[i] = p[i].map_coeffs([](const Rational &c) { return AlgScalar{c}; });
  return out;
}

inline auto linear_vf(const Mat4 &a, int k) -> PolyVF { return {linear_polys(a), k}; }
inline auto linear_map(const Mat4 &a, int k) -> PolyMap { return {linear_polys(a), k}; }

/// f o g, truncated at the smaller of the two orders.
inline auto compose(const PolyMap &f, const PolyMap &g) -> PolyMap {
  int k = std::min(f.max_degree, g.max_degree);
  PolyMap out{substitute_all(f.comp, g.comp, k), k};
  int full = f.degree() * g.degree();
  out.watermark = std::max({f.watermark, g.watermark, full > k ? full : 0});
  return out;
}

/// (Dh . X)(xi), truncated at X's order.
inline auto jacobian_apply(const PolyMap &h, const PolyVF &x) -> PolyVF {
  int k = x.max_degree;
  Poly4<Rational> out;
  for (int i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      auto d = h.comp[i].derivative(j);
      if (d.is_zero()) continue;
      out[i] += RPoly::multiply(d, x.comp[j], k);
    }
  PolyVF r{out, k};
  r.watermark = std::max(h.watermark, x.watermark);
  return r;
}

/// Truncated formal inverse by the fixed point g = L^-1 (y - N(g)).
inline auto inverse(const PolyMap &h) -> PolyMap {
  const int k = h.max_degree;
  Mat4 lin = h.linear_part();
  if (lin.determinant().is_zero()) throw SingularLinearPart("map has singular linear part");
  Mat4 lin_inv = lin.inverse();
  auto nonlinear = h.degree_range(2, k);
  for (const auto &p : h.comp)
    if (!p.homogeneous_part(0).is_zero()) throw Error("map must fix the origin");
  PolyMap g = linear_map(lin_inv, k);
  for (int it = 1; it < k; ++it) {
    auto n_of_g = substitute_all(nonlinear, g.comp, k);
    Poly4<Rational> rhs;
    for (std::size_t i = 0; i < 4; ++i) rhs[i] = RPoly::variable(i) - n_of_g[i];
    g = PolyMap{apply_matrix(lin_inv, rhs), k};
  }
  return g;
}

/// Pushforward h_* X = (Dh . X) o h^-1.
inline auto conjugate(const PolyVF &x, const PolyMap &h) -> PolyVF {
  if (h.linear_part().determinant().is_zero()) throw SingularLinearPart("conjugating map has singular linear part");
  PolyMap hk{h.comp, std::min(h.max_degree, x.max_degree)};
  auto dhx = jacobian_apply(hk, x);
  auto hinv = inverse(hk);
  PolyVF out{substitute_all(dhx.comp, hinv.comp, x.max_degree), x.max_degree};
  out.watermark = std::max(x.watermark, x.max_degree + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Symmetry checks for linear phi.

struct Offense {
  int component = 0;
  Exponent<4> exponents{};
  AlgScalar residual;
};

struct SymmetryReport {
  bool pass = true;
  std::vector<Offense> offenses;
  int truncation_degree = 0;
  int watermark = 0;
};

/// phi X(xi) - sign * X(phi xi), coefficientwise up to the field's order.
inline auto check_symmetry(const PolyVF &x, const Mat4 &phi, int sign) -> SymmetryReport {
  if (sign != 1 && sign != -1) throw Error("sign must be +1 or -1");
  auto field = lift(x.comp);
  auto lhs = apply_matrix(phi, field);
  auto rhs = substitute_all(field, linear_polys<AlgScalar>(phi), x.max_degree);
  SymmetryReport report{true, {}, x.max_degree, x.watermark};
  for (int i = 0; i < 4; ++i) {
    auto diff = lhs[i] - AlgScalar{sign} * rhs[i];
    for (const auto &[e, c] : diff.terms()) report.offenses.push_back({i, e, c});
  }
  report.pass = report.offenses.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Parity characterizations of (R0, S)-reversibility.

enum class ParityFamily { Z2Z2_S1, Z2Z2_S2, Z2Z2_S3, D4_S1 };

inline auto parse_family(const std::string &tag) -> ParityFamily {
  if (tag == "Z2Z2-S1") return ParityFamily::Z2Z2_S1;
  if (tag == "Z2Z2-S2") return ParityFamily::Z2Z2_S2;
  if (tag == "Z2Z2-S3") return ParityFamily::Z2Z2_S3;
  if (tag == "D4-S1") return ParityFamily::D4_S1;
  throw UnknownFamily("unknown parity family '" + tag + "' (expected Z2Z2-S1, Z2Z2-S2, Z2Z2-S3, D4-S1)");
}

/// f_lhs(x) = sign * f_rhs(y), y_i = flip_i * x_{perm_i}.
struct ParityIdentity {
  int lhs = 0;
  int rhs = 0;
  int sign = 1;
  std::array<int, 4> perm{0, 1, 2, 3};
  std::array<int, 4> flip{1, 1, 1, 1};
};

/// f_comp vanishes once the marked variables are set to zero.
struct VanishingCondition {
  int comp = 0;
  std::array<bool, 4> zeroed{};
};

struct ParityRules {
  std::vector<ParityIdentity> identities;
  std::vector<VanishingCondition> vanishing;
};

inline auto parity_rules(ParityFamily family) -> ParityRules {
  constexpr std::array<int, 4> id{0, 1, 2, 3};
  constexpr std::array<int, 4> r0{1, -1, 1, -1};
  ParityRules rules;
  // every family carries the R0 half: f1, f3 odd and f2, f4 even under R0
  for (int c = 0; c < 4; ++c) rules.identities.push_back({c, c, c % 2 == 0 ? -1 : 1, id, r0});
  auto second = [&](std::array<int, 4> flip, std::array<int, 4> signs) {
    for (int c = 0; c < 4; ++c) rules.identities.push_back({c, c, signs[c], id, flip});
  };
  switch (family) {
  case ParityFamily::Z2Z2_S1:
    second({-1, 1, -1, 1}, {1, -1, 1, -1});
    rules.vanishing = {{0, {false, true, false, true}}, {2, {false, true, false, true}},
                       {1, {true, false, true, false}}, {3, {true, false, true, false}}};
    break;
  case ParityFamily::Z2Z2_S2:
    second({-1, 1, 1, -1}, {1, -1, -1, 1});
    rules.vanishing = {{0, {false, true, false, true}}, {2, {false, true, false, true}},
                       {1, {true, false, false, true}}, {2, {true, false, false, true}}};
    break;
  case ParityFamily::Z2Z2_S3:
    second({1, -1, -1, 1}, {-1, 1, 1, -1});
    rules.vanishing = {{0, {false, true, false, true}}, {2, {false, true, false, true}},
                       {0, {false, true, true, false}}, {3, {false, true, true, false}}};
    break;
  case ParityFamily::D4_S1: {
    // (x1, x2, y1, y2) -> (x2, x1, y1, -y2)
    constexpr std::array<int, 4> sw{1, 0, 2, 3};
    constexpr std::array<int, 4> fl{1, 1, 1, -1};
    rules.identities.push_back({0, 1, -1, sw, fl});
    rules.identities.push_back({1, 0, -1, sw, fl});
    rules.identities.push_back({2, 2, -1, sw, fl});
    rules.identities.push_back({3, 3, 1, sw, fl});
    // only the R0-odd components vanish on Fix(R0); f2, f4 need not vanish on {x1 = y1 = 0}
    rules.vanishing = {{0, {false, true, false, true}}, {2, {false, true, false, true}}};
    break;
  }
  }
  return rules;
}

/// Involution whose reversibility (together with R0) each family characterizes.
inline auto family_involution(ParityFamily family) -> Mat4 {
  switch (family) {
  case ParityFamily::Z2Z2_S1: return Mat4::diagonal(-1, 1, -1, 1);
  case ParityFamily::Z2Z2_S2: return Mat4::diagonal(-1, 1, 1, -1);
  case ParityFamily::Z2Z2_S3: return Mat4::diagonal(1, -1, -1, 1);
  case ParityFamily::D4_S1: return {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
  }
  throw UnknownFamily("unknown parity family");
}

/// Throws unless the linear part has the form A(alpha, beta).
inline auto require_rotation_linear_part(const PolyTuple &x) -> std::pair<Rational, Rational> {
  Mat4 l = x.linear_part();
  Rational alpha = to_rational(l(1, 0)), beta = to_rational(l(3, 2));
  if (l != Mat4::rotation_generator(alpha, beta) || alpha.is_zero() || beta.is_zero())
    throw Error("field's linear part is not of the form A(alpha, beta)");
  for (const auto &p : x.comp)
    if (!p.homogeneous_part(0).is_zero()) throw Error("field must vanish at the origin");
  return {alpha, beta};
}

inline auto check_parity_conditions(const PolyVF &x, ParityFamily family) -> bool {
  require_rotation_linear_part(x);
  auto f = x.nonlinear_part();
  auto rules = parity_rules(family);
  for (const auto &rule : rules.identities) {
    Poly4<Rational> y;
    for (int i = 0; i < 4; ++i) y[i] = Rational{rule.flip[i]} * RPoly::variable(rule.perm[i]);
    auto rhs = substitute(f[rule.rhs], y, x.max_degree);
    if (f[rule.lhs] != Rational{rule.sign} * rhs) return false;
  }
  for (const auto &v : rules.vanishing) {
    Poly4<Rational> y;
    for (int i = 0; i < 4; ++i)
      if (!v.zeroed[i]) y[i] = RPoly::variable(i);
    if (!substitute(f[v.comp], y, x.max_degree).is_zero()) return false;
  }
  return true;
}

inline auto check_parity_conditions(const PolyVF &x, const std::string &family) -> bool {
  return check_parity_conditions(x, parse_family(family));
}

// ---------------------------------------------------------------------------

/// h = Id + Dphi(0) phi, which satisfies h o phi = Dphi(0) o h through order k.
inline auto linearize_involution(const PolyMap &phi, int k) -> PolyMap {
  PolyMap p{phi.comp, k};
  Mat4 lin = p.linear_part();
  if (!is_involution(lin)) throw NotAnInvolution("linear part of phi is not an involution");
  if (compose(p, p) != PolyMap::identity(k)) throw NotAnInvolution("phi o phi != Id through order " + std::to_string(k));
  auto lphi = apply_matrix(lin, p.comp);
  Poly4<Rational> h;
  for (std::size_t i = 0; i < 4; ++i) h[i] = RPoly::variable(i) + lphi[i];
  PolyMap out{h, k};
  if (out.linear_part().determinant().is_zero()) throw SingularLinearPart("Id + Dphi(0) phi is singular");
  return out;
}

} // namespace revnf
