#pragma once

#include "revnf/errors.hpp"
#include "revnf/groups.hpp"
#include "revnf/mat4.hpp"
#include "revnf/polynomial.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

namespace revnf {

/// Linear part A(alpha, beta). alpha*beta != 0 and |alpha| != |beta|.
struct LinearPart {
  Rational alpha{1};
  Rational beta{2};

  void validate() const {
    if (alpha.is_zero() || beta.is_zero()) throw DegenerateResonance("linear part needs alpha*beta != 0");
    if (alpha.abs() == beta.abs()) throw DegenerateResonance("degenerate resonance, block reduction invalid (|alpha| = |beta|)");
  }
  [[nodiscard]] auto matrix() const -> Mat4 { return Mat4::rotation_generator(alpha, beta); }
};

struct InvolutionSolution {
  Mat4 s;
  /// Reflection angles of the two diagonal blocks as fractions of a full turn.
  std::array<Rational, 2> block_angles;
  std::size_t group_order = 0;
  bool degenerate = false;

  friend auto operator==(const InvolutionSolution &a, const InvolutionSolution &b) -> bool { return a.s == b.s; }
};

struct XiClass {
  std::vector<InvolutionSolution> members;
  std::size_t group_order = 0;
  MatGroup group;
};

inline auto is_supported_order(int n) -> bool { return n == 2 || n == 3 || n == 4 || n == 6; }

/// All involutions S with SA = -AS and (R0 S)^n = Id.
///
/// With |alpha| != |beta| anticommutation kills the off-diagonal 2x2 blocks and
/// forces each diagonal block to anticommute with the planar rotation
/// generator, i.e. to be a scaled reflection. S^2 = Id makes the reflections
/// unit, and R0 S is then the block rotation by (-t1, -t2), so (R0 S)^n = Id
/// pins t_i = 2*pi*k_i/n. Enumerating (k1, k2) is therefore exhaustive.
/// Solutions whose group <R0, S> has order below 2n are flagged degenerate.
inline auto solve_involutions(const LinearPart &lin, int n) -> std::vector<InvolutionSolution> {
  lin.validate();
  if (!is_supported_order(n))
    throw UnsupportedOrder("unsupported dihedral order n = " + std::to_string(n) + " (supported: 2, 3, 4, 6)");
  const Mat4 a = lin.matrix();
  const Mat4 r0 = Mat4::canonical_involution();
  std::vector<InvolutionSolution> out;
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) {
      Mat4 s = Mat4::block_diagonal(reflection_block(k1, n), reflection_block(k2, n));
      if (!is_involution(s) || !anticommutes(s, a) || power(r0 * s, static_cast<unsigned>(n)) != Mat4::identity())
        throw Error("internal: block construction violated the defining relations");
      auto g = generate_closure({r0, s});
      InvolutionSolution sol{s, {Rational(k1, n), Rational(k2, n)}, g.order(), g.order() < static_cast<std::size_t>(2 * n)};
      out.push_back(std::move(sol));
    }
  std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.s < y.s; });
  return out;
}

inline auto non_degenerate(std::vector<InvolutionSolution> sols) -> std::vector<InvolutionSolution> {
  std::erase_if(sols, [](const auto &s) { return s.degenerate; });
  return sols;
}

/// Groups solutions by the matrix group they generate together with R0.
inline auto partition_by_group(const std::vector<InvolutionSolution> &solutions) -> std::vector<XiClass> {
  const Mat4 r0 = Mat4::canonical_involution();
  std::map<std::vector<Mat4>, XiClass> by_group;
  for (const auto &sol : solutions) {
    auto g = generate_closure({r0, sol.s});
    auto &cls = by_group[g.elements];
    if (cls.members.empty()) {
      cls.group_order = g.order();
      cls.group = g;
    }
    cls.members.push_back(sol);
  }
  std::vector<XiClass> out;
  for (auto &[key, cls] : by_group) {
    std::sort(cls.members.begin(), cls.members.end(), [](const auto &x, const auto &y) { return x.s < y.s; });
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.members.front().s < y.members.front().s; });
  return out;
}

// ---------------------------------------------------------------------------
// Raw polynomial system in the 16 entries of S plus alpha and beta.

inline constexpr std::size_t raw_vars = 18;
inline constexpr std::size_t alpha_var = 16;
inline constexpr std::size_t beta_var = 17;
using RawPoly = Polynomial<Rational, raw_vars>;

/// Entry (i, j) of S is named by column letter and row number: a1 b1 c1 d1 / a2 ...
inline auto raw_var_name(std::size_t v) -> std::string {
  if (v == alpha_var) return "alpha";
  if (v == beta_var) return "beta";
  return std::string(1, static_cast<char>('a' + v % 4)) + std::to_string(v / 4 + 1);
}

struct RawEquation {
  std::string label;
  RawPoly poly;
};

namespace detail {
using SymMat = std::array<RawPoly, 16>;

inline auto sym_mul(const SymMat &x, const SymMat &y) -> SymMat {
  SymMat r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[4 * i + j] += x[4 * i + k] * y[4 * k + j];
  return r;
}
inline auto sym_const(const Mat4 &m) -> SymMat {
  SymMat r;
  for (int k = 0; k < 16; ++k) {
    if (!m.entries()[k].is_rational()) throw Error("symbolic constants must be rational");
    r[k] = RawPoly(m.entries()[k].rational_part());
  }
  return r;
}
} // namespace detail

/// SA + AS = 0, S^2 - Id = 0 and S R0 - (R0 S)^(n-1) = 0, entrywise, with
/// identically zero entries dropped. The last block is equivalent to
/// (R0 S)^n = Id once S and R0 are involutions.
inline auto raw_system(int n) -> std::vector<RawEquation> {
  if (n < 2) throw UnsupportedOrder("raw system needs n >= 2");
  using detail::SymMat;
  SymMat s, a, id, r0 = detail::sym_const(Mat4::canonical_involution());
  for (std::size_t k = 0; k < 16; ++k) s[k] = RawPoly::variable(k);
  a[1] = -RawPoly::variable(alpha_var);
  a[4] = RawPoly::variable(alpha_var);
  a[11] = -RawPoly::variable(beta_var);
  a[14] = RawPoly::variable(beta_var);
  id = detail::sym_const(Mat4::identity());

  auto sa = detail::sym_mul(s, a), as = detail::sym_mul(a, s), ss = detail::sym_mul(s, s);
  auto r0s = detail::sym_mul(r0, s);
  SymMat rel = id;
  for (int k = 0; k < n - 1; ++k) rel = detail::sym_mul(rel, r0s);
  auto sr0 = detail::sym_mul(s, r0);

  std::vector<RawEquation> eqs;
  auto push = [&](const std::string &tag, int k, RawPoly p) {
    if (p.is_zero()) return;
    eqs.push_back({tag + "[" + std::to_string(k / 4 + 1) + "," + std::to_string(k % 4 + 1) + "]", std::move(p)});
  };
  for (int k = 0; k < 16; ++k) push("anticommute", k, sa[k] + as[k]);
  for (int k = 0; k < 16; ++k) push("involution", k, ss[k] - id[k]);
  for (int k = 0; k < 16; ++k) push("relation", k, sr0[k] - rel[k]);
  return eqs;
}

struct RawResidual {
  std::string label;
  AlgScalar value;
};

struct RawSystemReport {
  std::vector<RawResidual> residuals;

  [[nodiscard]] auto satisfied() const -> bool {
    return std::all_of(residuals.begin(), residuals.end(), [](const auto &r) { return r.value.is_zero(); });
  }
  [[nodiscard]] auto failing() const -> std::vector<std::string> {
    std::vector<std::string> out;
    for (const auto &r : residuals)
      if (!r.value.is_zero()) out.push_back(r.label);
    return out;
  }
};

/// Substitutes S, alpha, beta into every equation of raw_system(n).
inline auto verify_raw_system(const Mat4 &s, const LinearPart &lin, int n) -> RawSystemReport {
  std::array<AlgScalar, raw_vars> point;
  for (std::size_t k = 0; k < 16; ++k) point[k] = s.entries()[k];
  point[alpha_var] = lin.alpha;
  point[beta_var] = lin.beta;
  RawSystemReport report;
  for (const auto &eq : raw_system(n)) report.residuals.push_back({eq.label, eq.poly.evaluate(point)});
  return report;
}

} // namespace revnf

namespace revnf {
inline auto sign_assignment(const MatGroup &g, const LinearPart &lin) -> SignAssignment {
  lin.validate();
  return sign_assignment(g, lin.matrix());
}
} // namespace revnf
