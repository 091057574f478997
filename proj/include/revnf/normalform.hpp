#pragma once

#include "revnf/builtins.hpp"
#include "revnf/errors.hpp"
#include "revnf/mat4.hpp"
#include "revnf/sparse_linalg.hpp"
#include "revnf/vecfield.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace revnf {

struct ResonanceSpec {
  int p = 1;
  int q = 2;

  void validate() const {
    if (p <= 0 || q <= 0) throw UnsupportedResonance("p and q must be positive integers");
    if (p == q)
      throw UnsupportedResonance("p = q is the 1:1 resonance; the homological operator is too degenerate "
                                 "for this engine (only coprime p != q are supported)");
    if (std::gcd(p, q) != 1)
      throw UnsupportedResonance("p and q must be coprime (frequency ratio p/q in lowest terms); got " +
                                 std::to_string(p) + ", " + std::to_string(q));
  }
  [[nodiscard]] auto linear_part() const -> Mat4 { return Mat4::rotation_generator(p, q); }
};

/// Complex monomial z1^a conj(z1)^b z2^c conj(z2)^d in the d/dz_component slot.
struct ResMonomial {
  int component = 1;
  std::array<int, 4> exps{};

  [[nodiscard]] auto degree() const -> int { return exps[0] + exps[1] + exps[2] + exps[3]; }
  [[nodiscard]] auto satisfies_resonance(const ResonanceSpec &s) const -> bool {
    int lhs = s.p * (exps[0] - exps[1]) + s.q * (exps[2] - exps[3]);
    return lhs == (component == 1 ? s.p : s.q);
  }
  /// z_j * Delta1^m * Delta2^n in its own slot.
  [[nodiscard]] auto is_delta_type() const -> bool {
    if (component == 1) return exps[0] == exps[1] + 1 && exps[2] == exps[3];
    return exps[0] == exps[1] && exps[2] == exps[3] + 1;
  }
  /// (m, n) for a delta-type monomial.
  [[nodiscard]] auto delta_powers() const -> std::pair<int, int> {
    return component == 1 ? std::pair{exps[1], exps[2]} : std::pair{exps[0], exps[3]};
  }
  [[nodiscard]] auto to_string() const -> std::string;

  friend auto operator<=>(const ResMonomial &a, const ResMonomial &b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    if (a.component != b.component) return a.component <=> b.component;
    return b.exps <=> a.exps;
  }
  friend auto operator==(const ResMonomial &, const ResMonomial &) -> bool = default;
};

inline auto ResMonomial::to_string() const -> std::string {
  static const char *names[] = {"z1", "cz1", "z2", "cz2"};
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
  }
  if (s.empty()) s = "1";
  return s + " d/dz" + std::to_string(component);
}

/// z -> global_sign * (i^eps1 conj(z1), i^eps2 conj(z2)). Units are stored as
/// exponents of i modulo 4.
struct RevInvolution {
  int tag = 0;
  int global_sign = 1;
  int eps1 = 0;
  int eps2 = 0;

  [[nodiscard]] auto unit1() const -> int { return (eps1 + (global_sign < 0 ? 2 : 0)) % 4; }
  [[nodiscard]] auto unit2() const -> int { return (eps2 + (global_sign < 0 ? 2 : 0)) % 4; }
  friend auto operator==(const RevInvolution &, const RevInvolution &) -> bool = default;
};

/// The seven antiholomorphic involutions generating the D4 groups.
inline auto phi(int j) -> RevInvolution {
  switch (j) {
  case 0: return {0, -1, 0, 0};
  case 1: return {1, 1, 1, 0};
  case 2: return {2, -1, 0, 3};
  case 3: return {3, 1, 0, 1};
  case 4: return {4, -1, 3, 3};
  case 5: return {5, -1, 3, 0};
  case 6: return {6, 1, 1, 3};
  default: throw Error("involution index must be in 0..6");
  }
}

namespace detail {
/// 2x2 real block of z -> i^k conj(z) in (Re z, Im z) coordinates.
inline auto unit_conj_block(int k) -> std::array<AlgScalar, 4> {
  switch (k & 3) {
  case 0: return {1, 0, 0, -1};
  case 1: return {0, 1, 1, 0};
  case 2: return {-1, 0, 0, 1};
  default: return {0, -1, -1, 0};
  }
}
inline auto block_unit(const Mat4 &m, int r) -> std::optional<int> {
  for (int k = 0; k < 4; ++k) {
    auto b = unit_conj_block(k);
    if (m(r, r) == b[0] && m(r, r + 1) == b[1] && m(r + 1, r) == b[2] && m(r + 1, r + 1) == b[3]) return k;
  }
  return std::nullopt;
}
} // namespace detail

/// Real 4x4 matrix of an involution under z1 = x1 + i x2, z2 = y1 + i y2.
inline auto real_matrix(const RevInvolution &phi) -> Mat4 {
  return Mat4::block_diagonal(detail::unit_conj_block(phi.unit1()), detail::unit_conj_block(phi.unit2()));
}

/// Inverse of real_matrix for block-diagonal antiholomorphic matrices.
inline auto to_rev_involution(const Mat4 &m, int tag = -1) -> RevInvolution {
  for (int i : {0, 1})
    for (int j : {2, 3})
      if (!m(i, j).is_zero() || !m(j, i).is_zero()) throw NotCompatible("matrix is not block diagonal");
  auto u1 = detail::block_unit(m, 0), u2 = detail::block_unit(m, 2);
  if (!u1 || !u2) throw NotCompatible("matrix is not of the form z -> (u1 conj z1, u2 conj z2)");
  return {tag, 1, *u1, *u2};
}

enum class CoeffConstraint { Free, ReZero, ImZero, ReEqIm, ReEqMinusIm, Zero };

inline auto constraint_name(CoeffConstraint c) -> std::string {
  switch (c) {
  case CoeffConstraint::Free: return "Free";
  case CoeffConstraint::ReZero: return "ReZero";
  case CoeffConstraint::ImZero: return "ImZero";
  case CoeffConstraint::ReEqIm: return "ReEqIm";
  case CoeffConstraint::ReEqMinusIm: return "ReEqMinusIm";
  case CoeffConstraint::Zero: return "Zero";
  }
  return "?";
}

inline auto parse_constraint(const std::string &s) -> CoeffConstraint {
  for (auto c : {CoeffConstraint::Free, CoeffConstraint::ReZero, CoeffConstraint::ImZero, CoeffConstraint::ReEqIm,
                 CoeffConstraint::ReEqMinusIm, CoeffConstraint::Zero})
    if (constraint_name(c) == s) return c;
  throw ParseError("unknown constraint '" + s + "'");
}

/// Conjunction of two constraints on one complex coefficient. Each non-trivial
/// constraint is a real line through the origin, so distinct lines meet in 0.
inline auto meet(CoeffConstraint a, CoeffConstraint b) -> CoeffConstraint {
  if (a == CoeffConstraint::Free) return b;
  if (b == CoeffConstraint::Free) return a;
  if (a == b) return a;
  return CoeffConstraint::Zero;
}

/// Real dimension of the coefficients allowed by c.
inline auto real_dimension(CoeffConstraint c) -> int {
  if (c == CoeffConstraint::Free) return 2;
  if (c == CoeffConstraint::Zero) return 0;
  return 1;
}

/// Reversibility forces conj(b) = chi * b with chi a unit; returns the
/// exponent of i for chi.
inline auto reversibility_unit(const ResMonomial &m, const RevInvolution &phi) -> int {
  const int u1 = phi.unit1(), u2 = phi.unit2();
  const auto &e = m.exps;
  int k = 2;
  if (m.component == 1) k += u1 * (e[0] - e[1] - 1) + u2 * (e[2] - e[3]);
  else k += u1 * (e[0] - e[1]) + u2 * (e[2] - e[3] - 1);
  return ((k % 4) + 4) % 4;
}

inline auto constraint_for(const ResMonomial &m, const RevInvolution &phi) -> CoeffConstraint {
  switch (reversibility_unit(m, phi)) {
  case 0: return CoeffConstraint::ImZero;
  case 1: return CoeffConstraint::ReEqMinusIm;
  case 2: return CoeffConstraint::ReZero;
  default: return CoeffConstraint::ReEqIm;
  }
}

inline auto resonant_monomials(const ResonanceSpec &spec, int degree) -> std::vector<ResMonomial> {
  std::vector<ResMonomial> out;
  for (int comp : {1, 2})
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b)
        for (int c = 0; a + b + c <= degree; ++c)
          for (int d = 0; a + b + c + d <= degree; ++d) {
            ResMonomial m{comp, {a, b, c, d}};
            if (m.degree() >= 1 && m.satisfies_resonance(spec)) out.push_back(m);
          }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

struct Survivor {
  ResMonomial monomial;
  CoeffConstraint constraint = CoeffConstraint::Free;
  friend auto operator==(const Survivor &, const Survivor &) -> bool = default;
};

struct HypothesisStatus {
  bool remark_predicate = false; // the relaxed mod-4 conditions on (p, q)
  bool ut_hypothesis = false;    // p, q odd with pq > 1
  bool only_delta_terms = false; // every survivor is z_j Delta1^m Delta2^n with ReZero
  /// only_delta_terms whenever remark_predicate holds
  [[nodiscard]] auto conclusion_holds() const -> bool { return !remark_predicate || only_delta_terms; }
  friend auto operator==(const HypothesisStatus &, const HypothesisStatus &) -> bool = default;
};

struct NormalFormResult {
  ResonanceSpec spec;
  int group = 0; // 0 when built from an explicit involution list
  int degree = 0;
  std::vector<Survivor> surviving;
  HypothesisStatus hypothesis_status;

  /// Real parameter count contributed by survivors of exactly degree k.
  [[nodiscard]] auto parameter_count(int k) const -> int {
    int n = 0;
    for (const auto &s : surviving)
      if (s.monomial.degree() == k) n += real_dimension(s.constraint);
    return n;
  }
  [[nodiscard]] auto find(const ResMonomial &m) const -> std::optional<CoeffConstraint> {
    for (const auto &s : surviving)
      if (s.monomial == m) return s.constraint;
    return std::nullopt;
  }
};

inline auto remark_predicate(int p, int q) -> bool {
  auto m4 = [](int v) { return ((v % 4) + 4) % 4; };
  bool even_sum = (p + q) % 2 == 0;
  bool c1 = m4(q) == 1 || m4(q) == 3 || (m4(q) == 0 && !even_sum) || (m4(q) == 2 && even_sum);
  bool c2 = m4(p) == 1 || m4(p) == 2 || m4(p) == 3;
  bool c3 = m4(p) == 1 || m4(p) == 3 || (m4(p) == 0 && q % 2 == 1) || (m4(p) == 2 && q % 2 == 0);
  return c1 && c2 && c3;
}

inline auto survival_analysis(const ResonanceSpec &spec, const std::vector<RevInvolution> &involutions, int degree)
    -> NormalFormResult {
  spec.validate();
  if (degree < 1) throw Error("degree must be >= 1");
  NormalFormResult r{spec, 0, degree, {}, {}};
  for (const auto &m : resonant_monomials(spec, degree)) {
    auto c = CoeffConstraint::Free;
    for (const auto &phi : involutions) c = meet(c, constraint_for(m, phi));
    if (c != CoeffConstraint::Zero) r.surviving.push_back({m, c});
  }
  auto &h = r.hypothesis_status;
  h.remark_predicate = remark_predicate(spec.p, spec.q);
  h.ut_hypothesis = spec.p % 2 == 1 && spec.q % 2 == 1 && spec.p * spec.q > 1;
  h.only_delta_terms = std::all_of(r.surviving.begin(), r.surviving.end(), [](const Survivor &s) {
    return s.monomial.is_delta_type() && s.constraint == CoeffConstraint::ReZero;
  });
  return r;
}

/// Survivors under the pair (phi_0, phi_group).
inline auto survival_analysis(const ResonanceSpec &spec, int group, int degree) -> NormalFormResult {
  if (group < 1 || group > 6) throw Error("group index must be in 1..6");
  auto r = survival_analysis(spec, std::vector{phi(0), phi(group)}, degree);
  r.group = group;
  return r;
}

// ---------------------------------------------------------------------------
// Real (tnf-shaped) template.

struct TemplateTerm {
  int block = 1; // 1: multiplies (-x2, x1), parameter a_mn; 2: (-y2, y1), parameter b_mn
  int m = 0;
  int n = 0;
  [[nodiscard]] auto name() const -> std::string {
    return std::string(block == 1 ? "a" : "b") + "_" + std::to_string(m) + std::to_string(n);
  }
  friend auto operator==(const TemplateTerm &, const TemplateTerm &) -> bool = default;
};

struct RealTemplate {
  int p = 1, q = 2, degree = 1;
  std::vector<TemplateTerm> terms;

  /// The polynomial field for given parameter values (missing ones are 0).
  [[nodiscard]] auto instantiate(const std::map<std::string, Rational> &values) const -> PolyVF {
    RPoly d1 = RPoly::variable(0) * RPoly::variable(0) + RPoly::variable(1) * RPoly::variable(1);
    RPoly d2 = RPoly::variable(2) * RPoly::variable(2) + RPoly::variable(3) * RPoly::variable(3);
    RPoly f1{Rational{p}}, f2{Rational{q}};
    for (const auto &t : terms) {
      auto it = values.find(t.name());
      if (it == values.end()) continue;
      RPoly mon{Rational{1}};
      for (int i = 0; i < t.m; ++i) mon = mon * d1;
      for (int i = 0; i < t.n; ++i) mon = mon * d2;
      (t.block == 1 ? f1 : f2) += it->second * mon;
    }
    Poly4<Rational> c{-(RPoly::variable(1) * f1), RPoly::variable(0) * f1, -(RPoly::variable(3) * f2),
                      RPoly::variable(2) * f2};
    return PolyVF{c, degree};
  }
  [[nodiscard]] auto to_text() const -> std::string;
  [[nodiscard]] auto to_latex() const -> std::string;
};

inline auto emit_real_normal_form(const NormalFormResult &r) -> RealTemplate {
  RealTemplate t{r.spec.p, r.spec.q, r.degree, {}};
  for (const auto &s : r.surviving) {
    const auto &m = s.monomial;
    if (!m.is_delta_type())
      throw MixedResonantTerms("mixed resonant terms present (" + m.to_string() + "); no Delta1/Delta2-only emission");
    if (s.constraint != CoeffConstraint::ReZero)
      throw MixedResonantTerms("coefficient of " + m.to_string() + " is not purely imaginary (" +
                               constraint_name(s.constraint) + ")");
    auto [mm, nn] = m.delta_powers();
    if (mm + nn == 0) continue; // linear term
    t.terms.push_back({m.component, mm, nn});
  }
  std::stable_sort(t.terms.begin(), t.terms.end(), [](const TemplateTerm &a, const TemplateTerm &b) {
    if (a.block != b.block) return a.block < b.block;
    if (a.m + a.n != b.m + b.n) return a.m + a.n < b.m + b.n;
    return a.m > b.m;
  });
  return t;
}

inline auto RealTemplate::to_text() const -> std::string {
  auto sum = [&](int block) {
    std::string s;
    for (const auto &t : terms) {
      if (t.block != block) continue;
      s += " + " + t.name();
      if (t.m) s += "*D1" + (t.m > 1 ? "^" + std::to_string(t.m) : std::string{});
      if (t.n) s += "*D2" + (t.n > 1 ? "^" + std::to_string(t.n) : std::string{});
    }
    return s;
  };
  auto s1 = sum(1), s2 = sum(2);
  std::string p_ = std::to_string(p), q_ = std::to_string(q);
  return "dx1 = -x2*(" + p_ + s1 + ")\n" + "dx2 = x1*(" + p_ + s1 + ")\n" + "dy1 = -y2*(" + q_ + s2 + ")\n" +
         "dy2 = y1*(" + q_ + s2 + ")\n" + "D1 = x1^2 + x2^2, D2 = y1^2 + y2^2, truncated at degree " +
         std::to_string(degree) + "\n";
}

inline auto RealTemplate::to_latex() const -> std::string {
  auto sum = [&](int block) {
    std::string s;
    for (const auto &t : terms) {
      if (t.block != block) continue;
      s += "+" + std::string(block == 1 ? "a" : "b") + "_{" + std::to_string(t.m) + std::to_string(t.n) + "}";
      if (t.m) s += "\\Delta_1" + (t.m > 1 ? "^{" + std::to_string(t.m) + "}" : std::string{});
      if (t.n) s += "\\Delta_2" + (t.n > 1 ? "^{" + std::to_string(t.n) + "}" : std::string{});
    }
    if (s.empty()) return s;
    return s.substr(1);
  };
  auto row = [](const std::string &lhs, const std::string &lin, const std::string &var, const std::string &s) {
    std::string out = lhs + "&=&" + lin;
    if (!s.empty()) out += (var[0] == '-' ? "-" + var.substr(1) : "+" + var) + "\\left(" + s + "\\right)";
    return out;
  };
  auto s1 = sum(1), s2 = sum(2);
  std::string p_ = std::to_string(p), q_ = std::to_string(q);
  std::string out = "\\left\\{\\begin{array}{ccl}\n";
  out += row("\\dot{x}_1", "-" + p_ + "x_2", "-x_2", s1) + "\\\\\n";
  out += row("\\dot{x}_2", p_ + "x_1", "x_1", s1) + "\\\\\n";
  out += row("\\dot{y}_1", "-" + q_ + "y_2", "-y_2", s2) + "\\\\\n";
  out += row("\\dot{y}_2", q_ + "y_1", "y_1", s2) + "\n";
  out += "\\end{array}\\right.\n";
  return out;
}

// ---------------------------------------------------------------------------
// Real-coordinate linear algebra on homogeneous fields of one degree.

/// Indexing of H^k: (component, monomial) pairs, components major.
class HomogeneousBasis {
public:
  explicit HomogeneousBasis(int k) : k_(k) {
    for (int a = k; a >= 0; --a)
      for (int b = k - a; b >= 0; --b)
        for (int c = k - a - b; c >= 0; --c) {
          Exponent<4> e{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b), static_cast<std::uint16_t>(c),
                        static_cast<std::uint16_t>(k - a - b - c)};
          index_.emplace(e, static_cast<int>(monos_.size()));
          monos_.push_back(e);
        }
  }
  [[nodiscard]] auto degree() const -> int { return k_; }
  [[nodiscard]] auto monomials() const -> const std::vector<Exponent<4>> & { return monos_; }
  [[nodiscard]] auto dim() const -> int { return 4 * static_cast<int>(monos_.size()); }
  [[nodiscard]] auto index(int comp, const Exponent<4> &e) const -> int {
    return comp * static_cast<int>(monos_.size()) + index_.at(e);
  }
  [[nodiscard]] auto field(int i) const -> Poly4<Rational> {
    Poly4<Rational> f;
    int n = static_cast<int>(monos_.size());
    f[i / n].add_term(monos_[i % n], Rational{1});
    return f;
  }
  [[nodiscard]] auto vec(const Poly4<Rational> &f) const -> linalg::SparseRow {
    std::vector<std::pair<int, Rational>> out;
    for (int c = 0; c < 4; ++c)
      for (const auto &[e, v] : f[c].terms()) {
        if (total_degree(e) != k_) throw Error("field is not homogeneous of the basis degree");
        out.emplace_back(index(c, e), v);
      }
    std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    return out;
  }
  [[nodiscard]] auto from_dense(const linalg::DenseVec &v) const -> Poly4<Rational> {
    Poly4<Rational> f;
    int n = static_cast<int>(monos_.size());
    for (int i = 0; i < dim(); ++i)
      if (!v[i].is_zero()) f[i / n].add_term(monos_[i % n], v[i]);
    return f;
  }

private:
  int k_;
  std::vector<Exponent<4>> monos_;
  std::map<Exponent<4>, int> index_;
};

/// L_B h = Dh . B xi - B h.
inline auto homological(const Mat4 &b, const Poly4<Rational> &h) -> Poly4<Rational> {
  auto bx = linear_polys(b);
  auto bh = apply_matrix(b, h);
  Poly4<Rational> out;
  for (int i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      auto d = h[i].derivative(j);
      if (!d.is_zero()) out[i] += d * bx[j];
    }
    out[i] -= bh[i];
  }
  return out;
}

/// phi h(xi) - sign * h(phi xi), for rational phi.
inline auto symmetry_defect(const Mat4 &phi, int sign, const Poly4<Rational> &h, int k) -> Poly4<Rational> {
  auto lhs = apply_matrix(phi, h);
  auto rhs = substitute_all(h, linear_polys(phi), k);
  Poly4<Rational> out;
  for (int i = 0; i < 4; ++i) out[i] = lhs[i] - Rational{sign} * rhs[i];
  return out;
}

struct SymmetryCondition {
  Mat4 phi;
  int sign = -1;
};

struct KernelDegree {
  int degree = 0;
  int dimension = 0;
  std::vector<Poly4<Rational>> basis;
};

struct KernelReport {
  std::vector<KernelDegree> degrees;
  [[nodiscard]] auto dimensions() const -> std::map<int, int> {
    std::map<int, int> m;
    for (const auto &d : degrees) m[d.degree] = d.dimension;
    return m;
  }
};

/// Exact kernel of {L_{A^T} h = 0} together with the symmetry conditions, on
/// each H^k for lo <= k <= hi.
inline auto brute_force_kernel(const Mat4 &a, const std::vector<SymmetryCondition> &conditions, int lo, int hi)
    -> KernelReport {
  KernelReport report;
  Mat4 at = a.transpose();
  for (int k = lo; k <= hi; ++k) {
    HomogeneousBasis basis(k);
    const int n = basis.dim();
    // operator columns, then rows for the eliminator
    std::vector<linalg::SparseRow> rows;
    auto add_block = [&](auto &&op) {
      std::vector<linalg::SparseRow> block(n);
      for (int j = 0; j < n; ++j)
        for (auto &[i, v] : basis.vec(op(basis.field(j)))) block[i].emplace_back(j, v);
      for (auto &r : block)
        if (!r.empty()) rows.push_back(std::move(r));
    };
    add_block([&](const Poly4<Rational> &h) { return homological(at, h); });
    for (const auto &c : conditions)
      add_block([&](const Poly4<Rational> &h) { return symmetry_defect(c.phi, c.sign, h, k); });
    linalg::Echelon ech(n);
    for (auto &r : rows) ech.insert(std::move(r));
    KernelDegree kd{k, ech.nullity(), {}};
    for (const auto &v : ech.nullspace()) kd.basis.push_back(basis.from_dense(v));
    report.degrees.push_back(std::move(kd));
  }
  return report;
}

/// Real images of phi_0 and phi_group as reversing symmetries of A(p, q).
inline auto group_conditions(int group) -> std::vector<SymmetryCondition> {
  if (group < 1 || group > 6) throw Error("group index must be in 1..6");
  return {{real_matrix(phi(0)), -1}, {real_matrix(phi(group)), -1}};
}

inline auto brute_force_kernel(const ResonanceSpec &spec, int group, int degree) -> KernelReport {
  spec.validate();
  if (degree < 2) throw Error("degree must be >= 2");
  return brute_force_kernel(spec.linear_part(), group_conditions(group), 2, degree);
}

// ---------------------------------------------------------------------------
// Complex support of real fields.

/// a + b i over Q.
struct GaussRational {
  Rational re, im;
  GaussRational() = default;
  GaussRational(int v) : re(v) {} // NOLINT
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  [[nodiscard]] auto is_zero() const -> bool { return re.is_zero() && im.is_zero(); }
  auto operator+=(const GaussRational &o) -> GaussRational & {
    re += o.re;
    im += o.im;
    return *this;
  }
  auto operator-=(const GaussRational &o) -> GaussRational & {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  auto operator*=(const GaussRational &o) -> GaussRational & {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  friend auto operator+(GaussRational a, const GaussRational &b) -> GaussRational { return a += b; }
  friend auto operator-(GaussRational a, const GaussRational &b) -> GaussRational { return a -= b; }
  friend auto operator*(GaussRational a, const GaussRational &b) -> GaussRational { return a *= b; }
  friend auto operator-(const GaussRational &a) -> GaussRational { return {-a.re, -a.im}; }
  friend auto operator==(const GaussRational &, const GaussRational &) -> bool = default;
};

/// Does the complex coefficient b = re + i im satisfy c?
inline auto satisfies(const GaussRational &b, CoeffConstraint c) -> bool {
  switch (c) {
  case CoeffConstraint::Free: return true;
  case CoeffConstraint::ReZero: return b.re.is_zero();
  case CoeffConstraint::ImZero: return b.im.is_zero();
  case CoeffConstraint::ReEqIm: return b.re == b.im;
  case CoeffConstraint::ReEqMinusIm: return b.re == -b.im;
  case CoeffConstraint::Zero: return b.is_zero();
  }
  return false;
}

/// Complex monomials of (dz1/dt, dz2/dt) with their coefficients, variables
/// ordered (z1, conj z1, z2, conj z2).
inline auto complex_terms(const PolyVF &x) -> std::vector<std::pair<ResMonomial, GaussRational>> {
  using CPoly = Polynomial<GaussRational, 4>;
  const Rational half{1, 2};
  auto var = [](std::size_t i) { return CPoly::variable(i); };
  // x1 = (z + cz)/2, x2 = (z - cz)/(2i) = -i (z - cz)/2
  std::array<CPoly, 4> sub{
      GaussRational{half, 0} * (var(0) + var(1)), GaussRational{0, -half} * (var(0) - var(1)),
      GaussRational{half, 0} * (var(2) + var(3)), GaussRational{0, -half} * (var(2) - var(3))};
  std::array<CPoly, 4> f;
  for (int i = 0; i < 4; ++i) {
    CPoly p;
    for (const auto &[e, c] : x.comp[i].terms()) p.add_term(e, GaussRational{c, 0});
    f[i] = substitute(p, sub, x.max_degree);
  }
  std::vector<std::pair<ResMonomial, GaussRational>> out;
  for (int comp : {1, 2}) {
    auto z = f[2 * comp - 2] + GaussRational{0, 1} * f[2 * comp - 1];
    for (const auto &[e, c] : z.terms())
      out.push_back({ResMonomial{comp, {e[0], e[1], e[2], e[3]}}, c});
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  return out;
}

/// Every nonlinear complex monomial of x is a survivor and its coefficient
/// satisfies the survivor's constraint.
inline auto support_within(const PolyVF &x, const NormalFormResult &r) -> bool {
  for (const auto &[m, c] : complex_terms(x)) {
    if (m.degree() < 2) continue;
    auto allowed = r.find(m);
    if (!allowed || !satisfies(c, *allowed)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Degree-by-degree normalization.

struct NormalizeResult {
  PolyVF field;
  PolyMap change; // field = change^-1_* x
};

inline auto belitskii_normalize(const PolyVF &x, const ResonanceSpec &spec, int degree) -> NormalizeResult {
  spec.validate();
  const Mat4 a = spec.linear_part();
  if (x.linear_part() != a) throw Error("linear part of the field must equal A(p, q)");
  const int kmax = std::min(degree, x.max_degree);
  PolyVF current{x.comp, kmax};
  PolyMap total = PolyMap::identity(kmax);
  for (int k = 2; k <= kmax; ++k) {
    Poly4<Rational> nk;
    for (int i = 0; i < 4; ++i) nk[i] = current.comp[i].homogeneous_part(k);
    if (std::all_of(nk.begin(), nk.end(), [](const RPoly &p) { return p.is_zero(); })) continue;
    HomogeneousBasis basis(k);
    const int n = basis.dim();
    std::vector<linalg::SparseRow> m_cols(n);
    for (int j = 0; j < n; ++j) m_cols[j] = basis.vec(homological(a, basis.field(j)));
    // kernel of L_A
    linalg::Echelon ech(n);
    {
      std::vector<linalg::SparseRow> rows(n);
      for (int j = 0; j < n; ++j)
        for (const auto &[i, v] : m_cols[j]) rows[i].emplace_back(j, v);
      for (auto &r : rows) ech.insert(std::move(r));
    }
    auto kernel = ech.nullspace();
    // columns of [M^2 | K]
    std::vector<linalg::SparseRow> cols;
    for (int j = 0; j < n; ++j) cols.push_back(basis.vec(homological(a, basis.from_dense([&] {
      linalg::DenseVec v(n, Rational{0});
      for (const auto &[i, val] : m_cols[j]) v[i] = val;
      return v;
    }()))));
    for (const auto &kv : kernel) cols.push_back(linalg::to_sparse(kv));
    auto sol = linalg::solve_columns(cols, n, basis.vec(nk));
    if (!sol) throw SplittingFailure("H^" + std::to_string(k) + " does not split as im + ker");
    // h = M y
    linalg::DenseVec h(n, Rational{0});
    for (int j = 0; j < n; ++j) {
      if ((*sol)[j].is_zero()) continue;
      for (const auto &[i, v] : m_cols[j]) h[i] += (*sol)[j] * v;
    }
    auto hpoly = basis.from_dense(h);
    if (std::all_of(hpoly.begin(), hpoly.end(), [](const RPoly &p) { return p.is_zero(); })) continue;
    Poly4<Rational> phi_k;
    for (std::size_t i = 0; i < 4; ++i) phi_k[i] = RPoly::variable(i) + hpoly[i];
    PolyMap step{phi_k, kmax};
    current = conjugate(current, inverse(step));
    total = compose(total, step);
    current.watermark = 0;
  }
  current.watermark = 0;
  total.watermark = 0;
  return {current, total};
}

} // namespace revnf
