#pragma once

#include "revnf/alg_scalar.hpp"
#include "revnf/errors.hpp"

#include <array>
#include <compare>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>

namespace revnf {

/// 4x4 matrix over Q(sqrt d) for a single ambient radicand d (d == 0 means
/// rational). Mixed radicals are rejected on construction.
class Mat4 {
public:
  using Entries = std::array<AlgScalar, 16>;

  Mat4() = default;
  explicit Mat4(Entries e) : e_(std::move(e)) { d_ = ambient_of(e_); }
  Mat4(std::initializer_list<std::initializer_list<AlgScalar>> rows) {
    if (rows.size() != 4) throw Error("Mat4 needs 4 rows");
    std::size_t i = 0;
    for (const auto &row : rows) {
      if (row.size() != 4) throw Error("Mat4 needs 4 columns");
      std::size_t j = 0;
      for (const auto &x : row) e_[4 * i + j++] = x;
      ++i;
    }
    d_ = ambient_of(e_);
  }

  static auto identity() -> Mat4 {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m.e_[5 * i] = AlgScalar{1};
    return m;
  }
  static auto diagonal(const AlgScalar &a, const AlgScalar &b, const AlgScalar &c, const AlgScalar &d) -> Mat4 {
    return {{a, 0, 0, 0}, {0, b, 0, 0}, {0, 0, c, 0}, {0, 0, 0, d}};
  }
  /// Linear part A(alpha, beta): rotation generators on (x1,x2) and (y1,y2).
  static auto rotation_generator(const Rational &alpha, const Rational &beta) -> Mat4 {
    return {{0, -alpha, 0, 0}, {alpha, 0, 0, 0}, {0, 0, 0, -beta}, {0, 0, beta, 0}};
  }
  /// R0(x1,x2,y1,y2) = (x1,-x2,y1,-y2).
  static auto canonical_involution() -> Mat4 { return diagonal(1, -1, 1, -1); }
  static auto block_diagonal(const std::array<AlgScalar, 4> &b1, const std::array<AlgScalar, 4> &b2) -> Mat4 {
    return {{b1[0], b1[1], 0, 0}, {b1[2], b1[3], 0, 0}, {0, 0, b2[0], b2[1]}, {0, 0, b2[2], b2[3]}};
  }

  [[nodiscard]] auto operator()(int i, int j) const -> const AlgScalar & { return e_[4 * i + j]; }
  [[nodiscard]] auto entries() const -> const Entries & { return e_; }
  [[nodiscard]] auto radicand() const -> long { return d_; }
  [[nodiscard]] auto is_rational() const -> bool { return d_ == 0; }

  void set(int i, int j, AlgScalar v) {
    d_ = AlgScalar::ambient(d_, v.radicand());
    e_[4 * i + j] = std::move(v);
  }

  friend auto operator*(const Mat4 &x, const Mat4 &y) -> Mat4 {
    AlgScalar::ambient(x.d_, y.d_);
    Entries r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        AlgScalar acc;
        for (int k = 0; k < 4; ++k) {
          const auto &a = x.e_[4 * i + k];
          const auto &b = y.e_[4 * k + j];
          if (!a.is_zero() && !b.is_zero()) acc += a * b;
        }
        r[4 * i + j] = std::move(acc);
      }
    return Mat4(std::move(r));
  }
  friend auto operator+(const Mat4 &x, const Mat4 &y) -> Mat4 {
    Entries r;
    for (std::size_t k = 0; k < 16; ++k) r[k] = x.e_[k] + y.e_[k];
    return Mat4(std::move(r));
  }
  friend auto operator-(const Mat4 &x, const Mat4 &y) -> Mat4 {
    Entries r;
    for (std::size_t k = 0; k < 16; ++k) r[k] = x.e_[k] - y.e_[k];
    return Mat4(std::move(r));
  }
  friend auto operator-(const Mat4 &x) -> Mat4 {
    Entries r;
    for (std::size_t k = 0; k < 16; ++k) r[k] = -x.e_[k];
    return Mat4(std::move(r));
  }
  friend auto operator*(const AlgScalar &s, const Mat4 &x) -> Mat4 {
    Entries r;
    for (std::size_t k = 0; k < 16; ++k) r[k] = s * x.e_[k];
    return Mat4(std::move(r));
  }

  [[nodiscard]] auto is_zero() const -> bool {
    for (const auto &x : e_)
      if (!x.is_zero()) return false;
    return true;
  }
  [[nodiscard]] auto transpose() const -> Mat4 {
    Entries r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[4 * j + i] = e_[4 * i + j];
    return Mat4(std::move(r));
  }

  [[nodiscard]] auto determinant() const -> AlgScalar {
    auto a = e_;
    AlgScalar det{1};
    for (int c = 0; c < 4; ++c) {
      int piv = c;
      while (piv < 4 && a[4 * piv + c].is_zero()) ++piv;
      if (piv == 4) return AlgScalar{0};
      if (piv != c) {
        for (int j = 0; j < 4; ++j) std::swap(a[4 * piv + j], a[4 * c + j]);
        det = -det;
      }
      det *= a[4 * c + c];
      auto inv = a[4 * c + c].inverse();
      for (int r = c + 1; r < 4; ++r) {
        if (a[4 * r + c].is_zero()) continue;
        auto f = a[4 * r + c] * inv;
        for (int j = c; j < 4; ++j) a[4 * r + j] -= f * a[4 * c + j];
      }
    }
    return det;
  }

  /// Gauss-Jordan inverse; throws SingularLinearPart.
  [[nodiscard]] auto inverse() const -> Mat4 {
    auto a = e_;
    auto b = identity().e_;
    for (int c = 0; c < 4; ++c) {
      int piv = c;
      while (piv < 4 && a[4 * piv + c].is_zero()) ++piv;
      if (piv == 4) throw SingularLinearPart("matrix is singular");
      if (piv != c)
        for (int j = 0; j < 4; ++j) {
          std::swap(a[4 * piv + j], a[4 * c + j]);
          std::swap(b[4 * piv + j], b[4 * c + j]);
        }
      auto inv = a[4 * c + c].inverse();
      for (int j = 0; j < 4; ++j) {
        a[4 * c + j] *= inv;
        b[4 * c + j] *= inv;
      }
      for (int r = 0; r < 4; ++r) {
        if (r == c || a[4 * r + c].is_zero()) continue;
        auto f = a[4 * r + c];
        for (int j = 0; j < 4; ++j) {
          a[4 * r + j] -= f * a[4 * c + j];
          b[4 * r + j] -= f * b[4 * c + j];
        }
      }
    }
    return Mat4(std::move(b));
  }

  friend auto operator==(const Mat4 &x, const Mat4 &y) -> bool { return x.e_ == y.e_; }
  /// Canonical order: lexicographic over row-major entries.
  friend auto operator<=>(const Mat4 &x, const Mat4 &y) -> std::strong_ordering {
    for (std::size_t k = 0; k < 16; ++k)
      if (auto c = x.e_[k] <=> y.e_[k]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  [[nodiscard]] auto to_string() const -> std::string {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 4; ++i) {
      os << (i ? "; " : "");
      for (int j = 0; j < 4; ++j) os << (j ? " " : "") << e_[4 * i + j];
    }
    os << "]";
    return os.str();
  }
  friend auto operator<<(std::ostream &os, const Mat4 &m) -> std::ostream & { return os << m.to_string(); }

private:
  static auto ambient_of(const Entries &e) -> long {
    long d = 0;
    for (const auto &x : e) d = AlgScalar::ambient(d, x.radicand());
    return d;
  }

  Entries e_{};
  long d_ = 0;
};

[[nodiscard]] inline auto is_involution(const Mat4 &s) -> bool { return s * s == Mat4::identity(); }
[[nodiscard]] inline auto anticommutes(const Mat4 &s, const Mat4 &a) -> bool { return (s * a + a * s).is_zero(); }
[[nodiscard]] inline auto commutes(const Mat4 &s, const Mat4 &a) -> bool { return s * a == a * s; }

[[nodiscard]] inline auto power(const Mat4 &m, unsigned e) -> Mat4 {
  Mat4 r = Mat4::identity();
  for (unsigned i = 0; i < e; ++i) r = r * m;
  return r;
}

/// Exact (cos, sin) of 2*pi*k/n for n in {1, 2, 3, 4, 6}.
[[nodiscard]] inline auto unit_circle_point(int k, int n) -> std::pair<AlgScalar, AlgScalar> {
  if (n != 1 && n != 2 && n != 3 && n != 4 && n != 6)
    throw UnsupportedOrder("no quadratic closed form for angles 2*pi*k/" + std::to_string(n));
  int twelfths = ((k % n + n) % n) * (12 / n);
  const AlgScalar half{Rational(1, 2)};
  const AlgScalar root3_half{Rational{0}, Rational(1, 2), 3};
  switch (twelfths) {
  case 0: return {1, 0};
  case 2: return {half, root3_half};
  case 3: return {0, 1};
  case 4: return {-half, root3_half};
  case 6: return {-1, 0};
  case 8: return {-half, -root3_half};
  case 9: return {0, -1};
  case 10: return {half, -root3_half};
  default: break;
  }
  throw UnsupportedOrder("angle index out of table");
}

/// Reflection block [[cos t, sin t], [sin t, -cos t]] for t = 2*pi*k/n.
[[nodiscard]] inline auto reflection_block(int k, int n) -> std::array<AlgScalar, 4> {
  auto [c, s] = unit_circle_point(k, n);
  return {c, s, s, -c};
}

} // namespace revnf
