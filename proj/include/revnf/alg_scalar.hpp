#pragma once

#include "revnf/errors.hpp"
#include "revnf/rational.hpp"

#include <compare>
#include <string>
#include <tuple>

namespace revnf {

/// a + b*sqrt(d) with d square-free. Values with b == 0 are canonicalized to
/// d == 0, so equality is structural.
class AlgScalar {
public:
  AlgScalar() = default;
  template <std::integral I> AlgScalar(I v) : a_(v) {}
  AlgScalar(Rational a) : a_(std::move(a)) {}
  AlgScalar(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ < 0) throw Error("negative radicand " + std::to_string(d_));
    if (d_ != 0 && !square_free(d_)) throw Error("radicand " + std::to_string(d_) + " is not square-free");
    canonicalize();
  }

  static auto sqrt_of(long d) -> AlgScalar { return {Rational{0}, Rational{1}, d}; }

  [[nodiscard]] auto rational_part() const -> const Rational & { return a_; }
  [[nodiscard]] auto radical_part() const -> const Rational & { return b_; }
  [[nodiscard]] auto radicand() const -> long { return d_; }
  [[nodiscard]] auto is_rational() const -> bool { return d_ == 0; }
  [[nodiscard]] auto is_zero() const -> bool { return d_ == 0 && a_.is_zero(); }

  /// Common radicand of two values; throws when both carry distinct radicals.
  static auto ambient(long d1, long d2) -> long {
    if (d1 == 0) return d2;
    if (d2 == 0 || d1 == d2) return d1;
    throw IncompatibleRadicals("incompatible radicals sqrt(" + std::to_string(d1) + ") and sqrt(" +
                               std::to_string(d2) + ")");
  }

  auto operator+=(const AlgScalar &o) -> AlgScalar & {
    d_ = ambient(d_, o.d_);
    a_ += o.a_;
    b_ += o.b_;
    canonicalize();
    return *this;
  }
  auto operator-=(const AlgScalar &o) -> AlgScalar & {
    d_ = ambient(d_, o.d_);
    a_ -= o.a_;
    b_ -= o.b_;
    canonicalize();
    return *this;
  }
  auto operator*=(const AlgScalar &o) -> AlgScalar & {
    long d = ambient(d_, o.d_);
    Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    canonicalize();
    return *this;
  }
  [[nodiscard]] auto inverse() const -> AlgScalar {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    // (a + b r)^-1 = (a - b r) / (a^2 - d b^2); the norm is nonzero because r is irrational.
    Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
    return {a_ / norm, -b_ / norm, d_};
  }
  auto operator/=(const AlgScalar &o) -> AlgScalar & { return *this *= o.inverse(); }

  friend auto operator+(AlgScalar a, const AlgScalar &b) -> AlgScalar { return a += b; }
  friend auto operator-(AlgScalar a, const AlgScalar &b) -> AlgScalar { return a -= b; }
  friend auto operator*(AlgScalar a, const AlgScalar &b) -> AlgScalar { return a *= b; }
  friend auto operator/(AlgScalar a, const AlgScalar &b) -> AlgScalar { return a /= b; }
  friend auto operator-(const AlgScalar &a) -> AlgScalar { return {-a.a_, -a.b_, a.d_}; }

  friend auto operator==(const AlgScalar &x, const AlgScalar &y) -> bool {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  /// Canonical order: by (d, a, b).
  friend auto operator<=>(const AlgScalar &x, const AlgScalar &y) -> std::strong_ordering {
    if (auto c = x.d_ <=> y.d_; c != 0) return c;
    if (auto c = x.a_ <=> y.a_; c != 0) return c;
    return x.b_ <=> y.b_;
  }

  [[nodiscard]] auto to_string() const -> std::string {
    if (d_ == 0) return a_.to_string();
    std::string rad = "sqrt(" + std::to_string(d_) + ")";
    std::string tail;
    if (b_ == Rational{1}) tail = rad;
    else if (b_ == Rational{-1}) tail = "-" + rad;
    else tail = b_.to_string() + "*" + rad;
    if (a_.is_zero()) return tail;
    return a_.to_string() + (b_.sign() > 0 ? "+" : "") + tail;
  }
  friend auto operator<<(std::ostream &os, const AlgScalar &x) -> std::ostream & {
    return os << x.to_string();
  }

private:
  static auto square_free(long d) -> bool {
    for (long f = 2; f * f <= d; ++f)
      if (d % (f * f) == 0) return false;
    return true;
  }
  void canonicalize() {
    if (d_ == 1) {
      a_ += b_;
      b_ = Rational{0};
    }
    if (b_.is_zero()) d_ = 0;
  }

  Rational a_{0};
  Rational b_{0};
  long d_ = 0;
};

} // namespace revnf
