#pragma once

#include "revnf/errors.hpp"

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace revnf {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
class Rational {
public:
  Rational() = default;
  template <std::integral I> Rational(I v) : v_(static_cast<long>(v)) {}
  Rational(long num, long den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts "n", "-n", "n/d".
  static auto parse(std::string_view text) -> Rational {
    auto s = std::string(text);
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view t, bool allow_sign) {
      if (t.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (t[0] == '-' || t[0] == '+')) ++i;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
      throw ParseError("malformed rational literal '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in rational literal '" + s + "'");
    return Rational(mpq_class(n, d));
  }

  [[nodiscard]] auto is_zero() const -> bool { return sgn(v_) == 0; }
  [[nodiscard]] auto sign() const -> int { return sgn(v_); }
  [[nodiscard]] auto is_integer() const -> bool {
    return v_.get_den() == 1;
  }
  [[nodiscard]] auto abs() const -> Rational { return Rational(mpq_class(::abs(v_))); }
  [[nodiscard]] auto num_str() const -> std::string { return v_.get_num().get_str(); }
  [[nodiscard]] auto den_str() const -> std::string { return v_.get_den().get_str(); }
  [[nodiscard]] auto fits_long() const -> bool {
    return v_.get_num().fits_slong_p() && v_.get_den().fits_slong_p();
  }
  [[nodiscard]] auto num_long() const -> long { return v_.get_num().get_si(); }
  [[nodiscard]] auto den_long() const -> long { return v_.get_den().get_si(); }
  [[nodiscard]] auto to_string() const -> std::string { return v_.get_str(); }
  [[nodiscard]] auto raw() const -> const mpq_class & { return v_; }

  auto operator+=(const Rational &o) -> Rational & {
    v_ += o.v_;
    return *this;
  }
  auto operator-=(const Rational &o) -> Rational & {
    v_ -= o.v_;
    return *this;
  }
  auto operator*=(const Rational &o) -> Rational & {
    v_ *= o.v_;
    return *this;
  }
  auto operator/=(const Rational &o) -> Rational & {
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend auto operator+(Rational a, const Rational &b) -> Rational { return a += b; }
  friend auto operator-(Rational a, const Rational &b) -> Rational { return a -= b; }
  friend auto operator*(Rational a, const Rational &b) -> Rational { return a *= b; }
  friend auto operator/(Rational a, const Rational &b) -> Rational { return a /= b; }
  friend auto operator-(const Rational &a) -> Rational { return Rational(mpq_class(-a.v_)); }

  friend auto operator==(const Rational &a, const Rational &b) -> bool {
    return cmp(a.v_, b.v_) == 0;
  }
  friend auto operator<=>(const Rational &a, const Rational &b) -> std::strong_ordering {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend auto operator<<(std::ostream &os, const Rational &r) -> std::ostream & {
    return os << r.to_string();
  }

private:
  mpq_class v_{0};
};

inline auto pow(Rational base, unsigned e) -> Rational {
  Rational r{1};
  while (e) {
    if (e & 1U) r *= base;
    base *= base;
    e >>= 1U;
  }
  return r;
}

} // namespace revnf
