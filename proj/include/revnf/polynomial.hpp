#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace revnf {

template <std::size_t N> using Exponent = std::array<std::uint16_t, N>;

template <std::size_t N> constexpr auto total_degree(const Exponent<N> &e) -> int {
  int s = 0;
  for (auto x : e) s += x;
  return s;
}

/// Graded lexicographic order: total degree first, then lexicographic with
/// the first variable most significant.
template <std::size_t N> struct GradedLess {
  auto operator()(const Exponent<N> &a, const Exponent<N> &b) const -> bool {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Sparse multivariate polynomial with coefficients in a field-like T
/// (anything with +, -, *, unary -, and is_zero()).
template <class T, std::size_t N> class Polynomial {
public:
  using Exp = Exponent<N>;
  using Terms = std::map<Exp, T, GradedLess<N>>;

  Polynomial() = default;
  explicit Polynomial(T constant) {
    if (!constant.is_zero()) terms_.emplace(Exp{}, std::move(constant));
  }

  static auto variable(std::size_t i) -> Polynomial {
    Polynomial p;
    Exp e{};
    e[i] = 1;
    p.terms_.emplace(e, T{1});
    return p;
  }
  static auto monomial(const Exp &e, T c) -> Polynomial {
    Polynomial p;
    p.add_term(e, std::move(c));
    return p;
  }

  void add_term(const Exp &e, const T &c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] auto terms() const -> const Terms & { return terms_; }
  [[nodiscard]] auto is_zero() const -> bool { return terms_.empty(); }
  [[nodiscard]] auto size() const -> std::size_t { return terms_.size(); }
  [[nodiscard]] auto coeff(const Exp &e) const -> T {
    auto it = terms_.find(e);
    return it == terms_.end() ? T{} : it->second;
  }
  /// -1 for the zero polynomial.
  [[nodiscard]] auto degree() const -> int { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }
  [[nodiscard]] auto low_degree() const -> int { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  /// Drops every monomial of degree > k; returns the highest dropped degree (0 if none).
  auto truncate(int k) -> int {
    int dropped = 0;
    for (auto it = terms_.begin(); it != terms_.end();) {
      int d = total_degree(it->first);
      if (d > k) {
        dropped = std::max(dropped, d);
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
    return dropped;
  }
  [[nodiscard]] auto truncated(int k) const -> Polynomial {
    auto p = *this;
    p.truncate(k);
    return p;
  }
  [[nodiscard]] auto homogeneous_part(int k) const -> Polynomial {
    Polynomial p;
    for (const auto &[e, c] : terms_)
      if (total_degree(e) == k) p.terms_.emplace(e, c);
    return p;
  }
  [[nodiscard]] auto degree_range(int lo, int hi) const -> Polynomial {
    Polynomial p;
    for (const auto &[e, c] : terms_) {
      int d = total_degree(e);
      if (d >= lo && d <= hi) p.terms_.emplace(e, c);
    }
    return p;
  }

  [[nodiscard]] auto derivative(std::size_t i) const -> Polynomial {
    Polynomial p;
    for (const auto &[e, c] : terms_) {
      if (e[i] == 0) continue;
      auto f = e;
      --f[i];
      p.add_term(f, c * T{static_cast<int>(e[i])});
    }
    return p;
  }

  template <class F> [[nodiscard]] auto map_coeffs(F &&f) const {
    using U = std::decay_t<decltype(f(std::declval<const T &>()))>;
    Polynomial<U, N> p;
    for (const auto &[e, c] : terms_) p.add_term(e, f(c));
    return p;
  }

  template <class U> [[nodiscard]] auto evaluate(const std::array<U, N> &x) const -> U {
    U acc{};
    for (const auto &[e, c] : terms_) {
      U t = U{c};
      for (std::size_t i = 0; i < N; ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  auto operator+=(const Polynomial &o) -> Polynomial & {
    for (const auto &[e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  auto operator-=(const Polynomial &o) -> Polynomial & {
    for (const auto &[e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  auto operator*=(const T &s) -> Polynomial & {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto &[e, c] : terms_) c *= s;
    return *this;
  }
  friend auto operator+(Polynomial a, const Polynomial &b) -> Polynomial { return a += b; }
  friend auto operator-(Polynomial a, const Polynomial &b) -> Polynomial { return a -= b; }
  friend auto operator-(Polynomial a) -> Polynomial {
    for (auto &[e, c] : a.terms_) c = -c;
    return a;
  }
  friend auto operator*(const T &s, Polynomial a) -> Polynomial { return a *= s; }
  friend auto operator*(const Polynomial &a, const Polynomial &b) -> Polynomial { return multiply(a, b, -1); }

  /// Product keeping only monomials of degree <= max_degree (no bound when negative).
  static auto multiply(const Polynomial &a, const Polynomial &b, int max_degree) -> Polynomial {
    Polynomial p;
    for (const auto &[ea, ca] : a.terms_) {
      int da = total_degree(ea);
      for (const auto &[eb, cb] : b.terms_) {
        if (max_degree >= 0 && da + total_degree(eb) > max_degree) break;
        Exp e;
        for (std::size_t i = 0; i < N; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        p.add_term(e, ca * cb);
      }
    }
    return p;
  }

  friend auto operator==(const Polynomial &a, const Polynomial &b) -> bool { return a.terms_ == b.terms_; }

private:
  Terms terms_;
};

/// p(g_1, ..., g_N) truncated at max_degree (no bound when negative).
template <class T, std::size_t N, std::size_t M>
auto substitute(const Polynomial<T, N> &p, const std::array<Polynomial<T, M>, N> &g, int max_degree)
    -> Polynomial<T, M> {
  using Out = Polynomial<T, M>;
  std::array<std::vector<Out>, N> powers;
  for (std::size_t i = 0; i < N; ++i) powers[i].push_back(Out{T{1}});
  auto power_of = [&](std::size_t i, int k) -> const Out & {
    while (static_cast<int>(powers[i].size()) <= k)
      powers[i].push_back(Out::multiply(powers[i].back(), g[i], max_degree));
    return powers[i][k];
  };
  Out result;
  for (const auto &[e, c] : p.terms()) {
    Out term{c};
    for (std::size_t i = 0; i < N && !term.is_zero(); ++i)
      if (e[i]) term = Out::multiply(term, power_of(i, e[i]), max_degree);
    result += term;
  }
  return result;
}

} // namespace revnf
