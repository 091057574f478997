#pragma once

#include "revnf/errors.hpp"
#include "revnf/mat4.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace revnf {

inline constexpr std::size_t default_group_cap = 64;

/// Finite matrix group: canonically sorted elements plus the generators used.
struct MatGroup {
  std::vector<Mat4> elements;
  std::vector<Mat4> generators;

  [[nodiscard]] auto order() const -> std::size_t { return elements.size(); }
  [[nodiscard]] auto contains(const Mat4 &m) const -> bool {
    return std::binary_search(elements.begin(), elements.end(), m);
  }
  friend auto operator==(const MatGroup &a, const MatGroup &b) -> bool { return a.elements == b.elements; }
};

inline auto generate_closure(std::span<const Mat4> gens, std::size_t cap = default_group_cap) -> MatGroup {
  for (const auto &g : gens)
    if (g.determinant().is_zero()) throw SingularLinearPart("generator is not invertible: " + g.to_string());
  std::set<Mat4> seen{Mat4::identity()};
  std::deque<Mat4> frontier{Mat4::identity()};
  while (!frontier.empty()) {
    Mat4 x = frontier.front();
    frontier.pop_front();
    for (const auto &g : gens) {
      Mat4 y = x * g;
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw ClosureCapExceeded("closure exceeds " + std::to_string(cap) + " elements");
        frontier.push_back(std::move(y));
      }
    }
  }
  return {std::vector<Mat4>(seen.begin(), seen.end()), std::vector<Mat4>(gens.begin(), gens.end())};
}

inline auto generate_closure(std::initializer_list<Mat4> gens, std::size_t cap = default_group_cap) -> MatGroup {
  std::vector<Mat4> v(gens);
  return generate_closure(std::span<const Mat4>(v), cap);
}

/// Multiplicative order of m; 0 if it exceeds the cap.
inline auto element_order(const Mat4 &m, std::size_t cap = default_group_cap) -> std::size_t {
  Mat4 p = m;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (p == Mat4::identity()) return k;
    p = p * m;
  }
  return 0;
}

/// |G| = 2n, G holds a rotation r of order n, and every element outside <r>
/// is an involution inverting r. For n = 2 this is the Klein four-group.
inline auto is_dihedral(const MatGroup &g, int n) -> bool {
  if (n < 2 || g.order() != static_cast<std::size_t>(2 * n)) return false;
  for (const auto &r : g.elements) {
    if (element_order(r) != static_cast<std::size_t>(n)) continue;
    std::set<Mat4> cyclic;
    Mat4 p = Mat4::identity();
    for (int k = 0; k < n; ++k) {
      cyclic.insert(p);
      p = p * r;
    }
    Mat4 r_inv = power(r, static_cast<unsigned>(n - 1));
    bool ok = true;
    for (const auto &s : g.elements) {
      if (cyclic.count(s)) continue;
      if (!is_involution(s) || s * r * s != r_inv) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

/// rho: G -> {+1, -1}; -1 on time-reversing elements.
struct SignAssignment {
  std::map<Mat4, int> sign;

  [[nodiscard]] auto operator()(const Mat4 &g) const -> int { return sign.at(g); }
  [[nodiscard]] auto reversing_count() const -> std::size_t {
    return static_cast<std::size_t>(std::count_if(sign.begin(), sign.end(), [](const auto &kv) { return kv.second < 0; }));
  }
  [[nodiscard]] auto is_multiplicative() const -> bool {
    for (const auto &[g, sg] : sign)
      for (const auto &[h, sh] : sign) {
        auto it = sign.find(g * h);
        if (it == sign.end() || it->second != sg * sh) return false;
      }
    return true;
  }
};

inline auto sign_assignment(const MatGroup &g, const Mat4 &linear_part) -> SignAssignment {
  SignAssignment rho;
  for (const auto &e : g.elements) {
    if (commutes(e, linear_part)) rho.sign.emplace(e, 1);
    else if (anticommutes(e, linear_part)) rho.sign.emplace(e, -1);
    else throw NotCompatible("not compatible with linear part: " + e.to_string());
  }
  if (!rho.is_multiplicative()) throw NotCompatible("sign assignment is not a homomorphism");
  return rho;
}

} // namespace revnf
