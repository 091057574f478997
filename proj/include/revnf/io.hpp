#pragma once

#include "revnf/groups.hpp"
#include "revnf/normalform.hpp"
#include "revnf/solver.hpp"
#include "revnf/vecfield.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

namespace revnf::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Text format: one line per component, `dx1 = -1*x2 + 3/2*x2*y1^2`.
// Map files name the components `x1 = ...` instead.

inline const std::array<std::string, 4> var_names{"x1", "x2", "y1", "y2"};

namespace detail {

class TermParser {
public:
  TermParser(std::string_view s, int line) : s_(s), line_(line) {}

  auto parse_polynomial() -> RPoly {
    RPoly out;
    skip_ws();
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      auto [e, c] = parse_term();
      out.add_term(e, Rational{sign} * c);
      first = false;
      skip_ws();
    }
    if (first) fail("empty right-hand side");
    return out;
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError("line " + std::to_string(line_) + ", column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  [[nodiscard]] auto peek() const -> char { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  auto digits() -> std::string {
    std::size_t b = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (b == pos_) fail("expected digits");
    return std::string(s_.substr(b, pos_ - b));
  }
  auto parse_factor(Exponent<4> &e) -> void {
    for (std::size_t v = 0; v < 4; ++v)
      if (s_.substr(pos_, 2) == var_names[v]) {
        pos_ += 2;
        int power = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          skip_ws();
          power = std::stoi(digits());
          if (power < 1) fail("exponent must be positive");
        }
        e[v] = static_cast<std::uint16_t>(e[v] + power);
        return;
      }
    fail("expected a variable (x1, x2, y1, y2)");
  }
  auto parse_term() -> std::pair<Exponent<4>, Rational> {
    Exponent<4> e{};
    Rational c{1};
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        num += "/" + digits();
      }
      c = Rational::parse(num);
    } else {
      parse_factor(e);
    }
    skip_ws();
    while (peek() == '*') {
      ++pos_;
      skip_ws();
      parse_factor(e);
      skip_ws();
    }
    return {e, c};
  }
};

inline auto parse_components(const std::string &text, const std::string &prefix) -> Poly4<Rational> {
  Poly4<Rational> comp;
  std::array<bool, 4> seen{};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": missing '='");
    std::string lhs = line.substr(first, eq - first);
    while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.pop_back();
    int idx = -1;
    for (int v = 0; v < 4; ++v)
      if (lhs == prefix + var_names[v]) idx = v;
    if (idx < 0) throw ParseError("line " + std::to_string(lineno) + ": unknown left-hand side '" + lhs + "'");
    if (seen[idx]) throw ParseError("line " + std::to_string(lineno) + ": duplicate component '" + lhs + "'");
    seen[idx] = true;
    comp[idx] = TermParser(std::string_view(line).substr(eq + 1), lineno).parse_polynomial();
  }
  for (int v = 0; v < 4; ++v)
    if (!seen[v]) throw ParseError("missing component '" + prefix + var_names[v] + "'");
  return comp;
}

inline auto format_polynomial(const RPoly &p) -> std::string {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto &[e, c] : p.terms()) {
    Rational a = c;
    if (first) {
      if (a.sign() < 0) s += "-";
    } else {
      s += a.sign() < 0 ? " - " : " + ";
    }
    s += a.abs().to_string();
    for (std::size_t v = 0; v < 4; ++v) {
      if (e[v] == 0) continue;
      s += "*" + var_names[v];
      if (e[v] > 1) s += "^" + std::to_string(e[v]);
    }
    first = false;
  }
  return s;
}

inline auto format_components(const Poly4<Rational> &c, const std::string &prefix) -> std::string {
  std::string out;
  for (int v = 0; v < 4; ++v) out += prefix + var_names[v] + " = " + format_polynomial(c[v]) + "\n";
  return out;
}

} // namespace detail

inline auto parse_field(const std::string &text, int max_degree) -> PolyVF {
  PolyVF x{detail::parse_components(text, "d"), max_degree};
  return x;
}
inline auto parse_map(const std::string &text, int max_degree) -> PolyMap {
  return PolyMap{detail::parse_components(text, ""), max_degree};
}
inline auto format_field(const PolyVF &x) -> std::string { return detail::format_components(x.comp, "d"); }
inline auto format_map(const PolyMap &h) -> std::string { return detail::format_components(h.comp, ""); }

inline auto read_file(const std::string &path) -> std::string {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// JSON

inline auto to_json(const Rational &r) -> json {
  if (r.fits_long() && r.den_long() == 1) return json{{"num", r.num_long()}, {"den", 1}};
  if (r.fits_long()) return json{{"num", r.num_long()}, {"den", r.den_long()}};
  return json{{"num", r.num_str()}, {"den", r.den_str()}};
}

inline auto rational_from_json(const json &j) -> Rational {
  auto part = [](const json &v) -> std::string {
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    throw ParseError("rational part must be an integer or a string");
  };
  if (j.is_number_integer()) return Rational{j.get<long long>()};
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_object() && j.contains("num") && j.contains("den"))
    return Rational::parse(part(j.at("num")) + "/" + part(j.at("den")));
  throw ParseError("expected a rational: integer, \"n/d\" string or {num, den}");
}

inline auto to_json(const AlgScalar &x) -> json {
  if (x.is_rational()) return to_json(x.rational_part());
  return json{{"a", to_json(x.rational_part())}, {"b", to_json(x.radical_part())}, {"d", x.radicand()}};
}

inline auto scalar_from_json(const json &j) -> AlgScalar {
  if (j.is_object() && j.contains("d"))
    return AlgScalar{rational_from_json(j.at("a")), rational_from_json(j.at("b")), j.at("d").get<long>()};
  return AlgScalar{rational_from_json(j)};
}

inline auto to_json(const Mat4 &m) -> json {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline auto matrix_from_json(const json &j) -> Mat4 {
  if (!j.is_array() || j.size() != 4) throw ParseError("matrix must be a 4x4 nested array");
  Mat4::Entries e;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4) throw ParseError("matrix must be a 4x4 nested array");
    for (int k = 0; k < 4; ++k) e[4 * i + k] = scalar_from_json(j[i][k]);
  }
  return Mat4{e};
}

inline auto to_json(const MatGroup &g, const std::optional<SignAssignment> &rho = std::nullopt) -> json {
  json j{{"order", g.order()}, {"elements", json::array()}};
  for (const auto &m : g.elements) j["elements"].push_back(to_json(m));
  if (rho) {
    j["rho"] = json::array();
    for (const auto &m : g.elements) j["rho"].push_back((*rho)(m));
  }
  return j;
}

inline auto group_from_json(const json &j) -> std::pair<MatGroup, std::optional<SignAssignment>> {
  MatGroup g;
  for (const auto &m : j.at("elements")) g.elements.push_back(matrix_from_json(m));
  if (g.elements.size() != j.at("order").get<std::size_t>()) throw ParseError("group order does not match elements");
  std::sort(g.elements.begin(), g.elements.end());
  std::optional<SignAssignment> rho;
  if (j.contains("rho")) {
    SignAssignment s;
    const auto &r = j.at("rho");
    if (r.size() != j.at("elements").size()) throw ParseError("rho must have one sign per element");
    for (std::size_t i = 0; i < r.size(); ++i) s.sign[matrix_from_json(j.at("elements")[i])] = r[i].get<int>();
    rho = s;
  }
  return {g, rho};
}

inline auto to_json(const InvolutionSolution &s, int class_id) -> json {
  return json{{"matrix", to_json(s.s)},
              {"angles", {to_json(s.block_angles[0]), to_json(s.block_angles[1])}},
              {"degenerate", s.degenerate},
              {"group_order", s.group_order},
              {"class_id", class_id}};
}

inline auto solution_from_json(const json &j) -> std::pair<InvolutionSolution, int> {
  InvolutionSolution s;
  s.s = matrix_from_json(j.at("matrix"));
  s.block_angles = {rational_from_json(j.at("angles")[0]), rational_from_json(j.at("angles")[1])};
  s.degenerate = j.at("degenerate").get<bool>();
  s.group_order = j.at("group_order").get<std::size_t>();
  return {s, j.at("class_id").get<int>()};
}

inline auto to_json(const NormalFormResult &r) -> json {
  json terms = json::array();
  for (const auto &s : r.surviving)
    terms.push_back({{"component", s.monomial.component},
                     {"exponents", s.monomial.exps},
                     {"constraint", constraint_name(s.constraint)}});
  const auto &h = r.hypothesis_status;
  return json{{"p", r.spec.p},
              {"q", r.spec.q},
              {"group", r.group},
              {"degree", r.degree},
              {"terms", terms},
              {"hypothesis",
               {{"remark_predicate", h.remark_predicate},
                {"ut_hypothesis", h.ut_hypothesis},
                {"only_delta_terms", h.only_delta_terms},
                {"conclusion_holds", h.conclusion_holds()}}}};
}

inline auto normal_form_from_json(const json &j) -> NormalFormResult {
  NormalFormResult r;
  r.spec = {j.at("p").get<int>(), j.at("q").get<int>()};
  r.group = j.at("group").get<int>();
  r.degree = j.at("degree").get<int>();
  for (const auto &t : j.at("terms"))
    r.surviving.push_back({ResMonomial{t.at("component").get<int>(), t.at("exponents").get<std::array<int, 4>>()},
                           parse_constraint(t.at("constraint").get<std::string>())});
  const auto &h = j.at("hypothesis");
  r.hypothesis_status = {h.at("remark_predicate").get<bool>(), h.at("ut_hypothesis").get<bool>(),
                         h.at("only_delta_terms").get<bool>()};
  return r;
}

inline auto polys_to_json(const Poly4<Rational> &c) -> json {
  json comps = json::array();
  for (const auto &p : c) {
    json terms = json::array();
    for (const auto &[e, v] : p.terms()) terms.push_back({{"exponents", e}, {"coeff", to_json(v)}});
    comps.push_back(terms);
  }
  return comps;
}

inline auto polys_from_json(const json &j) -> Poly4<Rational> {
  if (!j.is_array() || j.size() != 4) throw ParseError("expected 4 components");
  Poly4<Rational> c;
  for (int i = 0; i < 4; ++i)
    for (const auto &t : j[i]) c[i].add_term(t.at("exponents").get<Exponent<4>>(), rational_from_json(t.at("coeff")));
  return c;
}

inline auto to_json(const PolyVF &x) -> json {
  return json{{"max_degree", x.max_degree}, {"components", polys_to_json(x.comp)}};
}
inline auto field_from_json(const json &j) -> PolyVF {
  return PolyVF{polys_from_json(j.at("components")), j.at("max_degree").get<int>()};
}
inline auto to_json(const PolyMap &h) -> json {
  return json{{"max_degree", h.max_degree}, {"components", polys_to_json(h.comp)}};
}
inline auto map_from_json(const json &j) -> PolyMap {
  return PolyMap{polys_from_json(j.at("components")), j.at("max_degree").get<int>()};
}

/// A field file in either format; JSON is recognised by a leading '{'.
inline auto load_field(const std::string &path, int max_degree) -> PolyVF {
  auto text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      auto x = field_from_json(json::parse(text));
      return PolyVF{x.comp, max_degree};
    } catch (const json::exception &e) {
      throw ParseError(std::string("malformed JSON field: ") + e.what());
    }
  }
  return parse_field(text, max_degree);
}

inline auto load_map(const std::string &path, int max_degree) -> PolyMap {
  auto text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      auto h = map_from_json(json::parse(text));
      return PolyMap{h.comp, max_degree};
    } catch (const json::exception &e) {
      throw ParseError(std::string("malformed JSON map: ") + e.what());
    }
  }
  return parse_map(text, max_degree);
}

/// `builtin:<name>` or a JSON file holding a 4x4 matrix.
inline auto load_involution(const std::string &spec) -> Mat4 {
  if (spec.rfind("builtin:", 0) == 0) return builtins::involution(spec);
  try {
    return matrix_from_json(json::parse(read_file(spec)));
  } catch (const json::exception &e) {
    throw ParseError("malformed matrix file '" + spec + "': " + e.what());
  }
}

} // namespace revnf::io
