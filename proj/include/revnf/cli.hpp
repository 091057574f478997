#pragma once

#include "revnf/builtins.hpp"
#include "revnf/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

namespace revnf::cli {

enum class Exit : int { Ok = 0, Failure = 1, Usage = 2 };

inline auto default_degree() -> int {
  if (const char *env = std::getenv("REVNF_DEGREE")) {
    try {
      int k = std::stoi(env);
      if (k >= 1) return k;
    } catch (const std::exception &) {
    }
    throw ParseError(std::string("REVNF_DEGREE must be a positive integer, got '") + env + "'");
  }
  return 7;
}

/// `builtin:phi<j>` (real image of phi_j) on top of the io loader.
inline auto load_involution(const std::string &spec) -> Mat4 {
  if (spec.rfind("builtin:phi", 0) == 0 && spec.size() == 12 && std::isdigit(static_cast<unsigned char>(spec[11])))
    return real_matrix(phi(spec[11] - '0'));
  return io::load_involution(spec);
}

namespace detail {

inline auto matrix_text(const Mat4 &m) -> std::string {
  std::string s;
  for (int i = 0; i < 4; ++i) {
    s += "  [";
    for (int j = 0; j < 4; ++j) s += (j ? ", " : "") + m(i, j).to_string();
    s += "]\n";
  }
  return s;
}

inline auto matrix_latex(const Mat4 &m) -> std::string {
  auto entry = [](const AlgScalar &x) {
    std::string s;
    auto frac = [](const Rational &r) {
      if (r.is_integer()) return r.to_string();
      std::string sign = r.sign() < 0 ? "-" : "";
      return sign + "\\frac{" + r.abs().num_str() + "}{" + r.abs().den_str() + "}";
    };
    if (!x.rational_part().is_zero() || x.is_rational()) s = frac(x.rational_part());
    if (!x.is_rational()) {
      auto b = x.radical_part();
      std::string rad = "\\sqrt{" + std::to_string(x.radicand()) + "}";
      std::string coef = b.abs() == Rational{1} ? rad : frac(b.abs()) + rad;
      s += (b.sign() < 0 ? "-" : (s.empty() ? "" : "+")) + coef;
    }
    return s;
  };
  std::string s = "\\begin{pmatrix}";
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) s += (j ? " & " : "") + entry(m(i, j));
    s += i < 3 ? " \\\\ " : "";
  }
  return s + "\\end{pmatrix}";
}

inline auto group_name(int n) -> std::string { return n == 2 ? "Z2xZ2" : "D" + std::to_string(n); }

inline auto solve_command(int n, const std::string &alpha, const std::string &beta, bool include_degenerate,
                          bool as_json, bool latex, std::ostream &out) -> Exit {
  LinearPart lin{Rational::parse(alpha), Rational::parse(beta)};
  auto all = solve_involutions(lin, n);
  auto sols = include_degenerate ? all : non_degenerate(all);
  auto classes = partition_by_group(non_degenerate(all));
  auto class_of = [&](const Mat4 &s) {
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (const auto &m : classes[c].members)
        if (m.s == s) return static_cast<int>(c) + 1;
    return 0;
  };
  if (as_json) {
    io::json j{{"n", n}, {"alpha", io::to_json(lin.alpha)}, {"beta", io::to_json(lin.beta)}};
    j["solutions"] = io::json::array();
    for (const auto &s : sols) {
      auto js = io::to_json(s, class_of(s.s));
      if (n == 4 && !s.degenerate) js["xi"] = builtins::xi_label(s.s);
      j["solutions"].push_back(js);
    }
    j["group"] = group_name(n);
    j["non_degenerate"] = non_degenerate(all).size();
    j["classes"] = io::json::array();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      io::json members = io::json::array();
      for (const auto &m : classes[c].members) members.push_back(io::to_json(m.s));
      j["classes"].push_back({{"id", c + 1}, {"group_order", classes[c].group_order}, {"members", members}});
    }
    out << j.dump(2) << "\n";
    return Exit::Ok;
  }
  if (latex) {
    for (std::size_t i = 0; i < sols.size(); ++i)
      out << "S_{" << i + 1 << "}=" << matrix_latex(sols[i].s) << (sols[i].degenerate ? " % degenerate" : "") << "\n";
    return Exit::Ok;
  }
  out << group_name(n) << ": " << all.size() << " solutions, " << non_degenerate(all).size() << " non-degenerate, "
      << classes.size() << " classes\n";
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const auto &s = sols[i];
    out << "solution " << i + 1 << ": angles " << s.block_angles[0] << ", " << s.block_angles[1] << " (turns), order "
        << s.group_order;
    if (s.degenerate) out << " [degenerate]";
    else out << " class " << class_of(s.s);
    if (n == 4 && !s.degenerate) out << " (Xi" << builtins::xi_label(s.s) << ")";
    out << "\n" << matrix_text(s.s);
  }
  return Exit::Ok;
}

inline auto classify_command(const std::string &inv, const std::string &alpha, const std::string &beta, bool as_json,
                             std::ostream &out) -> Exit {
  Mat4 s = load_involution(inv);
  LinearPart lin{Rational::parse(alpha), Rational::parse(beta)};
  Mat4 a = lin.matrix();
  io::json j{{"involution", io::to_json(s)}};
  bool ok = true;
  j["is_involution"] = is_involution(s);
  j["anticommutes"] = anticommutes(s, a);
  ok = is_involution(s) && anticommutes(s, a);
  if (ok) {
    auto g = generate_closure({Mat4::canonical_involution(), s});
    auto rho = sign_assignment(g, a);
    auto n = static_cast<int>(element_order(Mat4::canonical_involution() * s));
    j["group"] = io::to_json(g, rho);
    j["n"] = n;
    j["dihedral"] = is_dihedral(g, n);
    j["multiplicative"] = rho.is_multiplicative();
    j["reversing"] = rho.reversing_count();
    j["degenerate"] = g.order() < static_cast<std::size_t>(2 * n) || s == Mat4::canonical_involution();
    if (n == 4) {
      int label = builtins::xi_label(s);
      if (label > 0) j["xi"] = label;
    }
    ok = is_dihedral(g, n) && rho.is_multiplicative();
  }
  if (as_json) {
    out << j.dump(2) << "\n";
  } else {
    out << "involution: " << (j["is_involution"].get<bool>() ? "yes" : "no")
        << ", anticommutes with A: " << (j["anticommutes"].get<bool>() ? "yes" : "no") << "\n";
    if (j.contains("group")) {
      out << "<R0, S> has order " << j["group"]["order"] << " (" << group_name(j["n"].get<int>())
          << "), R0*S has order " << j["n"] << ", dihedral: " << (j["dihedral"].get<bool>() ? "yes" : "no") << ", reversing elements: " << j["reversing"]
          << "\n";
      if (j.contains("xi")) out << "class Xi" << j["xi"] << "\n";
    }
  }
  return ok ? Exit::Ok : Exit::Failure;
}

inline auto check_command(const std::string &field, const std::string &inv, int sign, const std::string &family,
                          int degree, bool as_json, std::ostream &out) -> Exit {
  PolyVF x = io::load_field(field, degree);
  if (!family.empty()) {
    bool ok = check_parity_conditions(x, family);
    if (as_json) out << io::json{{"family", family}, {"pass", ok}}.dump(2) << "\n";
    else out << family << ": " << (ok ? "pass" : "fail") << "\n";
    return ok ? Exit::Ok : Exit::Failure;
  }
  auto report = check_symmetry(x, load_involution(inv), sign);
  if (as_json) {
    io::json off = io::json::array();
    for (const auto &o : report.offenses)
      off.push_back({{"component", o.component + 1}, {"exponents", o.exponents}, {"residual", io::to_json(o.residual)}});
    out << io::json{{"pass", report.pass},
                    {"truncation_degree", report.truncation_degree},
                    {"watermark", report.watermark},
                    {"offenses", off}}
               .dump(2)
        << "\n";
  } else {
    out << (report.pass ? "pass" : "fail") << " (sign " << sign << ", through degree " << report.truncation_degree
        << ")\n";
    for (const auto &o : report.offenses) {
      out << "  component " << io::var_names[o.component] << ", monomial ";
      RPoly mono = RPoly::monomial(o.exponents, Rational{1});
      out << io::detail::format_polynomial(mono) << ": residual " << o.residual.to_string() << "\n";
    }
  }
  return report.pass ? Exit::Ok : Exit::Failure;
}

inline auto normal_form_command(int p, int q, int group, int degree, bool latex, bool as_json, std::ostream &out)
    -> Exit {
  auto r = survival_analysis({p, q}, group, degree);
  if (latex) {
    out << emit_real_normal_form(r).to_latex();
    return Exit::Ok;
  }
  if (as_json) {
    out << io::to_json(r).dump(2) << "\n";
    return Exit::Ok;
  }
  const auto &h = r.hypothesis_status;
  out << "p = " << p << ", q = " << q << ", group " << group << ", degree " << degree << ": " << r.surviving.size()
      << " surviving monomials\n";
  for (const auto &s : r.surviving) out << "  " << s.monomial.to_string() << "  " << constraint_name(s.constraint) << "\n";
  out << "mod-4 predicate: " << (h.remark_predicate ? "holds" : "fails")
      << "; p, q odd with pq > 1: " << (h.ut_hypothesis ? "yes" : "no")
      << "; only z_j*D1^m*D2^n terms: " << (h.only_delta_terms ? "yes" : "no") << "\n";
  return Exit::Ok;
}

inline auto oracle_command(int p, int q, int group, int degree, bool as_json, std::ostream &out) -> Exit {
  auto kernel = brute_force_kernel({p, q}, group, degree);
  auto r = survival_analysis({p, q}, group, degree);
  io::json dims = io::json::object(), expected = io::json::object();
  bool agree = true;
  for (const auto &d : kernel.degrees) {
    dims[std::to_string(d.degree)] = d.dimension;
    expected[std::to_string(d.degree)] = r.parameter_count(d.degree);
    agree = agree && d.dimension == r.parameter_count(d.degree);
  }
  if (as_json) {
    out << io::json{{"dimensions", dims}, {"survival_counts", expected}, {"agree", agree}}.dump(2) << "\n";
  } else {
    for (const auto &d : kernel.degrees)
      out << "degree " << d.degree << ": kernel " << d.dimension << ", survival count "
          << r.parameter_count(d.degree) << "\n";
    out << (agree ? "agree" : "DISAGREE") << "\n";
  }
  return agree ? Exit::Ok : Exit::Failure;
}

inline auto normalize_command(const std::string &field, int p, int q, int degree, bool as_json, std::ostream &out)
    -> Exit {
  auto x = io::load_field(field, degree);
  auto [y, change] = belitskii_normalize(x, {p, q}, degree);
  if (as_json) out << io::json{{"field", io::to_json(y)}, {"change", io::to_json(change)}}.dump(2) << "\n";
  else out << io::format_field(y);
  return Exit::Ok;
}

inline auto linearize_command(const std::string &map, int degree, bool as_json, std::ostream &out) -> Exit {
  auto phi_map = io::load_map(map, degree);
  auto h = linearize_involution(phi_map, degree);
  if (as_json) out << io::to_json(h).dump(2) << "\n";
  else out << io::format_map(h);
  return Exit::Ok;
}

} // namespace detail

/// Runs one command line (args excludes the program name).
inline auto run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) -> int {
  CLI::App app{"Reversible vector fields on R^4: involution classification, symmetry checks and normal forms"};
  app.require_subcommand(1);
  bool as_json = false, latex = false, include_degenerate = false;
  int n = 0, p = 0, q = 0, group = 0, sign = -1, degree = 0;
  std::string alpha = "1", beta = "2", field, inv, family, map;

  auto *solve = app.add_subcommand("solve-involutions", "all S with SA = -AS, S^2 = Id, (R0 S)^n = Id");
  solve->add_option("--n", n, "order of R0*S (2, 3, 4 or 6)")->required();
  solve->add_option("--alpha", alpha, "first frequency (rational)");
  solve->add_option("--beta", beta, "second frequency (rational)");
  solve->add_flag("--include-degenerate", include_degenerate, "also list solutions generating a smaller group");
  auto *solve_json = solve->add_flag("--json", as_json);
  solve->add_flag("--latex", latex)->excludes(solve_json);

  auto *classify = app.add_subcommand("classify", "group generated by R0 and an involution");
  classify->add_option("--involution", inv, "matrix file or builtin:<name>")->required();
  classify->add_option("--alpha", alpha);
  classify->add_option("--beta", beta);
  classify->add_flag("--json", as_json);

  auto *check = app.add_subcommand("check", "reversibility / equivariance of a polynomial field");
  check->add_option("--field", field, "field file (text or JSON)")->required();
  auto *inv_opt = check->add_option("--involution", inv, "matrix file or builtin:<name>");
  check->add_option("--sign", sign, "-1 reversing, +1 equivariant")->check(CLI::IsMember({-1, 1}));
  auto *fam_opt = check->add_option("--family", family, "parity characterization (Z2Z2-S1..3, D4-S1)");
  inv_opt->excludes(fam_opt);
  check->add_option("--degree", degree, "truncation degree");
  check->add_flag("--json", as_json);

  auto *nf = app.add_subcommand("normal-form", "surviving resonant monomials for a D4 group");
  nf->add_option("--p", p)->required();
  nf->add_option("--q", q)->required();
  nf->add_option("--group", group)->required()->check(CLI::Range(1, 6));
  nf->add_option("--degree", degree);
  auto *latex_opt = nf->add_flag("--latex", latex);
  auto *json_opt = nf->add_flag("--json", as_json);
  latex_opt->excludes(json_opt);

  auto *oracle = app.add_subcommand("oracle", "real-coordinate kernel dimensions per degree");
  oracle->add_option("--p", p)->required();
  oracle->add_option("--q", q)->required();
  oracle->add_option("--group", group)->required()->check(CLI::Range(1, 6));
  oracle->add_option("--degree", degree);
  oracle->add_flag("--json", as_json);

  auto *normalize = app.add_subcommand("normalize", "degree-by-degree normalization of a field");
  normalize->add_option("--field", field)->required();
  normalize->add_option("--p", p)->required();
  normalize->add_option("--q", q)->required();
  normalize->add_option("--degree", degree);
  normalize->add_flag("--json", as_json);

  auto *linearize = app.add_subcommand("linearize", "h = Id + Dphi(0) phi for a polynomial involution");
  linearize->add_option("--map", map, "map file (text or JSON)")->required();
  linearize->add_option("--degree", degree);
  linearize->add_flag("--json", as_json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n";
    return static_cast<int>(Exit::Usage);
  }

  try {
    if (degree == 0) degree = default_degree();
    if (degree < 1) throw ParseError("--degree must be positive");
    Exit code = Exit::Ok;
    if (*solve) {
      code = detail::solve_command(n, alpha, beta, include_degenerate, as_json, latex, out);
    } else if (*classify) {
      code = detail::classify_command(inv, alpha, beta, as_json, out);
    } else if (*check) {
      if (inv.empty() && family.empty()) throw ParseError("check needs --involution or --family");
      code = detail::check_command(field, inv, sign, family, degree, as_json, out);
    } else if (*nf) {
      code = detail::normal_form_command(p, q, group, degree, latex, as_json, out);
    } else if (*oracle) {
      if (degree < 2) throw ParseError("oracle needs --degree >= 2");
      code = detail::oracle_command(p, q, group, degree, as_json, out);
    } else if (*normalize) {
      code = detail::normalize_command(field, p, q, degree, as_json, out);
    } else if (*linearize) {
      code = detail::linearize_command(map, degree, as_json, out);
    }
    return static_cast<int>(code);
  } catch (const ParseError &e) {
    err << "input error: " << e.what() << "\n";
    return static_cast<int>(Exit::Usage);
  } catch (const UnsupportedResonance &e) {
    err << "unsupported resonance: " << e.what() << "\n";
    return static_cast<int>(Exit::Usage);
  } catch (const DegenerateResonance &e) {
    err << "unsupported linear part: " << e.what() << "\n";
    return static_cast<int>(Exit::Usage);
  } catch (const UnsupportedOrder &e) {
    err << "unsupported order: " << e.what() << "\n";
    return static_cast<int>(Exit::Usage);
  } catch (const UnknownFamily &e) {
    err << "usage error: " << e.what() << "\n";
    return static_cast<int>(Exit::Usage);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(Exit::Failure);
  }
}

} // namespace revnf::cli
