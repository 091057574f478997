// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance               run all
//   acceptance --criterion N run one

#include "support.hpp"

#include "revnf/builtins.hpp"
#include "revnf/cli.hpp"
#include "revnf/cross_table.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace revnf;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const Mat4 r0 = Mat4::canonical_involution();
const LinearPart lin12{1, 2};

auto sorted(std::vector<Mat4> v) {
  std::sort(v.begin(), v.end());
  return v;
}
auto matrices(const std::vector<InvolutionSolution> &sols) {
  std::vector<Mat4> out;
  for (const auto &s : sols) out.push_back(s.s);
  return sorted(out);
}

auto c1_klein() -> Outcome {
  auto sols = solve_involutions(lin12, 2);
  if (sols.size() != 4) return {false, std::to_string(sols.size()) + " solutions, expected 4"};
  if (matrices(sols) != sorted(builtins::klein_list())) return {false, "matrices differ from S1..S4"};
  for (const auto &s : sols)
    if (s.degenerate != (s.s == r0)) return {false, "degenerate flag not exactly on R0"};
  // the same through the command line
  std::ostringstream out, err;
  if (cli::run({"solve-involutions", "--n", "2", "--include-degenerate", "--json"}, out, err) != 0)
    return {false, "CLI failed: " + err.str()};
  auto j = io::json::parse(out.str());
  std::vector<Mat4> from_cli;
  for (const auto &s : j["solutions"]) {
    auto [sol, id] = io::solution_from_json(s);
    from_cli.push_back(sol.s);
    if (sol.degenerate != (sol.s == r0)) return {false, "CLI degenerate flag wrong"};
  }
  if (sorted(from_cli) != sorted(builtins::klein_list())) return {false, "CLI matrices differ"};
  return {true, "4 solutions equal S1..S4 entrywise, S4 = R0 flagged degenerate"};
}

auto c2_d3() -> Outcome {
  auto nd = non_degenerate(solve_involutions(lin12, 3));
  auto got = matrices(nd);
  auto want = sorted(builtins::d3_list());
  int published_found = 0;
  for (const auto &m : want) published_found += std::binary_search(got.begin(), got.end(), m);
  std::ostringstream d;
  d << got.size() << " non-degenerate solutions in " << partition_by_group(nd).size()
    << " group classes; all " << published_found << " of the 3 published matrices found";
  if (got == want) return {true, d.str()};
  d << "; extra:";
  for (const auto &s : nd)
    if (!std::binary_search(want.begin(), want.end(), s.s))
      d << " (" << s.block_angles[0] << "," << s.block_angles[1] << ")";
  d << " (angle turns); each satisfies the defining system exactly";
  return {false, d.str()};
}

auto c3_d4() -> Outcome {
  auto nd = non_degenerate(solve_involutions(lin12, 4));
  if (nd.size() != 12) return {false, std::to_string(nd.size()) + " non-degenerate, expected 12"};
  auto cls = partition_by_group(nd);
  if (cls.size() != 6) return {false, std::to_string(cls.size()) + " classes, expected 6"};
  std::set<std::vector<Mat4>> got, want;
  for (const auto &c : cls) {
    if (c.members.size() != 2) return {false, "class of size " + std::to_string(c.members.size())};
    got.insert(matrices(c.members));
  }
  for (const auto &c : builtins::xi_classes()) want.insert(sorted({c[0], c[1]}));
  if (got != want) return {false, "classes differ from Xi1..Xi6"};
  return {true, "12 solutions, 6 classes of 2 equal to Xi1..Xi6"};
}

auto c4_raw() -> Outcome {
  std::vector<std::pair<Mat4, int>> claimed;
  for (const auto &m : builtins::klein_list()) claimed.emplace_back(m, 2);
  for (const auto &m : builtins::d3_list()) claimed.emplace_back(m, 3);
  for (const auto &c : builtins::xi_classes())
    for (const auto &m : c) claimed.emplace_back(m, 4);
  for (const auto &[m, n] : claimed) {
    auto rep = verify_raw_system(m, lin12, n);
    if (!rep.satisfied()) return {false, "published matrix fails: " + rep.failing().front()};
  }
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, claimed.size() - 1);
  std::uniform_int_distribution<int> entry(0, 15), num(-4, 4), den(1, 4);
  int rejected = 0;
  for (int t = 0; t < 100; ++t) {
    auto [m, n] = claimed[pick(rng)];
    Rational delta;
    while (delta.is_zero()) delta = Rational{num(rng), den(rng)};
    auto e = m.entries();
    int k = entry(rng);
    e[k] = e[k] + AlgScalar{delta};
    rejected += !verify_raw_system(Mat4{e}, lin12, n).satisfied();
  }
  std::ostringstream d;
  d << claimed.size() << " matrices with all residuals zero; " << rejected << "/100 perturbations rejected";
  return {rejected == 100, d.str()};
}

auto c5_groups() -> Outcome {
  int classes = 0;
  for (int n : {2, 3, 4}) {
    for (const auto &c : partition_by_group(non_degenerate(solve_involutions(lin12, n)))) {
      ++classes;
      auto g = generate_closure({r0, c.members.front().s});
      if (g.order() != static_cast<std::size_t>(2 * n)) return {false, "order " + std::to_string(g.order())};
      if (!is_dihedral(g, n)) return {false, "not dihedral for n = " + std::to_string(n)};
      auto rho = sign_assignment(g, lin12);
      if (!rho.is_multiplicative()) return {false, "rho not multiplicative"};
      if (rho.reversing_count() != static_cast<std::size_t>(n)) return {false, "|G-| != n"};
    }
  }
  return {true, std::to_string(classes) + " classes (n = 2, 3, 4): order 2n, dihedral, rho multiplicative, |G-| = n"};
}

auto c6_table() -> Outcome {
  auto rows = cross_table();
  auto checks = check_cross_table(rows);
  int ok = 0, flagged = 0, non_coprime = 0;
  std::ostringstream d, bad;
  for (const auto &c : checks) {
    non_coprime += !c.coprime;
    if (c.flagged()) {
      ++flagged;
      d << "flagged: phi" << c.row->phi << " [" << c.row->hypothesis << "] published as a tautology, computed "
        << constraint_name(c.computed) << " at (p,q) = (" << c.p << "," << c.q << "); ";
      continue;
    }
    if (c.matches()) ++ok;
    else bad << " phi" << c.row->phi << " [" << c.row->hypothesis << "]";
  }
  d << ok << "/" << rows.size() - flagged << " stated rows reproduced (" << rows.size() << " rows, " << non_coprime
    << " without a coprime instance)";
  bool pass = ok == static_cast<int>(rows.size()) - flagged && flagged == 1;
  if (!pass) d << "; mismatches:" << bad.str();
  return {pass, d.str()};
}

auto c7_ut() -> Outcome {
  std::ostringstream bad;
  int total = 0, good = 0;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{3, 5}, {5, 7}, {3, 7}})
    for (int g = 1; g <= 6; ++g) {
      ++total;
      auto r = survival_analysis({p, q}, g, 9);
      bool ok = r.hypothesis_status.only_delta_terms;
      if (ok) {
        try {
          auto t = emit_real_normal_form(r);
          // full Delta pattern: every (m, n) with 1 <= m + n <= 4 in both blocks
          ok = t.terms.size() == 2 * 14;
        } catch (const MixedResonantTerms &) {
          ok = false;
        }
      }
      if (ok) {
        ++good;
        continue;
      }
      bad << " (" << p << "," << q << ") group " << g << " keeps";
      for (const auto &s : r.surviving)
        if (!s.monomial.is_delta_type()) bad << " " << s.monomial.to_string();
      bad << ";";
    }
  std::ostringstream d;
  d << good << "/" << total << " cases reduce to the Delta1/Delta2 pattern";
  if (good != total) d << "; failing:" << bad.str();
  return {good == total, d.str()};
}

auto c8_oracle() -> Outcome {
  int compared = 0;
  std::ostringstream bad;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {3, 5}, {1, 4}})
    for (int g = 1; g <= 6; ++g) {
      auto r = survival_analysis({p, q}, g, 7);
      for (const auto &d : brute_force_kernel({p, q}, g, 7).degrees) {
        ++compared;
        if (d.dimension != r.parameter_count(d.degree))
          bad << " (" << p << "," << q << ") g" << g << " k" << d.degree << ": " << d.dimension
              << " vs " << r.parameter_count(d.degree);
      }
    }
  if (!bad.str().empty()) return {false, "mismatch" + bad.str()};
  return {true, std::to_string(compared) + " (p,q,group,degree) cells agree exactly"};
}

auto c9_normalize() -> Outcome {
  std::mt19937 rng(99);
  const ResonanceSpec spec{3, 5};
  const Mat4 a = spec.linear_part();
  const int k = 6;
  for (int t = 0; t < 20; ++t) {
    int j = t % 6 + 1;
    Mat4 s = builtins::xi_representative(j);
    auto x = fixtures::random_reversible_field(rng, a, {r0, s}, 2, 4, k);
    auto [y, change] = belitskii_normalize(x, spec, k);
    std::string tag = "field " + std::to_string(t) + " (S" + std::to_string(j) + "): ";
    if (!check_symmetry(y, r0, -1).pass || !check_symmetry(y, s, -1).pass) return {false, tag + "symmetry lost"};
    auto allowed = survival_analysis(spec, {to_rev_involution(r0), to_rev_involution(s)}, k);
    if (!support_within(y, allowed)) return {false, tag + "support outside the survival set"};
    if (conjugate(x, inverse(change)) != y) return {false, tag + "returned change does not conjugate"};
    auto again = belitskii_normalize(y, spec, k);
    if (again.field != y || again.change != PolyMap::identity(k)) return {false, tag + "not idempotent"};
  }
  return {true, "20 fields normalized through degree 6: reversible, in the survival set, idempotent"};
}

auto c10_parity() -> Outcome {
  std::mt19937 rng(10);
  const Mat4 a = Mat4::rotation_generator(1, 2);
  std::ostringstream d;
  for (auto fam : {ParityFamily::Z2Z2_S1, ParityFamily::Z2Z2_S2, ParityFamily::Z2Z2_S3, ParityFamily::D4_S1}) {
    Mat4 s = family_involution(fam);
    int yes = 0;
    for (int t = 0; t < 50; ++t) {
      PolyVF x = t % 2 ? fixtures::random_reversible_field(rng, a, {r0, s}, 2, 5, 5, 4)
                       : fixtures::with_linear(a, fixtures::random_polys(rng, 2, 5, 2), 5);
      bool direct = check_symmetry(x, r0, -1).pass && check_symmetry(x, s, -1).pass;
      if (check_parity_conditions(x, fam) != direct) return {false, "disagreement in field " + std::to_string(t)};
      yes += direct;
    }
    d << yes << "/50 ";
  }
  return {true, "200 fields agree; reversible per family: " + d.str()};
}

auto c11_linearize() -> Outcome {
  std::mt19937 rng(11);
  const int k = 6;
  const Mat4 a = Mat4::rotation_generator(1, 2);
  for (int t = 0; t < 10; ++t) {
    auto g = fixtures::random_near_identity(rng, 3, k);
    auto phi_map = compose(compose(g, linear_map(r0, k)), inverse(g));
    auto x0 = fixtures::random_reversible_field(rng, a, {r0}, 2, 4, k);
    auto x = conjugate(x0, g);
    // x is phi-reversible: Dphi . X = -X o phi
    auto lhs = jacobian_apply(phi_map, x);
    auto rhs = substitute_all(x.comp, phi_map.comp, k);
    for (int i = 0; i < 4; ++i)
      if (lhs.comp[i] != -rhs[i]) return {false, "constructed field is not phi-reversible"};
    auto h = linearize_involution(phi_map, k);
    auto y = conjugate(x, h);
    if (!check_symmetry(y, r0, -1).pass) return {false, "case " + std::to_string(t) + ": pushforward not R0-reversible"};
  }
  return {true, "10 involutions g R0 g^-1: pushforward R0-reversible through degree 6"};
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char **argv) {
  const std::vector<Criterion> all{
      {1, "Z2xZ2 classification", 1, c1_klein},
      {2, "D3 classification", 1, c2_d3},
      {3, "D4 classification and Xi partition", 1, c3_d4},
      {4, "raw polynomial system oracle", 5, c4_raw},
      {5, "group structure", 1, c5_groups},
      {6, "cross-term constraint table", 1, c6_table},
      {7, "Delta-only normal form for odd p, q", 10, c7_ut},
      {8, "kernel oracle equals survival counts", 120, c8_oracle},
      {9, "end-to-end normalization", 60, c9_normalize},
      {10, "parity characterizations", 30, c10_parity},
      {11, "involution linearization pipeline", 30, c11_linearize},
  };
  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--criterion") only = std::atoi(argv[2]);
  else if (argc != 1) {
    std::cerr << "usage: acceptance [--criterion N]\n";
    return 2;
  }
  bool all_pass = true, ran = false;
  for (const auto &c : all) {
    if (only && c.id != only) continue;
    ran = true;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += "; exceeded time limit of " + std::to_string(c.limit_s) + " s";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << secs << " s): " << o.detail;
    std::cout << line.str() << std::endl;
    all_pass = all_pass && o.pass;
  }
  if (!ran) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
