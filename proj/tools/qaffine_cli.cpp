// qaffine: stratified quotient description of quantum affine spaces.
//
// Exit codes: 0 success, 1 malformed input, 2 hypothesis violation,
// 3 self-test failure.

#include "qaffine/qaffine.hpp"
#include "qaffine/selftest.hpp"

#include <CLI11.hpp>

#include <cstddef>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace qaffine;

namespace {

PointSpec parse_point(const std::string& text, std::size_t n, bool allow_symbolic) {
  PointSpec p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (!tok.empty() && tok[0] == 'l') {
      if (!allow_symbolic) throw InputError("symbolic coordinates are not accepted here: '" + tok + "'");
      if (tok.size() > 1 && tok.substr(1) != std::to_string(p.size() + 1))
        throw InputError("symbol '" + tok + "' at position " + std::to_string(p.size() + 1));
      p.emplace_back(std::nullopt);
    } else {
      p.emplace_back(parse_rational(tok));
    }
  }
  if (p.size() != n)
    throw InputError("expected " + std::to_string(n) + " coordinates, got " + std::to_string(p.size()));
  return p;
}

std::vector<Rational> numeric(const PointSpec& p) {
  std::vector<Rational> out;
  for (const auto& x : p) out.push_back(*x);
  return out;
}

std::string render_point(const PointSpec& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += p[i] ? to_string(*p[i]) : "l" + std::to_string(i + 1);
  }
  return s + ")";
}

int cmd_analyze(const std::string& file, bool json, bool char2, bool require_graded) {
  ProblemSpec P = load_problem(file, char2);
  if (require_graded && P.kind != ProblemKind::graded) throw InputError("twist: the problem file has no 'graded' block");
  AnalysisReport r = analyze_problem(P);
  if (json) {
    std::cout << report_to_json(r).dump(2) << "\n";
    return 0;
  }
  if (r.c_tilde) {
    std::cout << "pullback cocycle c~ = c(rho(a), rho(b)), exponent matrices:\n";
    for (std::size_t l = 0; l < r.c_tilde->free.size(); ++l) std::cout << "  free " << l + 1 << ": " << r.c_tilde->free[l] << "\n";
    if (r.group.has_torsion()) std::cout << "  torsion: " << r.c_tilde->torsion << "\n";
  }
  std::cout << report_to_text(r);
  return 0;
}

int cmd_psi(const std::string& file, const std::string& lambda, bool json, bool char2) {
  ProblemSpec P = load_problem(file, char2);
  const Bicharacter B = validate_q(P.q);
  HypothesisReport hyp = hypothesis_report(P.q);
  require_theorem(P.group, "psi needs -1 outside the subgroup generated by the q_ij or char k = 2: " + hyp.reason);
  const PointSpec point = parse_point(lambda, P.n, true);
  const Stratum s = make_stratum(B, zero_pattern(point));
  const IdealPresentation loc = psi_generators(s, P.group, point);
  const IdealPresentation aff = affine_form(sqrt_bicharacter(B), loc);
  if (json) {
    Json j{{"lambda", render_point(point)},
           {"w", index_list(s.w.elements())},
           {"S_w", lattice_to_json(s.S_w)},
           {"localized", presentation_to_json(loc)},
           {"affine", presentation_to_json(aff)}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "lambda = " << render_point(point) << ", stratum w = " << s.w.str() << ", S_w = " << render_lattice(s.S_w)
            << "\n";
  std::cout << "localized:         " << render_presentation(loc) << "\n";
  std::cout << "affine-saturation: " << render_presentation(aff) << "\n";
  return 0;
}

int cmd_fiber(const std::string& file, const std::string& lambda, const std::string& mu, bool json, bool char2) {
  ProblemSpec P = load_problem(file, char2);
  const Bicharacter B = validate_q(P.q);
  HypothesisReport hyp = hypothesis_report(P.q);
  require_theorem(P.group, "fiber needs -1 outside the subgroup generated by the q_ij or char k = 2: " + hyp.reason);
  const auto l = numeric(parse_point(lambda, P.n, false));
  const auto m = numeric(parse_point(mu, P.n, false));
  FiberCheck fc = fiber_check(B, l, m);
  if (json) {
    Json chars = Json::array();
    for (const auto& [a, la, ma] : fc.characters)
      chars.push_back(Json{{"alpha", vec_to_json(a)}, {"lambda_alpha", to_string(la)}, {"mu_alpha", to_string(ma)}});
    Json j{{"equivalent", fc.equivalent},
           {"w_lambda", index_list(fc.w_lambda.elements())},
           {"w_mu", index_list(fc.w_mu.elements())},
           {"characters", chars}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "equivalent: " << (fc.equivalent ? "true" : "false") << "\n";
  if (!(fc.w_lambda == fc.w_mu)) {
    std::cout << "different strata: w(lambda) = " << fc.w_lambda.str() << ", w(mu) = " << fc.w_mu.str() << "\n";
    return 0;
  }
  std::cout << "stratum w = " << fc.w_lambda.str() << "\n";
  for (const auto& [a, la, ma] : fc.characters)
    std::cout << "  alpha = " << render_vector(a) << ": lambda^alpha = " << to_string(la) << ", mu^alpha = " << to_string(ma)
              << (la == ma ? "" : "  (differ)") << "\n";
  return 0;
}

int cmd_feasibility(const std::string& file, bool minus_one, std::size_t n, unsigned k, unsigned period,
                    const std::string& method, bool json) {
  QMatrix Q;
  if (minus_one) {
    if (!file.empty()) throw InputError("feasibility: give either a problem file or --minus-one, not both");
    if (n < 1 || n > 16) throw InputError("feasibility: --n must lie in 1..16");
    Q = uniparameter_q(n, 2);
  } else {
    if (file.empty()) throw InputError("feasibility: give a problem file or --minus-one --n N");
    Q = load_problem(file).q;
  }
  FeasibilityOptions opt;
  opt.k = k;
  opt.coboundary_period = period;
  if (method == "exhaustive") opt.method = FeasibilityMethod::exhaustive;
  else if (method == "linear") opt.method = FeasibilityMethod::linear;
  else throw InputError("feasibility: --method must be exhaustive or linear");
  FeasibilityResult r = bichar_feasibility(validate_q(Q), opt);
  if (json) {
    Json j{{"n", Q.n},
           {"k", opt.k},
           {"period", opt.coboundary_period},
           {"method", method},
           {"feasible", r.feasible},
           {"candidates_examined", r.candidates_examined},
           {"constraints", r.constraint_count},
           {"verdict", r.verdict}};
    if (r.witness) {
      Json f = Json::array();
      for (const auto& x : r.witness->f) f.push_back(int_to_json(x));
      j["witness"] = Json{{"C", matrix_to_json(r.witness->C)}, {"f", f}};
    } else {
      j["witness"] = Json();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "n = " << Q.n << ", values in Z/" << (1u << opt.k) << ", coboundary period " << opt.coboundary_period
            << ", method " << method << "\n";
  std::cout << r.constraint_count << " constraints, " << r.candidates_examined << " candidates examined\n";
  std::cout << r.verdict << "\n";
  if (r.witness) {
    std::cout << "C = " << r.witness->C << "\nf =";
    for (const auto& x : r.witness->f) std::cout << " " << to_string(x);
    std::cout << "\n";
  }
  return 0;
}

int cmd_selftest(bool json) {
  auto lines = run_selftest();
  bool all = true;
  Json arr = Json::array();
  for (const auto& l : lines) {
    all = all && l.passed;
    if (json)
      arr.push_back(Json{{"name", l.name}, {"passed", l.passed}, {"detail", l.detail}});
    else
      std::cout << (l.passed ? "PASS " : "FAIL ") << l.name << " (" << l.detail << ")\n";
  }
  if (json) std::cout << Json{{"passed", all}, {"checks", arr}}.dump(2) << "\n";
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stratum-by-stratum analysis of O_q(k^n) for a multiplicatively antisymmetric q"};
  app.require_subcommand(1);
  bool json = false, char2 = false;
  std::string file, lambda, mu, method = "exhaustive";
  bool minus_one = false;
  std::size_t n = 0;
  unsigned k = 2, period = 2;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", json, "emit a single JSON document");
    sub->add_flag("--char2", char2, "the base field has characteristic 2");
  };
  auto* analyze = app.add_subcommand("analyze", "stratification, radicals and psi templates");
  analyze->add_option("file", file, "problem file")->required();
  add_common(analyze);
  auto* psi = app.add_subcommand("psi", "ideal generators of psi(lambda)");
  psi->add_option("file", file, "problem file")->required();
  psi->add_option("--lambda", lambda, "comma separated p/q rationals, 0, or l for a symbolic coordinate")->required();
  add_common(psi);
  auto* fiber = app.add_subcommand("fiber", "decide whether lambda and mu lie in one fiber");
  fiber->add_option("file", file, "problem file")->required();
  fiber->add_option("--lambda", lambda, "comma separated rationals")->required();
  fiber->add_option("--mu", mu, "comma separated rationals")->required();
  add_common(fiber);
  auto* feas = app.add_subcommand("feasibility", "search for a cocycle trivial on every S_w x Gamma_w (q = -1)");
  feas->add_option("file", file, "problem file");
  feas->add_flag("--minus-one", minus_one, "use q_ij = -1 for all i < j");
  feas->add_option("--n", n, "dimension for --minus-one");
  feas->add_option("--k", k, "cocycle values in Z/2^k");
  feas->add_option("--period", period, "period N of the coboundary part (1 disables it)");
  feas->add_option("--method", method, "exhaustive or linear");
  feas->add_flag("--json", json, "emit a single JSON document");
  auto* twist = app.add_subcommand("twist", "ambient analysis of a graded twist");
  twist->add_option("file", file, "problem file with a graded block")->required();
  add_common(twist);
  auto* selftest = app.add_subcommand("selftest", "run the brute-force oracle battery");
  selftest->add_flag("--json", json, "emit a single JSON document");
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analyze) return cmd_analyze(file, json, char2, false);
    if (*psi) return cmd_psi(file, lambda, json, char2);
    if (*fiber) return cmd_fiber(file, lambda, mu, json, char2);
    if (*feas) return cmd_feasibility(file, minus_one, n, k, period, method, json);
    if (*twist) return cmd_analyze(file, json, char2, true);
    if (*selftest) return cmd_selftest(json);
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const StructuralError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 1;
}
