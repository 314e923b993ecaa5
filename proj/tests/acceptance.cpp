// Acceptance battery: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
// Tolerances are exact: every mismatch / violation count must be 0.

#include "qaffine/oracles.hpp"
#include "qaffine/qaffine.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace qaffine;

namespace {

std::string fixture(const std::string& name) { return std::string(QAFFINE_FIXTURES) + "/" + name; }

IntVec v(std::initializer_list<long long> xs) { return IntVec(xs.begin(), xs.end()); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// every q matrix touched by criteria 1-4, reused by criterion 5
std::vector<QMatrix> g_matrices;

const std::vector<std::string> kFixtures = {"nonclosed_n3.json",  "uniparameter_n3.json", "root_of_unity_t3_n2.json",
                                            "commutative_n2.json", "graded_z2.json",       "graded_symmetric.json",
                                            "char3_t9.json"};

Outcome nonclosed_fixture() {
  ProblemSpec P = load_problem(fixture("nonclosed_n3.json"));
  g_matrices.push_back(P.q);
  AnalysisReport r = analyze_problem(P);
  const StratumRecord& s = r.strata.at(0);
  bool ok = s.w.size() == 0 && s.S_w == hermite_basis({v({1, 0, 0})}, 3) && s.perp_dimension == 2 &&
            s.perp_components == 1;
  return {ok, "w = {}: S = " + render_lattice(s.S_w) + ", perp dimension " + std::to_string(s.perp_dimension) +
                  ", components " + to_string(s.perp_components)};
}

Outcome nonroot_suite() {
  int mismatches = 0, cases = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    QMatrix Q = uniparameter_q(n, 0);
    g_matrices.push_back(Q);
    const Bicharacter B = validate_q(Q);
    for (const auto& w : all_subsets(n)) {
      ++cases;
      const Lattice S = radical(B, w);
      const std::size_t k = n - w.size();
      Lattice expected;
      if (k % 2 == 0) {
        expected = hermite_basis({}, n);
      } else {
        IntVec g(n);
        const auto comp = w.complement_elements();
        for (std::size_t i = 0; i < comp.size(); ++i) g[comp[i]] = i % 2 == 0 ? 1 : -1;
        expected = hermite_basis({g}, n);
      }
      if (!(S == expected) || !(S == closed_form_oracle(0, n, w).S_w)) ++mismatches;
    }
  }
  QMatrix Q = uniparameter_q(3, 0);
  Stratum s = stratify(Q)[0];
  const std::string rendered =
      render_presentation(affine_form(sqrt_bicharacter(validate_q(Q)), psi_generators(s, Q.group, symbolic_point(s.w))));
  const std::string golden = "<p^{-2/2} * l2^1 * x[1]*x[3] - l1^1 * l3^1 * x[2]>; saturate by x[1],x[2],x[3]";
  return {mismatches == 0 && rendered == golden,
          std::to_string(cases) + " strata, " + std::to_string(mismatches) + " mismatches; psi(n=3, w={}) = " + rendered};
}

Outcome root_of_unity_suite() {
  int mismatches = 0, cases = 0, power_checks = 0;
  for (long long t : {3, 5, 7, 9}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      QMatrix Q = uniparameter_q(n, t);
      g_matrices.push_back(Q);
      const Bicharacter B = validate_q(Q);
      const SqrtBicharacter c = sqrt_bicharacter(B);
      for (const auto& w : all_subsets(n)) {
        ++cases;
        const Stratum s = make_stratum(B, w);
        const auto comp = w.complement_elements();
        std::vector<IntVec> gens;
        for (auto j : comp) {
          IntVec e(n);
          e[j] = t;
          gens.push_back(e);
        }
        const bool odd = comp.size() % 2 == 1;
        if (odd) {
          IntVec g(n);
          for (std::size_t i = 0; i < comp.size(); ++i) g[comp[i]] = i % 2 == 0 ? 1 : -1;
          gens.push_back(g);
        }
        if (!(s.S_w == hermite_basis(gens, n))) ++mismatches;

        const PointSpec point = symbolic_point(w);
        const IdealPresentation ip = psi_generators(s, Q.group, point);
        for (auto j : comp) {
          IntVec e(n);
          e[j] = t;
          const Binomial b = lattice_binomial(Q.group, point, e);
          bool listed = false;
          for (const auto& x : ip.binomials) listed = listed || x == b;
          // the even case has basis exactly t * Gamma_w, so x_j^t - l_j^t is a listed generator
          if (!odd && !listed) ++mismatches;
          if (!lattice_contains(s.S_w, e)) ++mismatches;
          const TwistedTerm lhs = to_ordered(c, b.lhs), rhs = to_ordered(c, b.rhs);
          const std::string want = "x[" + std::to_string(j + 1) + "]^" + std::to_string(t) + " - l" +
                                   std::to_string(j + 1) + "^" + std::to_string(t);
          if (!lhs.coefficient.scalar_part().is_identity() || render_term(lhs) + " - " + render_term(rhs) != want)
            ++mismatches;
          ++power_checks;
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(cases) + " strata, " + std::to_string(power_checks) +
                               " x_j^t - l_j^t checks, " + std::to_string(mismatches) + " mismatches"};
}

Outcome radical_oracle() {
  oracle::Rng rng(4001);
  const Int torsions[] = {1, 3, 5};
  std::size_t checked = 0, mismatches = 0;
  for (int k = 0; k < 100; ++k) {
    const auto n = static_cast<std::size_t>(oracle::uniform(rng, 2, 4));
    const auto a = static_cast<std::size_t>(oracle::uniform(rng, 0, 2));
    QMatrix Q = oracle::random_q(rng, n, a, torsions[oracle::uniform(rng, 0, 2)], 3);
    g_matrices.push_back(Q);
    for (const auto& w : all_subsets(n)) {
      auto r = oracle::radical_box_check(Q, w, 6);
      checked += r.checked;
      mismatches += r.mismatches;
    }
  }
  return {mismatches == 0, "100 matrices, " + std::to_string(checked) + " box vectors, " +
                               std::to_string(mismatches) + " mismatches"};
}

IntVec random_combination(oracle::Rng& rng, const Lattice& L, long long range) {
  IntVec out(L.ambient_rank());
  for (const auto& b : L.basis_rows()) {
    long long k = oracle::uniform(rng, -range, range);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i] * k;
  }
  return out;
}

Outcome cocycle_properties() {
  oracle::Rng rng(5001);
  std::size_t bad = 0, sampled = 0;
  for (const QMatrix& Q : g_matrices) {
    const std::size_t n = Q.n;
    const Bicharacter B = validate_q(Q);
    const SqrtBicharacter c = sqrt_bicharacter(B);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const IntVec ei = oracle::unit(n, i), ej = oracle::unit(n, j);
        if (!(c(ei, ej).square() == Q.at(i, j))) ++bad;
        if (!(c(ei, ej) * c(ej, ei)).is_identity()) ++bad;
      }
    // sigma-trivial pairs: b drawn from the lattice {b : sigma(a, b) = 1}
    for (int k = 0; k < 200; ++k) {
      IntVec a(n);
      for (auto& x : a) x = oracle::uniform(rng, -3, 3);
      std::vector<IntVec> rows;
      std::vector<Int> moduli;
      for (const auto& E : B.exponents.free) {
        rows.push_back(a * E);
        moduli.push_back(0);
      }
      if (Q.group.has_torsion()) {
        rows.push_back(a * B.exponents.torsion);
        moduli.push_back(Q.group.torsion_order);
      }
      IntVec b = rows.empty() ? random_combination(rng, full_lattice(n), 3)
                              : random_combination(rng, kernel_with_moduli(IntMatrix::from_rows(rows, n), moduli), 3);
      if (!oracle::direct_sigma(Q, a, b).is_identity()) ++bad;
      if (!c(a, b).is_identity()) ++bad;
      ++sampled;
    }
    // c = 1 on S_w x Gamma_w, on basis vectors (c is bilinear)
    for (const auto& w : all_subsets(n)) {
      const Lattice S = radical(B, w);
      for (const auto& alpha : S.basis_rows())
        for (auto j : w.complement_elements())
          if (!c(alpha, oracle::unit(n, j)).is_identity()) ++bad;
    }
    const AdaptedCocycle ad = adapted_cocycle(B);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const IntVec ei = oracle::unit(n, i), ej = oracle::unit(n, j);
        if (!(ad.cocycle(ei, ej) * ad.cocycle(ej, ei).inverse() == Q.at(i, j))) ++bad;
      }
    for (const auto& alpha : ad.radical.basis_rows())
      for (std::size_t j = 0; j < n; ++j)
        if (!ad.cocycle(alpha, oracle::unit(n, j)).is_identity()) ++bad;
  }
  return {bad == 0, std::to_string(g_matrices.size()) + " matrices, " + std::to_string(sampled) +
                        " sigma-trivial pairs, " + std::to_string(bad) + " failures"};
}

Outcome compatibility() {
  std::size_t pairs = 0, violations = 0;
  auto run = [&](const QMatrix& Q) {
    auto r = compatibility_check(Q);
    pairs += r.pairs_checked;
    violations += r.violations.size();
  };
  for (const auto& f : kFixtures) run(load_problem(fixture(f)).q);
  oracle::Rng rng(6001);
  const Int torsions[] = {1, 3, 5};
  for (int k = 0; k < 50; ++k)
    run(oracle::random_q(rng, static_cast<std::size_t>(oracle::uniform(rng, 2, 4)),
                         static_cast<std::size_t>(oracle::uniform(rng, 0, 2)), torsions[oracle::uniform(rng, 0, 2)]));
  return {violations == 0, std::to_string(kFixtures.size()) + " fixtures + 50 random matrices, " +
                               std::to_string(pairs) + " pairs, " + std::to_string(violations) + " violations"};
}

Outcome fiber_suite() {
  oracle::Rng rng(7001);
  const Int torsions[] = {1, 3, 5};
  int orbit_bad = 0, separations = 0;
  for (int k = 0; k < 200; ++k) {
    QMatrix Q = oracle::random_q(rng, static_cast<std::size_t>(oracle::uniform(rng, 2, 4)),
                                 static_cast<std::size_t>(oracle::uniform(rng, 1, 2)), torsions[oracle::uniform(rng, 0, 2)]);
    auto r = oracle::orbit_trial(rng, Q);
    if (!r.soundness || !r.separation) ++orbit_bad;
    if (r.separation_applicable) ++separations;
  }

  int relation_bad = 0, template_bad = 0, related = 0;
  for (int k = 0; k < 100; ++k) {
    QMatrix Q = oracle::random_q(rng, 3, 1, 3, 2);
    const Bicharacter B = validate_q(Q);
    const Subset w(3, static_cast<std::uint64_t>(oracle::uniform(rng, 0, 7)));
    const Stratum s = make_stratum(B, w);
    std::vector<Rational> base(3);
    for (std::size_t i = 0; i < 3; ++i)
      if (!w.contains(i)) base[i] = Rational(oracle::uniform(rng, 1, 5), oracle::uniform(rng, 1, 3));
    auto move = [&](const std::vector<Rational>& p) {
      std::vector<Rational> out = p;
      if (oracle::uniform(rng, 0, 2) == 0) {
        for (std::size_t i = 0; i < 3; ++i)
          if (!w.contains(i)) out[i] *= oracle::uniform(rng, 1, 3);
        return out;
      }
      const IntVec h = oracle::random_annihilator(rng, s.S_w, w, 1);
      const Rational r(oracle::uniform(rng, 1, 3), oracle::uniform(rng, 1, 3));
      for (std::size_t i = 0; i < 3; ++i)
        if (!w.contains(i)) out[i] *= rational_pow(r, h[i]);
      return out;
    };
    const auto a = move(base), b = move(base), c = move(base);
    auto eq = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
      return fiber_check(B, x, y).equivalent;
    };
    if (!eq(a, a) || eq(a, b) != eq(b, a)) ++relation_bad;
    if (eq(a, b) && eq(b, c) && !eq(a, c)) ++relation_bad;
    if (eq(a, b)) {
      ++related;
      const IdealPresentation pa = psi_generators(s, Q.group, numeric_point(a));
      const IdealPresentation pb = psi_generators(s, Q.group, numeric_point(b));
      for (std::size_t i = 0; i < pa.binomials.size(); ++i)
        if (!(normalize_binomial(pa.binomials[i]) == normalize_binomial(pb.binomials[i]))) ++template_bad;
    }
  }
  const bool ok = orbit_bad == 0 && relation_bad == 0 && template_bad == 0 && separations > 0 && related > 0;
  return {ok, "200 orbit trials (" + std::to_string(separations) + " separations) " + std::to_string(orbit_bad) +
                  " failures; 100 triples " + std::to_string(relation_bad) + " relation failures; " +
                  std::to_string(related) + " equivalent pairs, " + std::to_string(template_bad) +
                  " template mismatches"};
}

Outcome feasibility() {
  std::string detail;
  bool ok = true;
  for (std::size_t n = 2; n <= 3; ++n) {
    const QMatrix Q = uniparameter_q(n, 2);
    auto r = bichar_feasibility(validate_q(Q));
    const bool verified = r.feasible && r.witness && oracle::verify_witness(Q, *r.witness);
    ok = ok && verified;
    detail += "n=" + std::to_string(n) + (verified ? " witness verified; " : " no witness; ");
  }
  auto r4 = bichar_feasibility(validate_q(uniparameter_q(4, 2)));
  const bool four = !r4.feasible && r4.candidates_examined <= 4096 &&
                    r4.verdict.find("consistent with") != std::string::npos;
  ok = ok && four;
  detail += "n=4 " + std::string(r4.feasible ? "feasible" : "infeasible") + " after " +
            std::to_string(r4.candidates_examined) + " candidates";
  return {ok, detail};
}

Outcome twist() {
  bool ok = true;
  ProblemSpec P = load_problem(fixture("graded_z2.json"));
  const ScalarGroup& G = P.group;
  QMatrix expected(G, 3);
  expected.set_pair(0, 1, GroupElement(G, v({1})));
  expected.set_pair(0, 2, GroupElement(G, v({1})));
  expected.set_pair(1, 2, GroupElement(G, v({-1})));
  AmbientAnalysis amb = ambient_analysis(*P.graded);
  ok = ok && amb.pullback.q_tilde == expected;
  auto direct = stratify(expected);
  ok = ok && amb.strata.size() == 8 && direct.size() == 8;
  for (std::size_t k = 0; k < direct.size() && ok; ++k) ok = amb.strata[k].S_w == direct[k].S_w;

  auto commutative = stratify(QMatrix(ScalarGroup(1, 1), 3));
  auto is_commutative = [&](const GradedPresentation& gp) {
    AmbientAnalysis a = ambient_analysis(gp);
    if (a.strata.size() != commutative.size()) return false;
    for (std::size_t k = 0; k < commutative.size(); ++k)
      if (!(a.strata[k].S_w == commutative[k].S_w)) return false;
    return true;
  };
  const bool sym = is_commutative(*load_problem(fixture("graded_symmetric.json")).graded);
  GradedPresentation trivial = *P.graded;
  trivial.cocycle = BilinearMap(G, 2);
  const bool triv = is_commutative(trivial);
  ok = ok && sym && triv;
  return {ok, std::string("q~ = (g, g, g^-1) ") + (amb.pullback.q_tilde == expected ? "matches" : "differs") +
                  ", 8 strata; symmetric " + (sym ? "commutative" : "NOT commutative") + ", trivial " +
                  (triv ? "commutative" : "NOT commutative")};
}

Outcome determinism() {
  int bad = 0;
  for (const auto& f : kFixtures) {
    AnalysisReport a = analyze_problem(load_problem(fixture(f)));
    AnalysisReport b = analyze_problem(load_problem(fixture(f)));
    const std::string ja = report_to_json(a).dump(2);
    if (report_to_text(a) != report_to_text(b) || ja != report_to_json(b).dump(2)) ++bad;
    AnalysisReport back = report_from_json(parse_json_text(ja, f));
    if (!(back == a) || report_to_json(back).dump(2) != ja) ++bad;
  }
  return {bad == 0, std::to_string(kFixtures.size()) + " fixtures, " + std::to_string(bad) + " failures"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 non-closed fixture radical and perp", nonclosed_fixture},
      {"2 one-parameter non-root golden suite", nonroot_suite},
      {"3 one-parameter root-of-unity golden suite", root_of_unity_suite},
      {"4 radical vs box enumeration", radical_oracle},
      {"5 cocycle properties", cocycle_properties},
      {"6 stratum compatibility", compatibility},
      {"7 fiber and orbit suite", fiber_suite},
      {"8 q = -1 feasibility", feasibility},
      {"9 graded twist pullback", twist},
      {"10 determinism and JSON round-trip", determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s  %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
