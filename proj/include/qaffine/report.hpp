#pragma once

// Full analysis of a problem and its text / JSON forms. The JSON form carries
// enough structure to be read back into an identical AnalysisReport.

#include "qaffine/bicharacter.hpp"
#include "qaffine/graded_twist.hpp"
#include "qaffine/integer.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/problem.hpp"
#include "qaffine/quotient_map.hpp"
#include "qaffine/render.hpp"
#include "qaffine/scalars.hpp"
#include "qaffine/strata.hpp"
#include "qaffine/subset.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qaffine {

struct StratumRecord {
  Subset w;
  Lattice S_w;
  std::size_t gamma_w_rank = 0;
  std::size_t fiber_dim = 0;
  std::size_t image_dim = 0;
  QuotientShape shape;
  std::size_t perp_dimension = 0;
  Int perp_components = 1;
  std::vector<Int> torsion_primes;
  bool char_contradiction = false;
  bool scalar_free = true;  // c(a, e_j) == 1 for a in the basis of S_w, j not in w
  IdealPresentation psi_localized;
  std::optional<IdealPresentation> psi_affine;

  friend bool operator==(const StratumRecord&, const StratumRecord&) = default;
};

struct AnalysisReport {
  Json input;
  std::size_t n = 0;
  std::string kind;
  ScalarGroup group;
  QMatrix q;
  bool theorem_applies = false;
  std::string hypothesis_reason;
  std::optional<Int> declared_char;
  bool any_contradiction = false;
  bool compatibility_holds = true;
  std::size_t compatibility_pairs = 0;
  std::optional<SqrtBicharacter> sqrt_cocycle;
  AdaptedCocycle adapted;
  std::vector<StratumRecord> strata;
  std::optional<BilinearMap> c_tilde;
  std::optional<std::string> twist_annotation;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Throws HypothesisError when the quotient description does not apply and
/// InputError for characteristic 2 with roots of unity of even order.
inline void require_theorem(const ScalarGroup& G, const std::string& reason) {
  if (G.char_k_is_two && G.torsion_order % 2 == 0)
    throw InputError("inconsistent input: characteristic 2 admits no roots of unity of even order (torsion order " +
                     to_string(G.torsion_order) + ")");
  if (minus_one_in_group(G)) throw HypothesisError(reason);
}

inline AnalysisReport analyze_q(const QMatrix& Q, const Json& input, const std::string& kind) {
  AnalysisReport r;
  r.input = input;
  r.n = Q.n;
  r.kind = kind;
  r.group = Q.group;
  r.q = Q;
  const Bicharacter B = validate_q(Q);
  HypothesisReport hyp = hypothesis_report(Q);
  r.theorem_applies = hyp.theorem_applies;
  r.hypothesis_reason = hyp.reason;
  r.declared_char = hyp.declared_char;
  r.any_contradiction = hyp.any_contradiction;
  require_theorem(Q.group, "the quotient description needs -1 outside the subgroup generated by the q_ij or char k = 2: " +
                               hyp.reason);
  CompatibilityVerdict compat = compatibility_check(Q);
  r.compatibility_holds = compat.holds;
  r.compatibility_pairs = compat.pairs_checked;
  r.sqrt_cocycle = sqrt_bicharacter(B);
  r.adapted = adapted_cocycle(B);

  const auto subsets = all_subsets(Q.n);
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    const Stratum s = make_stratum(B, subsets[k]);
    StratumRecord rec;
    rec.w = s.w;
    rec.S_w = s.S_w;
    rec.gamma_w_rank = s.gamma_w_rank;
    rec.fiber_dim = s.fiber_dim;
    rec.image_dim = s.image_dim;
    rec.shape = s.quotient_shape;
    rec.perp_dimension = s.perp.dimension;
    rec.perp_components = s.perp.component_count;
    rec.torsion_primes = hyp.strata[k].torsion_primes;
    rec.char_contradiction = hyp.strata[k].char_contradiction;
    for (const auto& a : s.S_w.basis_rows())
      for (auto j : s.w.complement_elements()) {
        IntVec e(Q.n);
        e[j] = 1;
        if (!(*r.sqrt_cocycle)(a, e).is_identity()) rec.scalar_free = false;
      }
    rec.psi_localized = psi_generators(s, Q.group, symbolic_point(s.w));
    rec.psi_affine = affine_form(*r.sqrt_cocycle, rec.psi_localized);
    r.strata.push_back(std::move(rec));
  }
  return r;
}

inline AnalysisReport analyze_problem(const ProblemSpec& P) {
  if (P.kind == ProblemKind::graded) {
    TwistVerdict v = twist_hypothesis_check(*P.graded);
    if (!v.passes) {
      require_theorem(P.graded->cocycle.group, "graded twist refused: " + v.reason);
      throw HypothesisError("graded twist refused: " + v.reason);
    }
    AmbientAnalysis amb = ambient_analysis(*P.graded);
    AnalysisReport r = analyze_q(amb.pullback.q_tilde, P.source, kind_name(P.kind));
    r.c_tilde = amb.pullback.c_tilde;
    r.twist_annotation = amb.annotation;
    return r;
  }
  return analyze_q(P.q, P.source, kind_name(P.kind));
}

// ---- JSON ----------------------------------------------------------------

inline Json group_to_json(const ScalarGroup& G) {
  Json j;
  j["free_rank"] = G.free_rank;
  j["torsion_order"] = int_to_json(G.torsion_order);
  j["char2"] = G.char_k_is_two;
  j["declared_char"] = G.declared_char ? int_to_json(*G.declared_char) : Json();
  return j;
}

inline Json element_to_json(const GroupElement& g) {
  return Json{{"free", vec_to_json(g.free_exponents())}, {"torsion", int_to_json(g.torsion_exponent())}};
}

inline Json half_to_json(const HalfElement& h) {
  return Json{{"doubled_free", vec_to_json(h.doubled_free_exponents())}, {"torsion", int_to_json(h.torsion_exponent())}};
}

inline HalfElement half_from_json(const ScalarGroup& G, const Json& j) {
  return HalfElement(G, vec_from_json(j.at("doubled_free"), "doubled_free"), int_from_json(j.at("torsion"), "torsion"));
}

inline const char* basis_name(MonomialBasis b) {
  switch (b) {
    case MonomialBasis::twisted: return "twisted";
    case MonomialBasis::ordered: return "ordered";
    case MonomialBasis::commutative: return "commutative";
  }
  return "";
}

inline MonomialBasis basis_from_name(const std::string& s) {
  if (s == "twisted") return MonomialBasis::twisted;
  if (s == "ordered") return MonomialBasis::ordered;
  if (s == "commutative") return MonomialBasis::commutative;
  throw InputError("unknown monomial basis '" + s + "'");
}

inline Json term_to_json(const TwistedTerm& t) {
  return Json{{"rational", to_string(t.coefficient.rational())},
              {"scalar", half_to_json(t.coefficient.scalar_part())},
              {"lambda", vec_to_json(t.coefficient.lambda_exponents())},
              {"exponent", vec_to_json(t.exponent)},
              {"basis", basis_name(t.basis)}};
}

inline TwistedTerm term_from_json(const ScalarGroup& G, const Json& j) {
  SymbolicCoefficient k(parse_rational(j.at("rational").get<std::string>()), half_from_json(G, j.at("scalar")),
                        vec_from_json(j.at("lambda"), "lambda"));
  return {std::move(k), vec_from_json(j.at("exponent"), "exponent"), basis_from_name(j.at("basis").get<std::string>())};
}

inline Json index_list(const std::vector<std::size_t>& zero_based) {
  Json a = Json::array();
  for (auto i : zero_based) a.push_back(i + 1);
  return a;
}

inline std::vector<std::size_t> index_list_from_json(const Json& j) {
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(x.get<std::size_t>() - 1);
  return out;
}

inline Json presentation_to_json(const IdealPresentation& ip) {
  Json j;
  j["form"] = form_name(ip.form);
  j["w"] = index_list(ip.w.elements());
  j["monomials"] = index_list(ip.monomial_generators);
  Json bs = Json::array();
  for (const auto& b : ip.binomials)
    bs.push_back(Json{{"text", render_binomial(b)}, {"lhs", term_to_json(b.lhs)}, {"rhs", term_to_json(b.rhs)}});
  j["binomials"] = bs;
  j["saturate_by"] = index_list(ip.saturate_by);
  j["text"] = render_presentation(ip);
  return j;
}

inline IdealPresentation presentation_from_json(const ScalarGroup& G, std::size_t n, const Json& j) {
  IdealPresentation ip;
  ip.form = j.at("form").get<std::string>() == "localized" ? FormTag::localized : FormTag::affine_saturation;
  ip.w = Subset::from_elements(n, index_list_from_json(j.at("w")));
  ip.monomial_generators = index_list_from_json(j.at("monomials"));
  for (const auto& b : j.at("binomials")) ip.binomials.push_back({term_from_json(G, b.at("lhs")), term_from_json(G, b.at("rhs"))});
  ip.saturate_by = index_list_from_json(j.at("saturate_by"));
  return ip;
}

inline Json lattice_to_json(const Lattice& L) { return matrix_to_json(L.basis()); }

inline Lattice lattice_from_json(const Json& j, std::size_t n) {
  std::vector<IntVec> rows;
  for (const auto& r : j) rows.push_back(vec_from_json(r, "lattice"));
  return hermite_basis(rows, n);
}

inline Json bilinear_to_json(const BilinearMap& B) {
  Json f = Json::array();
  for (const auto& E : B.free) f.push_back(matrix_to_json(E));
  return Json{{"free", f}, {"torsion", matrix_to_json(B.torsion)}};
}

inline BilinearMap bilinear_map_from_json(const ScalarGroup& G, std::size_t n, const Json& j) {
  BilinearMap B(G, n);
  for (std::size_t l = 0; l < G.free_rank; ++l) B.free[l] = matrix_from_json(j.at("free").at(l), n, n, "free");
  B.torsion = matrix_from_json(j.at("torsion"), n, n, "torsion");
  return B;
}

inline Json report_to_json(const AnalysisReport& r) {
  Json j;
  j["input"] = r.input;
  j["n"] = r.n;
  j["kind"] = r.kind;
  j["group"] = group_to_json(r.group);
  Json q = Json::array();
  for (std::size_t i = 0; i < r.n; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < r.n; ++k) row.push_back(element_to_json(r.q.at(i, k)));
    q.push_back(row);
  }
  j["q"] = q;
  j["hypothesis"] = Json{{"theorem_applies", r.theorem_applies},
                         {"reason", r.hypothesis_reason},
                         {"declared_char", r.declared_char ? int_to_json(*r.declared_char) : Json()},
                         {"char_contradiction", r.any_contradiction}};
  j["compatibility"] = Json{{"holds", r.compatibility_holds}, {"pairs_checked", r.compatibility_pairs}};
  if (r.sqrt_cocycle) {
    Json f = Json::array();
    for (const auto& E : r.sqrt_cocycle->doubled_free) f.push_back(matrix_to_json(E));
    j["sqrt_cocycle"] = Json{{"doubled_free", f}, {"torsion", matrix_to_json(r.sqrt_cocycle->torsion)}};
  } else {
    j["sqrt_cocycle"] = Json();
  }
  Json orders = Json::array();
  for (const auto& m : r.adapted.orders) orders.push_back(int_to_json(m));
  j["adapted_cocycle"] = Json{{"radical", lattice_to_json(r.adapted.radical)},
                              {"gammas", matrix_to_json(r.adapted.gammas)},
                              {"orders", orders},
                              {"cocycle", bilinear_to_json(r.adapted.cocycle)}};
  Json strata = Json::array();
  for (const auto& s : r.strata) {
    Json tp = Json::array();
    for (const auto& p : s.torsion_primes) tp.push_back(int_to_json(p));
    Json tor = Json::array();
    for (const auto& d : s.shape.torsion_orders) tor.push_back(int_to_json(d));
    strata.push_back(Json{{"w", index_list(s.w.elements())},
                          {"S_w", lattice_to_json(s.S_w)},
                          {"gamma_w_rank", s.gamma_w_rank},
                          {"fiber_dim", s.fiber_dim},
                          {"image_dim", s.image_dim},
                          {"quotient_shape", Json{{"free_rank", s.shape.free_rank}, {"torsion_orders", tor}}},
                          {"perp", Json{{"dimension", s.perp_dimension}, {"components", int_to_json(s.perp_components)}}},
                          {"torsion_primes", tp},
                          {"char_contradiction", s.char_contradiction},
                          {"scalar_free", s.scalar_free},
                          {"psi_localized", presentation_to_json(s.psi_localized)},
                          {"psi_affine", s.psi_affine ? presentation_to_json(*s.psi_affine) : Json()}});
  }
  j["strata"] = strata;
  if (r.c_tilde) j["pullback_cocycle"] = bilinear_to_json(*r.c_tilde);
  if (r.twist_annotation) j["twist_annotation"] = *r.twist_annotation;
  return j;
}

inline AnalysisReport report_from_json(const Json& j) {
  try {
    AnalysisReport r;
    r.input = j.at("input");
    r.n = j.at("n").get<std::size_t>();
    r.kind = j.at("kind").get<std::string>();
    const Json& g = j.at("group");
    r.group = ScalarGroup(g.at("free_rank").get<std::size_t>(), int_from_json(g.at("torsion_order"), "torsion_order"),
                          g.at("char2").get<bool>(),
                          g.at("declared_char").is_null()
                              ? std::optional<Int>()
                              : std::optional<Int>(int_from_json(g.at("declared_char"), "declared_char")));
    r.q = QMatrix(r.group, r.n);
    for (std::size_t i = 0; i < r.n; ++i)
      for (std::size_t k = 0; k < r.n; ++k) {
        const Json& e = j.at("q").at(i).at(k);
        r.q.at(i, k) = GroupElement(r.group, vec_from_json(e.at("free"), "free"), int_from_json(e.at("torsion"), "torsion"));
      }
    const Json& h = j.at("hypothesis");
    r.theorem_applies = h.at("theorem_applies").get<bool>();
    r.hypothesis_reason = h.at("reason").get<std::string>();
    if (!h.at("declared_char").is_null()) r.declared_char = int_from_json(h.at("declared_char"), "declared_char");
    r.any_contradiction = h.at("char_contradiction").get<bool>();
    r.compatibility_holds = j.at("compatibility").at("holds").get<bool>();
    r.compatibility_pairs = j.at("compatibility").at("pairs_checked").get<std::size_t>();
    if (!j.at("sqrt_cocycle").is_null()) {
      SqrtBicharacter c{r.group, r.n, {}, IntMatrix(r.n, r.n)};
      for (const auto& E : j.at("sqrt_cocycle").at("doubled_free"))
        c.doubled_free.push_back(matrix_from_json(E, r.n, r.n, "doubled_free"));
      c.torsion = matrix_from_json(j.at("sqrt_cocycle").at("torsion"), r.n, r.n, "torsion");
      r.sqrt_cocycle = std::move(c);
    }
    const Json& a = j.at("adapted_cocycle");
    r.adapted.radical = lattice_from_json(a.at("radical"), r.n);
    r.adapted.gammas = matrix_from_json(a.at("gammas"), r.n, r.n, "gammas");
    for (const auto& m : a.at("orders")) r.adapted.orders.push_back(int_from_json(m, "orders"));
    r.adapted.cocycle = bilinear_map_from_json(r.group, r.n, a.at("cocycle"));
    for (const auto& s : j.at("strata")) {
      StratumRecord rec;
      rec.w = Subset::from_elements(r.n, index_list_from_json(s.at("w")));
      rec.S_w = lattice_from_json(s.at("S_w"), r.n);
      rec.gamma_w_rank = s.at("gamma_w_rank").get<std::size_t>();
      rec.fiber_dim = s.at("fiber_dim").get<std::size_t>();
      rec.image_dim = s.at("image_dim").get<std::size_t>();
      rec.shape.free_rank = s.at("quotient_shape").at("free_rank").get<std::size_t>();
      for (const auto& d : s.at("quotient_shape").at("torsion_orders"))
        rec.shape.torsion_orders.push_back(int_from_json(d, "torsion_orders"));
      rec.perp_dimension = s.at("perp").at("dimension").get<std::size_t>();
      rec.perp_components = int_from_json(s.at("perp").at("components"), "components");
      for (const auto& p : s.at("torsion_primes")) rec.torsion_primes.push_back(int_from_json(p, "torsion_primes"));
      rec.char_contradiction = s.at("char_contradiction").get<bool>();
      rec.scalar_free = s.at("scalar_free").get<bool>();
      rec.psi_localized = presentation_from_json(r.group, r.n, s.at("psi_localized"));
      if (!s.at("psi_affine").is_null()) rec.psi_affine = presentation_from_json(r.group, r.n, s.at("psi_affine"));
      r.strata.push_back(std::move(rec));
    }
    if (j.contains("pullback_cocycle")) r.c_tilde = bilinear_map_from_json(r.group, r.n, j.at("pullback_cocycle"));
    if (j.contains("twist_annotation")) r.twist_annotation = j.at("twist_annotation").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

// ---- text ----------------------------------------------------------------

inline std::string render_group(const ScalarGroup& G) {
  std::string s = "Z^" + std::to_string(G.free_rank);
  if (G.has_torsion()) s += " + Z/" + to_string(G.torsion_order);
  if (G.char_k_is_two) s += ", char k = 2";
  else if (G.declared_char) s += ", char k = " + to_string(*G.declared_char);
  return s;
}

inline std::string render_lattice(const Lattice& L) {
  if (L.rank() == 0) return "0";
  std::string s;
  for (const auto& r : L.basis_rows()) {
    if (!s.empty()) s += " + ";
    s += "Z" + render_vector(r);
  }
  return s;
}

inline std::string render_shape(const QuotientShape& q) {
  std::string s = "Z^" + std::to_string(q.free_rank);
  for (const auto& d : q.torsion_orders) s += " + Z/" + to_string(d);
  return s;
}

inline std::string report_to_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "n = " << r.n << ", input " << r.kind << ", scalar group " << render_group(r.group) << "\n";
  os << "q exponents (free...;torsion):\n";
  for (std::size_t i = 0; i < r.n; ++i) {
    os << " ";
    for (std::size_t k = 0; k < r.n; ++k) {
      const auto& g = r.q.at(i, k);
      os << " " << render_vector(g.free_exponents()) << ";" << to_string(g.torsion_exponent());
    }
    os << "\n";
  }
  os << "hypothesis: " << (r.theorem_applies ? "applies" : "does not apply") << " (" << r.hypothesis_reason << ")\n";
  if (r.any_contradiction)
    os << "characteristic contradiction: the declared characteristic divides a torsion order below, so the input is "
          "inconsistent\n";
  os << "compatibility (S_v cap Gamma_w inside S_w): " << (r.compatibility_holds ? "holds" : "VIOLATED") << " ("
     << r.compatibility_pairs << " pairs)\n";
  os << "adapted basis: S = " << render_lattice(r.adapted.radical) << ", orders";
  for (const auto& m : r.adapted.orders) os << " " << to_string(m);
  os << "\n";
  if (r.twist_annotation) os << "twist: " << *r.twist_annotation << "\n";
  for (const auto& s : r.strata) {
    os << "\nstratum w = " << s.w.str() << "\n";
    os << "  S_w = " << render_lattice(s.S_w) << "\n";
    os << "  rank Gamma_w " << s.gamma_w_rank << ", image dim " << s.image_dim << ", fiber dim " << s.fiber_dim << "\n";
    os << "  Gamma_w/S_w = " << render_shape(s.shape);
    if (!s.torsion_primes.empty()) {
      os << " (torsion primes";
      for (const auto& p : s.torsion_primes) os << " " << to_string(p);
      os << ")";
    }
    os << "\n";
    os << "  S_w^perp: dimension " << s.perp_dimension << ", components " << to_string(s.perp_components) << "\n";
    os << "  c = 1 on S_w x Gamma_w: " << (s.scalar_free ? "yes" : "NO") << "\n";
    os << "  psi localized: " << render_presentation(s.psi_localized) << "\n";
    if (s.psi_affine) os << "  psi affine:    " << render_presentation(*s.psi_affine) << "\n";
  }
  return os.str();
}

}  // namespace qaffine
