#pragma once

// Problem files (JSON). Indices are 1-based.
//
//   {"n": 3,
//    "group": {"free_rank": 1, "torsion_order": 1, "char2": false, "declared_char": null},
//    "q": [{"i": 2, "j": 3, "free": [2], "torsion": 0}]}
//
// or instead of "q" one of
//   "uniparameter": {"t": 0, "b": [[...]]}            (group: Z when t == 0, else Z/t)
//   "graded": {"m": 2, "degrees": [[1,0],...], "cocycle": {"free": [E_1, ...], "torsion": E_t}}
//
// Unlisted off-diagonal q entries are the identity; q_ji defaults to q_ij^{-1}.
// Integers may be JSON numbers or decimal strings.

#include "qaffine/bicharacter.hpp"
#include "qaffine/graded_twist.hpp"
#include "qaffine/integer.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/scalars.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qaffine {

using Json = nlohmann::ordered_json;

inline Json int_to_json(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(x));
  return Json(to_string(x));
}

inline Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<std::uint64_t>()) : Int(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (k == s.size()) throw InputError(where + ": malformed integer '" + s + "'");
    for (std::size_t i = k; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw InputError(where + ": malformed integer '" + s + "'");
    return Int(s);
  }
  throw InputError(where + ": expected an integer");
}

inline std::size_t count_from_json(const Json& j, const std::string& where) {
  Int v = int_from_json(j, where);
  if (v < 0 || v > 1000000) throw InputError(where + ": expected a small non-negative count");
  return static_cast<std::size_t>(v);
}

inline Json vec_to_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

inline IntVec vec_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an integer array");
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(int_from_json(j[i], where));
  return v;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec_to_json(m.row(r)));
  return a;
}

inline IntMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows) throw InputError(where + ": expected " + std::to_string(rows) + " rows");
  std::vector<IntVec> out;
  for (const auto& r : j) {
    IntVec v = vec_from_json(r, where);
    if (v.size() != cols) throw InputError(where + ": expected rows of length " + std::to_string(cols));
    out.push_back(std::move(v));
  }
  return IntMatrix::from_rows(out, cols);
}

inline void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw InputError(where + ": unknown key '" + key + "'");
}

enum class ProblemKind { explicit_q, uniparameter, graded };

inline const char* kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::explicit_q: return "q";
    case ProblemKind::uniparameter: return "uniparameter";
    case ProblemKind::graded: return "graded";
  }
  return "";
}

struct ProblemSpec {
  std::size_t n = 0;
  ProblemKind kind = ProblemKind::explicit_q;
  ScalarGroup group;
  QMatrix q;  // for graded input: the pulled-back q~
  std::optional<Int> t;
  std::optional<GradedPresentation> graded;
  Json source;
};

inline ScalarGroup group_from_json(const Json& g, bool force_char2) {
  check_keys(g, {"free_rank", "torsion_order", "char2", "declared_char"}, "group");
  std::size_t a = g.contains("free_rank") ? count_from_json(g["free_rank"], "group.free_rank") : 0;
  Int m = 1;
  if (g.contains("torsion_order")) {
    if (g["torsion_order"].is_array())
      throw InputError("group.torsion_order: torsion must be cyclic, give a single order");
    m = int_from_json(g["torsion_order"], "group.torsion_order");
  }
  bool char2 = force_char2;
  if (g.contains("char2")) {
    if (!g["char2"].is_boolean()) throw InputError("group.char2: expected a boolean");
    char2 = char2 || g["char2"].get<bool>();
  }
  std::optional<Int> declared;
  if (g.contains("declared_char") && !g["declared_char"].is_null()) {
    declared = int_from_json(g["declared_char"], "group.declared_char");
    if (*declared < 2 || prime_divisors(*declared).size() != 1 || prime_divisors(*declared)[0] != *declared)
      throw InputError("group.declared_char: must be a prime");
  }
  return ScalarGroup(a, m, char2, declared);
}

inline GroupElement element_from_json(const ScalarGroup& G, const Json& e, const std::string& where) {
  IntVec free(G.free_rank);
  Int tor = 0;
  if (e.contains("free")) {
    free = vec_from_json(e["free"], where + ".free");
    if (free.size() != G.free_rank)
      throw InputError(where + ".free: expected " + std::to_string(G.free_rank) + " exponents");
  }
  if (e.contains("torsion")) tor = int_from_json(e["torsion"], where + ".torsion");
  return GroupElement(G, std::move(free), tor);
}

inline BilinearMap bilinear_from_json(const ScalarGroup& G, std::size_t m, const Json& c) {
  check_keys(c, {"free", "torsion"}, "graded.cocycle");
  BilinearMap B(G, m);
  if (c.contains("free")) {
    if (!c["free"].is_array() || c["free"].size() != G.free_rank)
      throw InputError("graded.cocycle.free: expected one m x m matrix per free generator");
    for (std::size_t l = 0; l < G.free_rank; ++l)
      B.free[l] = matrix_from_json(c["free"][l], m, m, "graded.cocycle.free");
  }
  if (c.contains("torsion")) {
    IntMatrix T = matrix_from_json(c["torsion"], m, m, "graded.cocycle.torsion");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) T(i, j) = mod_floor(T(i, j), G.torsion_order);
    B.torsion = std::move(T);
  }
  return B;
}

inline ProblemSpec parse_problem(const Json& doc, bool force_char2 = false) {
  check_keys(doc, {"n", "group", "q", "uniparameter", "graded", "comment"}, "problem");
  if (!doc.contains("n")) throw InputError("problem: missing 'n'");
  ProblemSpec P;
  P.source = doc;
  P.n = count_from_json(doc["n"], "n");
  if (P.n < 1 || P.n > 16) throw InputError("n must lie in 1..16");
  const int blocks = int(doc.contains("q")) + int(doc.contains("uniparameter")) + int(doc.contains("graded"));
  if (blocks != 1) throw InputError("problem: give exactly one of 'q', 'uniparameter', 'graded'");
  const Json group_doc = doc.contains("group") ? doc["group"] : Json::object();

  if (doc.contains("uniparameter")) {
    P.kind = ProblemKind::uniparameter;
    const Json& u = doc["uniparameter"];
    check_keys(u, {"t", "b"}, "uniparameter");
    P.t = u.contains("t") ? int_from_json(u["t"], "uniparameter.t") : Int(0);
    if (*P.t < 0) throw InputError("uniparameter.t: must be >= 0");
    ScalarGroup hint = group_from_json(group_doc, force_char2);
    if (group_doc.contains("free_rank") || group_doc.contains("torsion_order"))
      throw InputError("group: the uniparameter shortcut fixes the scalar group, give only char2/declared_char");
    std::optional<IntMatrix> b;
    if (u.contains("b")) b = matrix_from_json(u["b"], P.n, P.n, "uniparameter.b");
    P.q = uniparameter_q(P.n, *P.t, b, hint.char_k_is_two, hint.declared_char);
    P.group = P.q.group;
    return P;
  }

  P.group = group_from_json(group_doc, force_char2);

  if (doc.contains("graded")) {
    P.kind = ProblemKind::graded;
    const Json& g = doc["graded"];
    check_keys(g, {"m", "degrees", "cocycle"}, "graded");
    GradedPresentation gp;
    gp.n = P.n;
    gp.grading_rank = g.contains("m") ? count_from_json(g["m"], "graded.m") : 0;
    if (!g.contains("degrees") || !g["degrees"].is_array() || g["degrees"].size() != P.n)
      throw InputError("graded.degrees: expected n degree vectors");
    for (const auto& d : g["degrees"]) {
      IntVec v = vec_from_json(d, "graded.degrees");
      if (v.size() != gp.grading_rank) throw InputError("graded.degrees: every degree must have length m");
      gp.degrees.push_back(std::move(v));
    }
    gp.cocycle = bilinear_from_json(P.group, gp.grading_rank, g.contains("cocycle") ? g["cocycle"] : Json::object());
    P.q = pullback_bicharacter(gp).q_tilde;
    P.graded = std::move(gp);
    return P;
  }

  P.kind = ProblemKind::explicit_q;
  const Json& entries = doc["q"];
  if (!entries.is_array()) throw InputError("q: expected an array of entries");
  QMatrix Q(P.group, P.n);
  std::map<std::pair<std::size_t, std::size_t>, bool> given;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Json& e = entries[k];
    const std::string where = "q[" + std::to_string(k) + "]";
    check_keys(e, {"i", "j", "free", "torsion"}, where);
    if (!e.contains("i") || !e.contains("j")) throw InputError(where + ": missing 'i' or 'j'");
    std::size_t i = count_from_json(e["i"], where + ".i"), j = count_from_json(e["j"], where + ".j");
    if (i < 1 || j < 1 || i > P.n || j > P.n) throw InputError(where + ": index out of range 1..n");
    if (given.count({i - 1, j - 1})) throw InputError(where + ": duplicate entry");
    given[{i - 1, j - 1}] = true;
    Q.at(i - 1, j - 1) = element_from_json(P.group, e, where);
  }
  for (const auto& [ij, _] : given) {
    auto [i, j] = ij;
    if (i != j && !given.count({j, i})) Q.at(j, i) = Q.at(i, j).inverse();
  }
  P.q = std::move(Q);
  return P;
}

inline Json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(where + ": not valid JSON (" + std::string(e.what()) + ")");
  }
}

inline ProblemSpec load_problem(const std::string& path, bool force_char2 = false) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(parse_json_text(ss.str(), path), force_char2);
}

}  // namespace qaffine
