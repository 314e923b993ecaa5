#pragma once

// The parameter matrix q, the alternating bicharacter it defines on Z^n, the
// radicals S_w of its restrictions to the coordinate sublattices Gamma_w, and
// two cocycles realizing the commutation rules: the square-root bicharacter
// (needs -1 outside <q_ij>) and the basis-adapted one vanishing on S x Gamma.

#include "qaffine/integer.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/scalars.hpp"
#include "qaffine/subset.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qaffine {

/// n x n matrix of scalar-group elements.
struct QMatrix {
  ScalarGroup group;
  std::size_t n = 0;
  std::vector<GroupElement> entries;  // row-major

  QMatrix() = default;
  QMatrix(ScalarGroup g, std::size_t size)
      : group(std::move(g)), n(size), entries(size * size, GroupElement::identity(group)) {}

  GroupElement& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  const GroupElement& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  /// Sets q_ij = g and q_ji = g^{-1} (0-based, i != j).
  void set_pair(std::size_t i, std::size_t j, const GroupElement& g) {
    at(i, j) = g;
    at(j, i) = g.inverse();
  }

  friend bool operator==(const QMatrix&, const QMatrix&) = default;
};

/// The standard alternating form b(a, b) = sum_{i<j} a_i b_j - sum_{i>j} a_i b_j.
inline IntMatrix standard_alternating_form(std::size_t n) {
  IntMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = i < j ? 1 : (i > j ? -1 : 0);
  return b;
}

/// q_ij = q^{b_ij} for one parameter q: free generator when t == 0, otherwise
/// a primitive t-th root of unity.
inline QMatrix uniparameter_q(std::size_t n, const Int& t, const std::optional<IntMatrix>& b = std::nullopt,
                              bool char2 = false, std::optional<Int> declared_char = std::nullopt) {
  if (t < 0) throw InputError("uniparameter order t must be >= 0");
  const IntMatrix form = b ? *b : standard_alternating_form(n);
  if (form.rows() != n || form.cols() != n) throw InputError("uniparameter b-matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (form(i, j) != -form(j, i)) throw InputError("uniparameter b-matrix must be antisymmetric");
  ScalarGroup G = t == 0 ? ScalarGroup(1, 1, char2, declared_char) : ScalarGroup(0, t, char2, declared_char);
  QMatrix Q(G, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (t == 0)
        Q.at(i, j) = GroupElement(G, {form(i, j)});
      else
        Q.at(i, j) = GroupElement(G, {}, form(i, j));
    }
  return Q;
}

/// A Z-bilinear map Z^n x Z^n -> <q_ij>, stored as one exponent matrix per
/// free generator plus one torsion exponent matrix read mod m.
struct BilinearMap {
  ScalarGroup group;
  std::size_t n = 0;
  std::vector<IntMatrix> free;
  IntMatrix torsion;

  BilinearMap() = default;
  BilinearMap(ScalarGroup g, std::size_t size) : group(std::move(g)), n(size), torsion(size, size) {
    free.assign(group.free_rank, IntMatrix(n, n));
  }

  GroupElement operator()(const IntVec& a, const IntVec& b) const {
    if (a.size() != n || b.size() != n) throw StructuralError("bilinear map: dimension mismatch");
    IntVec fe(free.size());
    for (std::size_t l = 0; l < free.size(); ++l) fe[l] = dot(a * free[l], b);
    Int te = group.has_torsion() ? dot(a * torsion, b) : Int(0);
    return GroupElement(group, std::move(fe), te);
  }

  bool is_alternating() const {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (const auto& E : free)
          if (E(i, j) != -E(j, i)) return false;
        if (group.has_torsion() && mod_floor(torsion(i, j) + torsion(j, i), group.torsion_order) != 0) return false;
      }
    return true;
  }

  friend bool operator==(const BilinearMap&, const BilinearMap&) = default;
};

/// The alternating bicharacter sigma(a, b) = prod q_ij^{a_i b_j}.
struct Bicharacter {
  BilinearMap exponents;

  const ScalarGroup& group() const { return exponents.group; }
  std::size_t n() const { return exponents.n; }
  GroupElement operator()(const IntVec& a, const IntVec& b) const { return exponents(a, b); }
};

/// Thrown when q is not multiplicatively antisymmetric; carries the 1-based pair.
class AntisymmetryError : public InputError {
 public:
  AntisymmetryError(std::size_t i, std::size_t j, const std::string& what)
      : InputError("q is not multiplicatively antisymmetric at (" + std::to_string(i) + "," + std::to_string(j) +
                   "): " + what),
        i_(i),
        j_(j) {}
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }

 private:
  std::size_t i_, j_;
};

/// Checks q_ii = 1 and q_ji = q_ij^{-1}, then builds the exponent matrices.
inline Bicharacter validate_q(const QMatrix& Q) {
  if (Q.entries.size() != Q.n * Q.n) throw StructuralError("QMatrix: entry count does not match n");
  for (std::size_t i = 0; i < Q.n; ++i) {
    if (!(Q.at(i, i).group() == Q.group)) throw StructuralError("QMatrix: entry from a different scalar group");
    if (!Q.at(i, i).is_identity()) throw AntisymmetryError(i + 1, i + 1, "diagonal entry is not 1");
    for (std::size_t j = i + 1; j < Q.n; ++j)
      if (!(Q.at(j, i) == Q.at(i, j).inverse())) throw AntisymmetryError(i + 1, j + 1, "q_ji != q_ij^{-1}");
  }
  BilinearMap B(Q.group, Q.n);
  for (std::size_t i = 0; i < Q.n; ++i)
    for (std::size_t j = 0; j < Q.n; ++j) {
      const auto& e = Q.at(i, j);
      for (std::size_t l = 0; l < Q.group.free_rank; ++l) B.free[l](i, j) = e.free_exponents()[l];
      B.torsion(i, j) = e.torsion_exponent();
    }
  return Bicharacter{std::move(B)};
}

inline GroupElement sigma_eval(const Bicharacter& B, const IntVec& a, const IntVec& b) { return B(a, b); }

/// S_w = {a in Gamma_w : sigma(a, -) == 1 on Gamma_w}, as a lattice in Z^n
/// with the coordinates in w forced to zero.
inline Lattice radical(const Bicharacter& B, const Subset& w) {
  const std::size_t n = B.n();
  if (w.universe() != n) throw StructuralError("radical: subset universe != n");
  std::vector<IntVec> rows;
  std::vector<Int> moduli;
  for (auto i : w.elements()) {
    IntVec e(n);
    e[i] = 1;
    rows.push_back(std::move(e));
    moduli.emplace_back(0);
  }
  const auto comp = w.complement_elements();
  for (const auto& E : B.exponents.free)
    for (auto j : comp) {
      rows.push_back(E.col(j));
      moduli.emplace_back(0);
    }
  if (B.group().has_torsion())
    for (auto j : comp) {
      rows.push_back(B.exponents.torsion.col(j));
      moduli.push_back(B.group().torsion_order);
    }
  return kernel_with_moduli(IntMatrix::from_rows(rows, n), moduli);
}

/// Alternating bicharacter valued in the square-root extension.
struct SqrtBicharacter {
  ScalarGroup group;
  std::size_t n = 0;
  std::vector<IntMatrix> doubled_free;  // value exponent = entry / 2
  IntMatrix torsion;                    // already halved, read mod m

  HalfElement operator()(const IntVec& a, const IntVec& b) const {
    if (a.size() != n || b.size() != n) throw StructuralError("sqrt bicharacter: dimension mismatch");
    IntVec fe(doubled_free.size());
    for (std::size_t l = 0; l < doubled_free.size(); ++l) fe[l] = dot(a * doubled_free[l], b);
    Int te = group.has_torsion() ? dot(a * torsion, b) : Int(0);
    return HalfElement(group, std::move(fe), te);
  }

  friend bool operator==(const SqrtBicharacter&, const SqrtBicharacter&) = default;
};

/// c with c^2 = sigma and c(a,b) = 1 whenever sigma(a,b) = 1.
inline SqrtBicharacter sqrt_bicharacter(const Bicharacter& B) {
  const ScalarGroup& G = B.group();
  if (minus_one_in_group(G))
    throw HypothesisError(
        "no square-root cocycle: -1 lies in the subgroup generated by the q_ij and char k != 2");
  const Int& m = G.torsion_order;
  if (m % 2 == 0)
    throw InputError("a field of characteristic 2 has no roots of unity of even order (torsion order " +
                     to_string(m) + ")");
  SqrtBicharacter c{G, B.n(), B.exponents.free, IntMatrix(B.n(), B.n())};
  const Int half = (m + 1) / 2;
  for (std::size_t i = 0; i < B.n(); ++i)
    for (std::size_t j = 0; j < B.n(); ++j) c.torsion(i, j) = mod_floor(B.exponents.torsion(i, j) * half, m);
  return c;
}

/// Inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& M) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw StructuralError("unimodular_inverse: matrix not square");
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(M(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw StructuralError("unimodular_inverse: singular matrix");
    std::swap(a[col], a[piv]);
    Rational p = a[col][col];
    for (auto& x : a[col]) x /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a[i][n + j];
      if (boost::multiprecision::denominator(x) != 1) throw StructuralError("unimodular_inverse: not unimodular");
      inv(i, j) = boost::multiprecision::numerator(x);
    }
  return inv;
}

/// Basis gamma_1..gamma_n of Gamma with S = <m_1 gamma_1, ..., m_t gamma_t>,
/// and the bicharacter c(a, b) = prod_{i<j} p_ij^{a_i b_j} in gamma-coordinates
/// (p_ij = sigma(gamma_i, gamma_j)), expressed back in standard coordinates.
struct AdaptedCocycle {
  Lattice radical;
  IntMatrix gammas;  // row i is gamma_i
  std::vector<Int> orders;
  BilinearMap cocycle;

  friend bool operator==(const AdaptedCocycle&, const AdaptedCocycle&) = default;
};

inline AdaptedCocycle adapted_cocycle(const Bicharacter& B) {
  const std::size_t n = B.n();
  Lattice S = radical(B, Subset(n, 0));
  IntMatrix V = IntMatrix::identity(n);
  std::vector<Int> orders;
  if (S.rank() > 0) {
    SmithForm snf = smith_normal_form(S.basis());
    V = snf.V;
    for (std::size_t i = 0; i < S.rank(); ++i) orders.push_back(snf.D(i, i));
  }
  IntMatrix gammas = unimodular_inverse(V);
  const IntMatrix gammas_t = gammas.transpose();
  const IntMatrix V_t = V.transpose();

  auto upper_part = [n](const IntMatrix& P) {
    IntMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) u(i, j) = P(i, j);
    return u;
  };

  BilinearMap c(B.group(), n);
  for (std::size_t l = 0; l < B.exponents.free.size(); ++l)
    c.free[l] = V * upper_part(gammas * B.exponents.free[l] * gammas_t) * V_t;
  if (B.group().has_torsion()) {
    IntMatrix T = V * upper_part(gammas * B.exponents.torsion * gammas_t) * V_t;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) T(i, j) = mod_floor(T(i, j), B.group().torsion_order);
    c.torsion = std::move(T);
  }
  return {std::move(S), std::move(gammas), std::move(orders), std::move(c)};
}

/// Distinct primes dividing |x| (x != 0), ascending.
inline std::vector<Int> prime_divisors(Int x) {
  x = abs_int(x);
  std::vector<Int> ps;
  for (Int p = 2; p * p <= x; ++p) {
    if (x % p != 0) continue;
    ps.push_back(p);
    while (x % p == 0) x /= p;
  }
  if (x > 1) ps.push_back(x);
  return ps;
}

struct StratumHypothesis {
  Subset w;
  QuotientShape shape;  // of Gamma_w / S_w
  std::vector<Int> torsion_primes;
  bool char_contradiction = false;

  friend bool operator==(const StratumHypothesis&, const StratumHypothesis&) = default;
};

struct HypothesisReport {
  bool theorem_applies = false;
  std::string reason;
  std::optional<Int> declared_char;
  std::vector<StratumHypothesis> strata;
  bool any_contradiction = false;
};

/// Shape of Gamma_w / S_w given S_w inside Z^n.
inline QuotientShape stratum_quotient_shape(const Lattice& S_w, const Subset& w) {
  QuotientShape s = quotient_shape(S_w.ambient_rank(), S_w);
  s.free_rank -= w.size();
  return s;
}

inline HypothesisReport hypothesis_report(const QMatrix& Q, std::optional<Int> declared_char = std::nullopt) {
  Bicharacter B = validate_q(Q);
  HypothesisReport rep;
  if (!declared_char) declared_char = Q.group.declared_char;
  rep.declared_char = declared_char;
  const bool char2 = Q.group.char_k_is_two || (declared_char && *declared_char == 2);
  if (!char2 && Q.group.torsion_order % 2 == 0) {
    rep.theorem_applies = false;
    rep.reason =
        "-1 lies in the subgroup generated by the q_ij (torsion order " + to_string(Q.group.torsion_order) +
        " is even) and char k != 2; the square-root cocycle does not exist";
  } else if (char2 && Q.group.torsion_order % 2 == 0) {
    rep.theorem_applies = false;
    rep.reason = "inconsistent input: characteristic 2 admits no roots of unity of even order";
  } else {
    rep.theorem_applies = true;
    rep.reason = char2 ? "char k = 2" : "-1 is not in the subgroup generated by the q_ij";
  }
  for (const auto& w : all_subsets(Q.n)) {
    StratumHypothesis sh;
    sh.w = w;
    sh.shape = stratum_quotient_shape(radical(B, w), w);
    if (!sh.shape.torsion_orders.empty()) sh.torsion_primes = prime_divisors(sh.shape.torsion_orders.back());
    if (declared_char)
      for (const auto& p : sh.torsion_primes)
        if (p == *declared_char) sh.char_contradiction = true;
    rep.any_contradiction = rep.any_contradiction || sh.char_contradiction;
    rep.strata.push_back(std::move(sh));
  }
  return rep;
}

}  // namespace qaffine
