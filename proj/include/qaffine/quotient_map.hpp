#pragma once

// Twisted monomials x_a with x_a x_b = c(a,b) x_{a+b}, the linear relabeling
// Phi(x_a) = y_a onto the commutative side, conversion to ordered monomials
// x^a = x_1^{a_1}...x_n^{a_n}, and the ideal generators of psi(lambda).

#include "qaffine/bicharacter.hpp"
#include "qaffine/integer.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/scalars.hpp"
#include "qaffine/strata.hpp"
#include "qaffine/subset.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace qaffine {

/// Which monomial basis a term is written in.
enum class MonomialBasis {
  twisted,      // x_a in k^c Gamma
  ordered,      // x^a = x_1^{a_1} ... x_n^{a_n}
  commutative,  // y_a in k Gamma
};

struct TwistedTerm {
  SymbolicCoefficient coefficient;
  IntVec exponent;
  MonomialBasis basis = MonomialBasis::twisted;

  friend bool operator==(const TwistedTerm&, const TwistedTerm&) = default;
};

inline TwistedTerm basis_monomial(const ScalarGroup& G, const IntVec& a) {
  return {SymbolicCoefficient::one(G, a.size()), a, MonomialBasis::twisted};
}

/// x_a x_b = c(a, b) x_{a+b}.
inline TwistedTerm twisted_mul(const SqrtBicharacter& c, const TwistedTerm& s, const TwistedTerm& t) {
  if (s.basis != MonomialBasis::twisted || t.basis != MonomialBasis::twisted)
    throw StructuralError("twisted_mul: operands must be twisted basis terms");
  if (s.exponent.size() != c.n || t.exponent.size() != c.n) throw StructuralError("twisted_mul: dimension mismatch");
  IntVec e(c.n);
  for (std::size_t i = 0; i < c.n; ++i) e[i] = s.exponent[i] + t.exponent[i];
  SymbolicCoefficient k = s.coefficient * t.coefficient *
                          SymbolicCoefficient::scalar(c(s.exponent, t.exponent), s.coefficient.lambda_exponents().size());
  return {std::move(k), std::move(e), MonomialBasis::twisted};
}

/// y_a y_b = y_{a+b}.
inline TwistedTerm commutative_mul(const TwistedTerm& s, const TwistedTerm& t) {
  if (s.basis != MonomialBasis::commutative || t.basis != MonomialBasis::commutative)
    throw StructuralError("commutative_mul: operands must be commutative terms");
  IntVec e = s.exponent;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += t.exponent[i];
  return {s.coefficient * t.coefficient, std::move(e), MonomialBasis::commutative};
}

enum class PhiDirection { forward, inverse };

/// Phi(x_a) = y_a, linear; Phi^{-1}(y_a) = x_a.
inline TwistedTerm phi_relabel(PhiDirection dir, TwistedTerm term) {
  const MonomialBasis from = dir == PhiDirection::forward ? MonomialBasis::twisted : MonomialBasis::commutative;
  if (term.basis != from) throw StructuralError("phi_relabel: term is in the wrong basis");
  term.basis = dir == PhiDirection::forward ? MonomialBasis::commutative : MonomialBasis::twisted;
  return term;
}

/// d with x^a = d * x_a, by multiplying x_{e_1} ... x_{e_n} out left to right.
inline HalfElement ordered_form(const SqrtBicharacter& c, const IntVec& a) {
  if (a.size() != c.n) throw StructuralError("ordered_form: dimension mismatch");
  HalfElement d(c.group);
  IntVec cur(c.n);
  for (std::size_t i = 0; i < c.n; ++i) {
    if (a[i] < 0) throw StructuralError("ordered_form: exponent must lie in Gamma^+");
    IntVec e(c.n);
    e[i] = 1;
    for (Int k = 0; k < a[i]; ++k) {
      d = d * c(cur, e);
      cur[i] += 1;
    }
  }
  return d;
}

/// Rewrites a twisted term in ordered monomials: k x_a = (k d^{-1}) x^a.
inline TwistedTerm to_ordered(const SqrtBicharacter& c, const TwistedTerm& t) {
  if (t.basis != MonomialBasis::twisted) throw StructuralError("to_ordered: expected a twisted term");
  HalfElement d = ordered_form(c, t.exponent);
  return {t.coefficient * SymbolicCoefficient::scalar(d.inverse(), t.coefficient.lambda_exponents().size()),
          t.exponent, MonomialBasis::ordered};
}

/// lhs - rhs
struct Binomial {
  TwistedTerm lhs;
  TwistedTerm rhs;
  friend bool operator==(const Binomial&, const Binomial&) = default;
};

enum class FormTag { localized, affine_saturation };

struct IdealPresentation {
  Subset w;
  std::vector<std::size_t> monomial_generators;  // x_i, i in w (0-based)
  std::vector<Binomial> binomials;
  FormTag form = FormTag::localized;
  std::vector<std::size_t> saturate_by;  // j not in w, for the affine form

  friend bool operator==(const IdealPresentation&, const IdealPresentation&) = default;
};

/// A point of (k^n)_w: a rational value per coordinate, or nullopt for a
/// formal nonzero symbol lambda_j.
using PointSpec = std::vector<std::optional<Rational>>;

inline PointSpec symbolic_point(const Subset& w) {
  PointSpec p(w.universe());
  for (auto i : w.elements()) p[i] = Rational(0);
  return p;
}

inline PointSpec numeric_point(const std::vector<Rational>& lambda) {
  return PointSpec(lambda.begin(), lambda.end());
}

inline Subset zero_pattern(const PointSpec& p) {
  std::vector<std::size_t> z;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] && *p[i] == 0) z.push_back(i);
  return Subset::from_elements(p.size(), z);
}

/// lambda^e as a coefficient (e >= 0 off the zero coordinates).
inline SymbolicCoefficient lambda_power(const ScalarGroup& G, const PointSpec& point, const IntVec& e) {
  Rational r = 1;
  IntVec lam(point.size());
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (e[j] == 0) continue;
    if (point[j])
      r *= rational_pow(*point[j], e[j]);
    else
      lam[j] = e[j];
  }
  return SymbolicCoefficient(r, HalfElement(G), std::move(lam));
}

/// Binomial lambda^{a-} x_{a+} - lambda^{a+} x_{a-} for a in S_w.
inline Binomial lattice_binomial(const ScalarGroup& G, const PointSpec& point, const IntVec& a) {
  if (a.size() != point.size()) throw StructuralError("lattice_binomial: dimension mismatch");
  IntVec pos(a.size()), neg(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > 0) pos[j] = a[j];
    if (a[j] < 0) neg[j] = -a[j];
  }
  return {{lambda_power(G, point, neg), pos, MonomialBasis::twisted},
          {lambda_power(G, point, pos), neg, MonomialBasis::twisted}};
}

/// Generators of Phi^{-1}(M_lambda : S_w^perp) in the localization A_w:
/// x_i for i in w plus one binomial per Hermite basis vector of S_w.
inline IdealPresentation psi_generators(const Stratum& stratum, const ScalarGroup& G, const PointSpec& point) {
  if (point.size() != stratum.w.universe()) throw InputError("psi: point has the wrong number of coordinates");
  if (!(zero_pattern(point) == stratum.w))
    throw InputError("psi: the zero pattern of lambda " + zero_pattern(point).str() + " does not match stratum w = " +
                     stratum.w.str());
  IdealPresentation ip;
  ip.w = stratum.w;
  ip.monomial_generators = stratum.w.elements();
  for (const auto& a : stratum.S_w.basis_rows()) {
    for (auto i : stratum.w.elements())
      if (a[i] != 0) throw StructuralError("psi: S_w basis vector supported on w");
    ip.binomials.push_back(lattice_binomial(G, point, a));
  }
  ip.form = FormTag::localized;
  return ip;
}

/// The same generators written in ordered monomials, tagged with the
/// saturation by the x_j (j not in w) needed to pass from A_w back to A.
inline IdealPresentation affine_form(const SqrtBicharacter& c, const IdealPresentation& localized) {
  IdealPresentation ip = localized;
  for (auto& b : ip.binomials) {
    b.lhs = to_ordered(c, b.lhs);
    b.rhs = to_ordered(c, b.rhs);
  }
  ip.form = FormTag::affine_saturation;
  ip.saturate_by = localized.w.complement_elements();
  return ip;
}

/// Scale so the term with the lexicographically larger exponent has
/// coefficient 1 and comes first.
inline Binomial normalize_binomial(const Binomial& b) {
  const bool lhs_leads = std::lexicographical_compare(b.rhs.exponent.begin(), b.rhs.exponent.end(),
                                                      b.lhs.exponent.begin(), b.lhs.exponent.end());
  const TwistedTerm& lead = lhs_leads ? b.lhs : b.rhs;
  const TwistedTerm& other = lhs_leads ? b.rhs : b.lhs;
  const SymbolicCoefficient inv = lead.coefficient.inverse();
  return {{lead.coefficient * inv, lead.exponent, lead.basis}, {other.coefficient * inv, other.exponent, other.basis}};
}

/// S_w and generator vectors read off the closed formulas for the
/// one-parameter space: t == 0 (q not a root of unity) or odd t > 1.
struct ClosedForm {
  Lattice S_w;
  std::vector<IntVec> generators;  // t*e_j (j not in w), then gamma_+ - gamma_- when |complement| is odd
};

inline ClosedForm closed_form_oracle(const Int& t, std::size_t n, const Subset& w) {
  if (t < 0 || t == 1 || (t != 0 && t % 2 == 0))
    throw InputError("closed form needs t = 0 or an odd order t > 1");
  if (w.universe() != n) throw StructuralError("closed_form_oracle: subset universe != n");
  const auto comp = w.complement_elements();
  ClosedForm cf;
  if (t != 0)
    for (auto j : comp) {
      IntVec e(n);
      e[j] = t;
      cf.generators.push_back(std::move(e));
    }
  if (comp.size() % 2 == 1) {
    IntVec g(n);
    for (std::size_t k = 0; k < comp.size(); ++k) g[comp[k]] = (k % 2 == 0) ? 1 : -1;
    cf.generators.push_back(std::move(g));
  }
  cf.S_w = hermite_basis(cf.generators, n);
  return cf;
}

}  // namespace qaffine
