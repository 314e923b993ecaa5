#pragma once

// Plain-text grammar for generators:
//   x[i]             variable (ordered monomials, joined by '*', powers x[i]^e)
//   x[a1,...,an]     twisted basis monomial;  y[a1,...,an] on the commutative side
//   l<i>^e           lambda_i
//   p^{a/2}          square-root generator p of the free scalar generator (p1, p2, ... when rank > 1),
//                    a = twice the exponent of p
//   z^{e}            torsion generator
// Factors of a term are joined by " * "; binomials are "lhs - rhs".

#include "qaffine/integer.hpp"
#include "qaffine/quotient_map.hpp"
#include "qaffine/scalars.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qaffine {

inline std::vector<std::string> scalar_factors(const HalfElement& h) {
  std::vector<std::string> out;
  const auto& d = h.doubled_free_exponents();
  for (std::size_t l = 0; l < d.size(); ++l) {
    if (d[l] == 0) continue;
    std::string name = d.size() == 1 ? "p" : "p" + std::to_string(l + 1);
    out.push_back(name + "^{" + to_string(Int(d[l] * 2)) + "/2}");
  }
  if (h.torsion_exponent() != 0) out.push_back("z^{" + to_string(h.torsion_exponent()) + "}");
  return out;
}

inline std::vector<std::string> coefficient_factors(const SymbolicCoefficient& k) {
  std::vector<std::string> out;
  if (k.rational() != 1) out.push_back(to_string(k.rational()));
  if (k.is_zero()) return out;
  for (auto& f : scalar_factors(k.scalar_part())) out.push_back(f);
  const auto& lam = k.lambda_exponents();
  for (std::size_t j = 0; j < lam.size(); ++j)
    if (lam[j] != 0) out.push_back("l" + std::to_string(j + 1) + "^" + to_string(lam[j]));
  return out;
}

inline std::string render_vector(const IntVec& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += to_string(a[i]);
  }
  return s + "]";
}

inline std::string render_monomial(const IntVec& a, MonomialBasis basis) {
  switch (basis) {
    case MonomialBasis::twisted:
      return "x" + render_vector(a);
    case MonomialBasis::commutative:
      return "y" + render_vector(a);
    case MonomialBasis::ordered: {
      std::string s;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "x[" + std::to_string(i + 1) + "]";
        if (a[i] != 1) s += "^" + to_string(a[i]);
      }
      return s;
    }
  }
  return {};
}

inline std::string render_term(const TwistedTerm& t) {
  std::vector<std::string> f = coefficient_factors(t.coefficient);
  std::string mono = render_monomial(t.exponent, t.basis);
  if (!mono.empty() && !t.coefficient.is_zero()) f.push_back(mono);
  if (f.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += " * ";
    s += f[i];
  }
  return s;
}

inline std::string render_binomial(const Binomial& b) { return render_term(b.lhs) + " - " + render_term(b.rhs); }

/// "<x[1], l2^1 * x[1,0,1] - ...>" plus "; saturate by x[j], ..." for the affine form.
inline std::string render_presentation(const IdealPresentation& ip) {
  std::vector<std::string> gens;
  for (auto i : ip.monomial_generators) gens.push_back("x[" + std::to_string(i + 1) + "]");
  for (const auto& b : ip.binomials) gens.push_back(render_binomial(b));
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ", ";
    s += gens[i];
  }
  s += ">";
  if (ip.form == FormTag::affine_saturation && !ip.saturate_by.empty() && !ip.binomials.empty()) {
    s += "; saturate by ";
    for (std::size_t i = 0; i < ip.saturate_by.size(); ++i) {
      if (i) s += ",";
      s += "x[" + std::to_string(ip.saturate_by[i] + 1) + "]";
    }
  }
  return s;
}

inline const char* form_name(FormTag f) { return f == FormTag::localized ? "localized" : "affine-saturation"; }

}  // namespace qaffine
