#pragma once

// Stratification over subsets w of {1..n}: for each w the radical S_w, the
// torus S_w^perp (encoded by its character lattice S_w), orbit/fiber
// dimensions, and the fiber test for rational points of (k^n)_w.

#include "qaffine/bicharacter.hpp"
#include "qaffine/integer.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/subset.hpp"

#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qaffine {

/// Closed subgroup of H = (k^x)^n cut out by the characters in `vanishing`.
struct TorusSubgroup {
  Lattice vanishing;
  std::size_t dimension = 0;
  Int component_count = 1;
};

inline TorusSubgroup torus_perp(const Lattice& L) {
  QuotientShape shape = quotient_shape(L.ambient_rank(), L);
  return {L, L.ambient_rank() - L.rank(), shape.torsion_order()};
}

struct Stratum {
  Subset w;
  Lattice S_w;
  std::size_t gamma_w_rank = 0;
  std::size_t fiber_dim = 0;
  std::size_t image_dim = 0;
  QuotientShape quotient_shape;  // Gamma_w / S_w
  TorusSubgroup perp;
};

inline Stratum make_stratum(const Bicharacter& B, const Subset& w) {
  Stratum s;
  s.w = w;
  s.S_w = radical(B, w);
  s.gamma_w_rank = B.n() - w.size();
  s.image_dim = s.S_w.rank();
  s.fiber_dim = s.gamma_w_rank - s.image_dim;
  s.quotient_shape = stratum_quotient_shape(s.S_w, w);
  s.perp = torus_perp(s.S_w);
  return s;
}

/// One stratum per subset, by size then lexicographic.
inline std::vector<Stratum> stratify(const QMatrix& Q) {
  const Bicharacter B = validate_q(Q);
  std::vector<Stratum> out;
  for (const auto& w : all_subsets(Q.n)) out.push_back(make_stratum(B, w));
  return out;
}

struct CompatibilityViolation {
  Subset v, w;
  IntVec witness;  // in S_v cap Gamma_w but not in S_w
};

struct CompatibilityVerdict {
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::vector<CompatibilityViolation> violations;
};

/// S_v cap Gamma_w is contained in S_w for every v subset of w.
inline CompatibilityVerdict compatibility_check(const QMatrix& Q) {
  const Bicharacter B = validate_q(Q);
  const auto subsets = all_subsets(Q.n);
  std::vector<Lattice> radicals;
  for (const auto& w : subsets) radicals.push_back(radical(B, w));

  CompatibilityVerdict verdict;
  for (std::size_t vi = 0; vi < subsets.size(); ++vi)
    for (std::size_t wi = 0; wi < subsets.size(); ++wi) {
      const Subset& v = subsets[vi];
      const Subset& w = subsets[wi];
      if (!v.is_subset_of(w)) continue;
      ++verdict.pairs_checked;
      std::vector<IntVec> rows;
      for (auto i : w.elements()) {
        IntVec e(Q.n);
        e[i] = 1;
        rows.push_back(std::move(e));
      }
      std::vector<Int> moduli(rows.size(), Int(0));
      Lattice meet = rows.empty() ? radicals[vi]
                                  : restrict_lattice(radicals[vi], IntMatrix::from_rows(rows, Q.n), moduli);
      for (const auto& b : meet.basis_rows())
        if (!lattice_contains(radicals[wi], b)) {
          verdict.holds = false;
          verdict.violations.push_back({v, w, b});
          break;
        }
    }
  return verdict;
}

/// w = {i : lambda_i == 0}.
inline Subset stratum_of_point(const std::vector<Rational>& lambda) {
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (lambda[i] == 0) zeros.push_back(i);
  return Subset::from_elements(lambda.size(), zeros);
}

/// lambda^alpha over the coordinates where alpha is nonzero.
inline Rational character_value(const std::vector<Rational>& lambda, const IntVec& alpha) {
  if (lambda.size() != alpha.size()) throw StructuralError("character_value: length mismatch");
  Rational v = 1;
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (alpha[j] != 0) v *= rational_pow(lambda[j], alpha[j]);
  return v;
}

struct FiberCheck {
  bool equivalent = false;
  Subset w_lambda, w_mu;
  // per basis vector of S_w: (alpha, lambda^alpha, mu^alpha)
  std::vector<std::tuple<IntVec, Rational, Rational>> characters;
};

/// lambda and mu lie in one S_w^perp-orbit iff they share a stratum and agree
/// on every character of S_w (checked on its Hermite basis).
inline FiberCheck fiber_check(const Bicharacter& B, const std::vector<Rational>& lambda,
                              const std::vector<Rational>& mu) {
  if (lambda.size() != B.n() || mu.size() != B.n()) throw InputError("fiber: points must have n coordinates");
  FiberCheck out;
  out.w_lambda = stratum_of_point(lambda);
  out.w_mu = stratum_of_point(mu);
  if (!(out.w_lambda == out.w_mu)) return out;
  const Lattice S = radical(B, out.w_lambda);
  out.equivalent = true;
  for (const auto& a : S.basis_rows()) {
    Rational la = character_value(lambda, a), ma = character_value(mu, a);
    if (la != ma) out.equivalent = false;
    out.characters.emplace_back(a, std::move(la), std::move(ma));
  }
  return out;
}

inline bool fiber_equivalent(const QMatrix& Q, const std::vector<Rational>& lambda, const std::vector<Rational>& mu) {
  return fiber_check(validate_q(Q), lambda, mu).equivalent;
}

}  // namespace qaffine
