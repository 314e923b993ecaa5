#pragma once

// Twists of Z^m-graded commutative algebras generated by homogeneous r_1..r_n:
// pull the cocycle back along rho(a) = a_1 delta_1 + ... + a_n delta_n and
// hand the resulting q~ to the quantum affine machinery.

#include "qaffine/bicharacter.hpp"
#include "qaffine/integer.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/scalars.hpp"
#include "qaffine/strata.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qaffine {

struct GradedPresentation {
  std::size_t n = 0;
  std::size_t grading_rank = 0;
  std::vector<IntVec> degrees;  // delta_i in Z^m
  BilinearMap cocycle;          // on Z^m

  /// n x m matrix with rows delta_i.
  IntMatrix degree_matrix() const {
    if (degrees.size() != n) throw InputError("graded: expected " + std::to_string(n) + " degrees");
    for (const auto& d : degrees)
      if (d.size() != grading_rank) throw InputError("graded: every degree must have length m");
    return IntMatrix::from_rows(degrees, grading_rank);
  }
};

struct Pullback {
  BilinearMap c_tilde;  // c(rho(a), rho(b))
  QMatrix q_tilde;      // sigma_G(delta_i, delta_j)
};

inline Pullback pullback_bicharacter(const GradedPresentation& P) {
  const ScalarGroup& G = P.cocycle.group;
  if (P.cocycle.n != P.grading_rank) throw InputError("graded: cocycle must be m x m");
  const IntMatrix D = P.degree_matrix();
  const IntMatrix Dt = D.transpose();
  Pullback out{BilinearMap(G, P.n), QMatrix(G, P.n)};
  for (std::size_t l = 0; l < G.free_rank; ++l) out.c_tilde.free[l] = D * P.cocycle.free[l] * Dt;
  if (G.has_torsion()) {
    IntMatrix T = D * P.cocycle.torsion * Dt;
    for (std::size_t i = 0; i < P.n; ++i)
      for (std::size_t j = 0; j < P.n; ++j) T(i, j) = mod_floor(T(i, j), G.torsion_order);
    out.c_tilde.torsion = std::move(T);
  }
  auto unit = [&](std::size_t i) {
    IntVec e(P.n);
    e[i] = 1;
    return e;
  };
  // sigma_G(delta_i, delta_j) = c~(e_i, e_j) c~(e_j, e_i)^{-1}
  for (std::size_t i = 0; i < P.n; ++i)
    for (std::size_t j = 0; j < P.n; ++j)
      out.q_tilde.at(i, j) = out.c_tilde(unit(i), unit(j)) * out.c_tilde(unit(j), unit(i)).inverse();
  return out;
}

struct TwistVerdict {
  bool passes = false;
  std::string reason;
};

/// The twist is reducible to a square-root cocycle iff -1 is outside the
/// group generated by the cocycle values or char k = 2.
inline TwistVerdict twist_hypothesis_check(const GradedPresentation& P) {
  const ScalarGroup& G = P.cocycle.group;
  if (minus_one_in_group(G))
    return {false, "-1 lies in the subgroup generated by the cocycle values (torsion order " +
                       to_string(G.torsion_order) + " is even) and char k != 2"};
  if (G.torsion_order % 2 == 0)
    return {false, "inconsistent input: characteristic 2 admits no roots of unity of even order"};
  return {true, G.char_k_is_two ? "char k = 2" : "-1 is not in the subgroup generated by the cocycle values"};
}

struct AmbientAnalysis {
  Pullback pullback;
  SqrtBicharacter d;  // square-root cocycle of sigma~, the twist A is isomorphic to
  std::vector<Stratum> strata;
  std::string annotation;
};

inline AmbientAnalysis ambient_analysis(const GradedPresentation& P) {
  TwistVerdict v = twist_hypothesis_check(P);
  if (!v.passes) throw HypothesisError("graded twist refused: " + v.reason);
  Pullback pb = pullback_bicharacter(P);
  const Bicharacter B = validate_q(pb.q_tilde);
  SqrtBicharacter d = sqrt_bicharacter(B);
  std::vector<Stratum> strata = stratify(pb.q_tilde);
  return {std::move(pb), std::move(d), std::move(strata),
          "spec A corresponds to the closed set V(Phi~(I)) of spec O_q~(k^n); the defining ideal I of the graded "
          "algebra is not tracked"};
}

}  // namespace qaffine
