#pragma once

// The randomized oracle battery behind `qaffine selftest`. Fixed seeds.

#include "qaffine/bicharacter.hpp"
#include "qaffine/feasibility.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/oracles.hpp"
#include "qaffine/quotient_map.hpp"
#include "qaffine/strata.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qaffine {

struct SelfTestLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline bool is_unimodular(const IntMatrix& M) {
  try {
    unimodular_inverse(M);
    return true;
  } catch (const StructuralError&) {
    return false;
  }
}

}  // namespace detail

inline SelfTestLine selftest_smith(oracle::Rng& rng, int trials) {
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    IntMatrix M(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) M(i, j) = oracle::uniform(rng, -5, 5);
    SmithForm s = smith_normal_form(M);
    bool ok = s.U * M * s.V == s.D && detail::is_unimodular(s.U) && detail::is_unimodular(s.V);
    for (std::size_t i = 0; i < 4 && ok; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j && s.D(i, j) != 0) ok = false;
    for (std::size_t i = 0; i + 1 < 4 && ok; ++i) {
      if (s.D(i, i) < 0) ok = false;
      else if (s.D(i, i) == 0 ? s.D(i + 1, i + 1) != 0 : s.D(i + 1, i + 1) % s.D(i, i) != 0) ok = false;
    }
    if (!ok) ++bad;
  }
  return {"smith normal form: U*M*V = D, unimodular, divisor chain", bad == 0,
          std::to_string(trials) + " random 4x4 matrices, " + std::to_string(bad) + " failures"};
}

inline SelfTestLine selftest_kernel(oracle::Rng& rng, int trials) {
  std::size_t mism = 0, checked = 0;
  for (int t = 0; t < trials; ++t) {
    const std::size_t cols = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    const std::size_t rows = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    IntMatrix M(rows, cols);
    std::vector<Int> mod(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) M(i, j) = oracle::uniform(rng, -3, 3);
      mod[i] = oracle::uniform(rng, 0, 4);
    }
    auto v = oracle::kernel_box_check(M, mod, 6);
    mism += v.mismatches;
    checked += v.checked;
  }
  return {"kernel with moduli vs box enumeration", mism == 0,
          std::to_string(checked) + " vectors, " + std::to_string(mism) + " mismatches"};
}

inline SelfTestLine selftest_radical(oracle::Rng& rng, int trials) {
  std::size_t mism = 0, checked = 0;
  const Int torsions[] = {1, 3, 5};
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 2, 3));
    QMatrix Q = oracle::random_q(rng, n, static_cast<std::size_t>(oracle::uniform(rng, 0, 2)),
                                 torsions[oracle::uniform(rng, 0, 2)]);
    for (const auto& w : all_subsets(n)) {
      auto v = oracle::radical_box_check(Q, w, 4);
      mism += v.mismatches;
      checked += v.checked;
    }
  }
  return {"radicals vs box enumeration", mism == 0,
          std::to_string(checked) + " vectors, " + std::to_string(mism) + " mismatches"};
}

inline SelfTestLine selftest_cocycles(oracle::Rng& rng, int trials) {
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    const Int torsions[] = {1, 3, 5};
    QMatrix Q = oracle::random_q(rng, 3, static_cast<std::size_t>(oracle::uniform(rng, 0, 2)),
                                 torsions[oracle::uniform(rng, 0, 2)]);
    const Bicharacter B = validate_q(Q);
    const SqrtBicharacter c = sqrt_bicharacter(B);
    const AdaptedCocycle ad = adapted_cocycle(B);
    for (int k = 0; k < 20; ++k) {
      IntVec a(3), b(3);
      for (auto& x : a) x = oracle::uniform(rng, -4, 4);
      for (auto& x : b) x = oracle::uniform(rng, -4, 4);
      const GroupElement s = oracle::direct_sigma(Q, a, b);
      if (!(c(a, b).square() == s)) ++bad;
      if (!(c(a, b) * c(b, a) == HalfElement(Q.group))) ++bad;
      if (!(ad.cocycle(a, b) * ad.cocycle(b, a).inverse() == s)) ++bad;
    }
    for (const auto& alpha : ad.radical.basis_rows())
      for (std::size_t j = 0; j < 3; ++j)
        if (!ad.cocycle(alpha, oracle::unit(3, j)).is_identity()) ++bad;
  }
  return {"square-root and adapted cocycles", bad == 0, std::to_string(bad) + " failures"};
}

inline SelfTestLine selftest_compatibility(oracle::Rng& rng, int trials) {
  std::size_t violations = 0, pairs = 0;
  for (int t = 0; t < trials; ++t) {
    QMatrix Q = oracle::random_q(rng, static_cast<std::size_t>(oracle::uniform(rng, 2, 4)),
                                 static_cast<std::size_t>(oracle::uniform(rng, 0, 2)), oracle::uniform(rng, 0, 1) ? 3 : 1);
    auto v = compatibility_check(Q);
    violations += v.violations.size();
    pairs += v.pairs_checked;
  }
  return {"S_v cap Gamma_w inside S_w for v inside w", violations == 0,
          std::to_string(pairs) + " pairs, " + std::to_string(violations) + " violations"};
}

inline SelfTestLine selftest_orbits(oracle::Rng& rng, int trials) {
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    QMatrix Q = oracle::random_q(rng, 3, 1, 1);
    auto r = oracle::orbit_trial(rng, Q);
    if (!r.soundness || !r.separation) ++bad;
  }
  return {"orbit moves stay in the fiber, perturbations leave it", bad == 0,
          std::to_string(trials) + " trials, " + std::to_string(bad) + " failures"};
}

inline SelfTestLine selftest_closed_forms() {
  int bad = 0, cases = 0;
  for (long long t : {0, 3, 5}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const Bicharacter B = validate_q(uniparameter_q(n, t));
      for (const auto& w : all_subsets(n)) {
        ++cases;
        if (!(radical(B, w) == closed_form_oracle(t, n, w).S_w)) ++bad;
      }
    }
  }
  return {"one-parameter radicals vs closed forms", bad == 0,
          std::to_string(cases) + " strata, " + std::to_string(bad) + " mismatches"};
}

inline SelfTestLine selftest_feasibility() {
  bool ok = true;
  std::string detail;
  for (std::size_t n = 2; n <= 3; ++n) {
    const QMatrix Q = uniparameter_q(n, 2, std::nullopt);
    auto r = bichar_feasibility(validate_q(Q), {});
    const bool verified = r.feasible && r.witness && oracle::verify_witness(Q, *r.witness);
    ok = ok && verified;
    if (!detail.empty()) detail += "; ";
    detail += "n=" + std::to_string(n) + (verified ? " witness verified" : " no verified witness");
  }
  return {"q = -1 witnesses for n = 2, 3", ok, detail};
}

inline std::vector<SelfTestLine> run_selftest() {
  oracle::Rng rng(20240611);
  return {selftest_smith(rng, 50),         selftest_kernel(rng, 20),       selftest_radical(rng, 20),
          selftest_cocycles(rng, 20),      selftest_compatibility(rng, 10), selftest_orbits(rng, 50),
          selftest_closed_forms(),         selftest_feasibility()};
}

}  // namespace qaffine
