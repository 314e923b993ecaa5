#pragma once

// Brute-force checks that avoid the Hermite / Smith code paths: direct
// products of q entries, box enumeration, rational linear solves.

#include "qaffine/bicharacter.hpp"
#include "qaffine/feasibility.hpp"
#include "qaffine/integer.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/scalars.hpp"
#include "qaffine/strata.hpp"
#include "qaffine/subset.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qaffine::oracle {

using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// sigma(a, b) = prod_{i,j} q_ij^{a_i b_j}, straight from the matrix entries.
inline GroupElement direct_sigma(const QMatrix& Q, const IntVec& a, const IntVec& b) {
  GroupElement g = GroupElement::identity(Q.group);
  for (std::size_t i = 0; i < Q.n; ++i)
    for (std::size_t j = 0; j < Q.n; ++j)
      if (a[i] != 0 && b[j] != 0) g = g * Q.at(i, j).pow(a[i] * b[j]);
  return g;
}

inline IntVec unit(std::size_t n, std::size_t i) {
  IntVec e(n);
  e[i] = 1;
  return e;
}

/// Calls f on every vector of [lo, hi]^n with zeros on `fixed_zero`.
inline void for_each_box(std::size_t n, long long lo, long long hi, const std::vector<bool>& fixed_zero,
                         const std::function<void(const IntVec&)>& f) {
  IntVec v(n);
  std::vector<long long> cur(n, lo);
  for (std::size_t i = 0; i < n; ++i)
    if (fixed_zero[i]) cur[i] = 0;
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) v[i] = cur[i];
    f(v);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (fixed_zero[i]) continue;
      if (cur[i] < hi) {
        ++cur[i];
        break;
      }
      cur[i] = lo;
    }
    if (i == n) return;
  }
}

inline void for_each_box(std::size_t n, long long lo, long long hi, const std::function<void(const IntVec&)>& f) {
  for_each_box(n, lo, hi, std::vector<bool>(n, false), f);
}

/// Unique rational x with x * rows == v, or nullopt (rows independent).
inline std::optional<std::vector<Rational>> rational_coordinates(const std::vector<IntVec>& rows, const IntVec& v) {
  const std::size_t k = rows.size(), n = v.size();
  // augmented system: n equations (columns) in k unknowns
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) a[j][i] = Rational(rows[i][j]);
    a[j][k] = Rational(v[j]);
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t t = c; t <= k; ++t) a[i][t] -= f * a[r][t];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (a[i][k] != 0) return std::nullopt;
  std::vector<Rational> x(k);
  for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = a[i][k] / a[i][pivcol[i]];
  return x;
}

/// Membership in the Z-span of independent rows, by rational solve.
inline bool in_integer_span(const std::vector<IntVec>& rows, const IntVec& v) {
  auto x = rational_coordinates(rows, v);
  if (!x) return false;
  for (const auto& c : *x)
    if (boost::multiprecision::denominator(c) != 1) return false;
  return true;
}

struct BoxVerdict {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  bool ok() const { return mismatches == 0; }
};

/// Radical of sigma restricted to Gamma_w against box enumeration: a in the box
/// (supported off w) satisfies sigma(a, e_j) == 1 for all j off w iff a lies in
/// the computed lattice; basis vectors satisfy the condition.
inline BoxVerdict radical_box_check(const QMatrix& Q, const Subset& w, long long bound) {
  const Lattice S = radical(validate_q(Q), w);
  const auto comp = w.complement_elements();
  auto annihilates = [&](const IntVec& a) {
    for (auto j : comp)
      if (!direct_sigma(Q, a, unit(Q.n, j)).is_identity()) return false;
    return true;
  };
  const std::vector<IntVec> basis = S.basis_rows();
  BoxVerdict v;
  for_each_box(Q.n, -bound, bound, w.mask(), [&](const IntVec& a) {
    ++v.checked;
    if (annihilates(a) != in_integer_span(basis, a)) ++v.mismatches;
  });
  for (const auto& b : basis) {
    ++v.checked;
    bool off_w = true;
    for (auto i : w.elements()) off_w = off_w && b[i] == 0;
    if (!off_w || !annihilates(b)) ++v.mismatches;
  }
  return v;
}

/// kernel_with_moduli against enumeration of [-bound, bound]^cols.
inline BoxVerdict kernel_box_check(const IntMatrix& M, const std::vector<Int>& moduli, long long bound) {
  const Lattice K = kernel_with_moduli(M, moduli);
  auto satisfies = [&](const IntVec& a) {
    for (std::size_t r = 0; r < M.rows(); ++r) {
      Int s = dot(M.row(r), a);
      if (moduli[r] == 0 ? s != 0 : mod_floor(s, moduli[r]) != 0) return false;
    }
    return true;
  };
  const auto basis = K.basis_rows();
  BoxVerdict v;
  for_each_box(M.cols(), -bound, bound, [&](const IntVec& a) {
    ++v.checked;
    if (satisfies(a) != in_integer_span(basis, a)) ++v.mismatches;
  });
  for (const auto& b : basis) {
    ++v.checked;
    if (!satisfies(b)) ++v.mismatches;
  }
  return v;
}

/// |Z^n / L| for full-rank L with N Z^n inside L, by counting classes of [0, N)^n.
inline std::size_t coset_count(const Lattice& L, long long N) {
  const std::size_t n = L.ambient_rank();
  const auto basis = L.basis_rows();
  std::vector<IntVec> reps;
  for_each_box(n, 0, N - 1, [&](const IntVec& a) {
    for (const auto& r : reps) {
      IntVec d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - r[i];
      if (in_integer_span(basis, d)) return;
    }
    reps.push_back(a);
  });
  return reps.size();
}

inline QMatrix random_q(Rng& rng, std::size_t n, std::size_t free_rank, const Int& torsion, long long range = 3) {
  ScalarGroup G(free_rank, torsion);
  QMatrix Q(G, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      IntVec f(free_rank);
      for (auto& x : f) x = uniform(rng, -range, range);
      Q.set_pair(i, j, GroupElement(G, f, uniform(rng, -range, range)));
    }
  return Q;
}

/// Exhaustive check of a feasibility witness for q = -1: on a box it verifies
/// the 2-cocycle identity, c(a,b) c(b,a)^{-1} = sigma(a,b), and c(a,b) = 1 for
/// a in S_w (decided by direct products) and b in Gamma_w, for every w.
inline bool verify_witness(const QMatrix& Q, const CocycleWitness& c, long long lo = -1, long long hi = 2) {
  const Int M = Int(1) << c.k;
  const Int half = M / 2;
  std::vector<IntVec> box;
  for_each_box(Q.n, lo, hi, [&](const IntVec& a) { box.push_back(a); });
  auto add = [](const IntVec& a, const IntVec& b) {
    IntVec s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return s;
  };
  for (const auto& a : box)
    for (const auto& b : box) {
      Int sig = direct_sigma(Q, a, b).torsion_exponent() * half;
      if (mod_floor(c(a, b) - c(b, a) - sig, M) != 0) return false;
    }
  // cocycle identity on a smaller box
  std::vector<IntVec> small;
  for_each_box(Q.n, 0, 1, [&](const IntVec& a) { small.push_back(a); });
  for (const auto& a : small)
    for (const auto& b : small)
      for (const auto& g : small)
        if (mod_floor(c(a, b) + c(add(a, b), g) - c(a, add(b, g)) - c(b, g), M) != 0) return false;
  for (const auto& w : all_subsets(Q.n)) {
    const auto comp = w.complement_elements();
    std::vector<IntVec> gw;
    for (const auto& b : box) {
      bool off = true;
      for (auto i : w.elements()) off = off && b[i] == 0;
      if (off) gw.push_back(b);
    }
    for (const auto& a : gw) {
      bool in_radical = true;
      for (auto j : comp) in_radical = in_radical && direct_sigma(Q, a, unit(Q.n, j)).is_identity();
      if (!in_radical) continue;
      for (const auto& b : gw)
        if (c(a, b) != 0) return false;
    }
  }
  return true;
}

/// A random integer vector v with v . a == 0 for every basis vector a of S,
/// supported off w.
inline IntVec random_annihilator(Rng& rng, const Lattice& S, const Subset& w, long long range = 2) {
  const std::size_t n = S.ambient_rank();
  std::vector<IntVec> rows = S.basis_rows();
  for (auto i : w.elements()) rows.push_back(unit(n, i));
  const Lattice K = integer_kernel(IntMatrix::from_rows(rows, n));
  IntVec v(n);
  for (const auto& b : K.basis_rows()) {
    long long k = uniform(rng, -range, range);
    for (std::size_t i = 0; i < n; ++i) v[i] += b[i] * k;
  }
  return v;
}

struct OrbitTrial {
  bool soundness = false;   // lambda ~ h.lambda for h in S_w^perp
  bool separation = true;   // perturbed point is not equivalent (when applicable)
  bool separation_applicable = false;
};

/// One orbit-move / separation trial on a random point of a random stratum.
inline OrbitTrial orbit_trial(Rng& rng, const QMatrix& Q) {
  const Bicharacter B = validate_q(Q);
  const std::size_t n = Q.n;
  const Subset w(n, static_cast<std::uint64_t>(uniform(rng, 0, (1LL << n) - 1)));
  std::vector<Rational> lambda(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!w.contains(i)) {
      long long num = uniform(rng, 1, 7) * (uniform(rng, 0, 1) ? 1 : -1);
      lambda[i] = Rational(num, uniform(rng, 1, 5));
    }
  const Lattice S = radical(B, w);
  const IntVec v = random_annihilator(rng, S, w);
  const Rational r(uniform(rng, 1, 6) * (uniform(rng, 0, 1) ? 1 : -1), uniform(rng, 1, 6));
  std::vector<Rational> mu = lambda;
  for (std::size_t j = 0; j < n; ++j)
    if (!w.contains(j)) mu[j] *= rational_pow(r, v[j]);
  OrbitTrial t;
  t.soundness = fiber_check(B, lambda, mu).equivalent;

  // multiply one coordinate by a prime larger than every numerator/denominator used
  for (std::size_t j = 0; j < n && !t.separation_applicable; ++j) {
    if (w.contains(j)) continue;
    for (const auto& a : S.basis_rows())
      if (a[j] != 0) {
        std::vector<Rational> nu = lambda;
        nu[j] *= 101;
        t.separation_applicable = true;
        t.separation = !fiber_check(B, lambda, nu).equivalent;
        break;
      }
  }
  return t;
}

}  // namespace qaffine::oracle
