#pragma once

// Cocycle feasibility for q-matrices valued in {+1, -1}: is there a 2-cocycle
// c with c(a,b) c(b,a)^{-1} = sigma(a,b) and c == 1 on S_w x Gamma_w for every
// w? Values are taken in the 2^k-th roots of unity and written additively as
// exponents mod 2^k. The searched family is
//
//     c(a, b) = a.C.b + f(a) + f(b) - f(a + b)        (mod 2^k)
//
// with C a bicharacter matrix (zero diagonal, C_ji = C_ij - Sigma_ij) and f a
// function on (Z/N)^n (N = coboundary period, N = 1 meaning no coboundary).

#include "qaffine/bicharacter.hpp"
#include "qaffine/integer.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/subset.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qaffine {

enum class FeasibilityMethod { exhaustive, linear };

struct FeasibilityOptions {
  unsigned k = 2;                  // values in Z/2^k
  unsigned coboundary_period = 2;  // N; 1 disables the coboundary part
  FeasibilityMethod method = FeasibilityMethod::exhaustive;
};

struct CocycleWitness {
  unsigned k = 2;
  unsigned period = 1;
  IntMatrix C;           // n x n, entries mod 2^k
  std::vector<Int> f;    // f[index(a mod N)], index = sum a_i N^i; f[0] == 0

  std::int64_t modulus() const { return std::int64_t{1} << k; }

  std::size_t index_of(const IntVec& a) const {
    std::size_t idx = 0, scale = 1;
    for (const auto& x : a) {
      idx += static_cast<std::size_t>(mod_floor(x, Int(period))) * scale;
      scale *= period;
    }
    return idx;
  }

  /// Exponent of c(a, b) mod 2^k.
  Int operator()(const IntVec& a, const IntVec& b) const {
    IntVec sum(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
    Int v = dot(a * C, b) + f[index_of(a)] + f[index_of(b)] - f[index_of(sum)];
    return mod_floor(v, Int(modulus()));
  }
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<CocycleWitness> witness;
  std::uint64_t candidates_examined = 0;
  std::size_t constraint_count = 0;
  FeasibilityOptions options;
  std::string verdict;
};

namespace detail {

inline std::int64_t to_i64(const Int& x) { return static_cast<std::int64_t>(x); }

inline std::int64_t mod_i64(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// Inverse of a odd residue modulo a power of two.
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  Int x, y;
  Int g = ext_gcd(Int(a), Int(m), x, y);
  if (g != 1) throw StructuralError("inverse_mod: not invertible");
  return to_i64(mod_floor(x, Int(m)));
}

struct Constraint {
  std::vector<std::int64_t> c_coeff;  // on the upper entries C_ij, i < j
  std::int64_t constant = 0;
  std::size_t key = 0;  // (a mod N, b mod N)
  bool operator<(const Constraint& o) const {
    return std::tie(key, c_coeff, constant) < std::tie(o.key, o.c_coeff, o.constant);
  }
  bool operator==(const Constraint& o) const = default;
};

struct ConstraintSystem {
  std::size_t n = 0;
  std::int64_t modulus = 4;
  unsigned period = 1;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // upper positions
  std::vector<Constraint> rows;
  std::vector<std::vector<std::int64_t>> key_rows;  // f-coefficients per key (f[0] dropped)
  std::size_t f_unknowns = 0;
};

inline std::vector<IntVec> residue_points(std::size_t n, std::int64_t m, const Subset& w) {
  std::vector<IntVec> pts;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (!w.contains(i)) total *= static_cast<std::size_t>(m);
  for (std::size_t code = 0; code < total; ++code) {
    IntVec a(n);
    std::size_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      if (w.contains(i)) continue;
      a[i] = static_cast<long long>(rest % static_cast<std::size_t>(m));
      rest /= static_cast<std::size_t>(m);
    }
    pts.push_back(std::move(a));
  }
  return pts;
}

inline ConstraintSystem build_constraints(const Bicharacter& B, const FeasibilityOptions& opt) {
  const std::size_t n = B.n();
  ConstraintSystem sys;
  sys.n = n;
  sys.modulus = std::int64_t{1} << opt.k;
  sys.period = opt.coboundary_period;
  const std::int64_t M = sys.modulus, half = M / 2;
  const std::size_t N = opt.coboundary_period;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sys.pairs.emplace_back(i, j);

  // lifted commutation exponents: sigma = -1 becomes 2^{k-1}
  std::vector<std::vector<std::int64_t>> sigma_hat(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sigma_hat[i][j] = mod_i64(to_i64(B.exponents.torsion(i, j)) * half, M);

  std::size_t f_points = 1;
  for (std::size_t i = 0; i < n; ++i) f_points *= N;
  sys.f_unknowns = f_points - 1;
  auto f_index = [&](const IntVec& a) {
    std::size_t idx = 0, scale = 1;
    for (const auto& x : a) {
      idx += static_cast<std::size_t>(mod_floor(x, Int(N))) * scale;
      scale *= N;
    }
    return idx;
  };

  std::vector<Constraint> rows;
  for (const auto& w : all_subsets(n)) {
    const Lattice S_w = radical(B, w);
    // residues of S_w modulo M Gamma_w
    std::vector<IntVec> shifted = S_w.basis_rows();
    for (auto j : w.complement_elements()) {
      IntVec e(n);
      e[j] = M;
      shifted.push_back(std::move(e));
    }
    const Lattice S_mod = hermite_basis(std::move(shifted), n);
    const auto gamma_pts = residue_points(n, M, w);
    std::vector<IntVec> s_pts;
    for (const auto& a : gamma_pts)
      if (lattice_contains(S_mod, a)) s_pts.push_back(a);

    for (const auto& a : s_pts)
      for (const auto& b : gamma_pts) {
        Constraint c;
        c.c_coeff.resize(sys.pairs.size());
        std::int64_t constant = 0;
        for (std::size_t p = 0; p < sys.pairs.size(); ++p) {
          auto [i, j] = sys.pairs[p];
          const std::int64_t ai = to_i64(a[i]), aj = to_i64(a[j]), bi = to_i64(b[i]), bj = to_i64(b[j]);
          c.c_coeff[p] = mod_i64(ai * bj + aj * bi, M);
          constant -= aj * bi * sigma_hat[i][j];
        }
        c.constant = mod_i64(constant, M);
        c.key = f_index(a) * f_points + f_index(b);
        rows.push_back(std::move(c));
      }
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  sys.rows = std::move(rows);

  // f-part of each key: +f(a) + f(b) - f(a+b), with f(0) == 0 dropped
  std::map<std::size_t, std::size_t> key_slot;
  for (auto& r : sys.rows) {
    auto [it, inserted] = key_slot.emplace(r.key, sys.key_rows.size());
    if (inserted) {
      std::vector<std::int64_t> fr(sys.f_unknowns);
      const std::size_t ia = r.key / f_points, ib = r.key % f_points;
      std::size_t isum = 0, scale = 1;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t da = (ia / scale) % N, db = (ib / scale) % N;
        isum += ((da + db) % N) * scale;
        scale *= N;
      }
      if (ia != 0) fr[ia - 1] += 1;
      if (ib != 0) fr[ib - 1] += 1;
      if (isum != 0) fr[isum - 1] -= 1;
      sys.key_rows.push_back(std::move(fr));
    }
    r.key = it->second;
  }
  return sys;
}

inline CocycleWitness make_witness(const ConstraintSystem& sys, const IntMatrix& sigma_torsion,
                                   const std::vector<std::int64_t>& upper, const std::vector<std::int64_t>& f,
                                   unsigned k) {
  const std::int64_t M = sys.modulus, half = M / 2;
  CocycleWitness wit;
  wit.k = k;
  wit.period = sys.period;
  wit.C = IntMatrix(sys.n, sys.n);
  for (std::size_t p = 0; p < sys.pairs.size(); ++p) {
    auto [i, j] = sys.pairs[p];
    wit.C(i, j) = mod_i64(upper[p], M);
    wit.C(j, i) = mod_i64(upper[p] - to_i64(sigma_torsion(i, j)) * half, M);
  }
  wit.f.assign(sys.f_unknowns + 1, Int(0));
  for (std::size_t u = 0; u < sys.f_unknowns; ++u) wit.f[u + 1] = mod_i64(f[u], M);
  return wit;
}

}  // namespace detail

inline FeasibilityResult bichar_feasibility(const Bicharacter& B, FeasibilityOptions opt = {}) {
  const ScalarGroup& G = B.group();
  if (G.free_rank != 0 || G.torsion_order != 2)
    throw InputError("feasibility search needs a q-matrix with entries in {1, -1} (cyclic torsion of order 2)");
  if (opt.k < 1 || opt.k > 16) throw InputError("feasibility: k must be in [1, 16]");
  if (opt.coboundary_period < 1 || (opt.coboundary_period & (opt.coboundary_period - 1)) != 0 ||
      opt.coboundary_period > (1u << opt.k))
    throw InputError("feasibility: coboundary period must be a power of two dividing 2^k");
  const std::size_t n = B.n();
  {
    // residue enumeration is (2^k)^n points per stratum
    double pts = 1;
    for (std::size_t i = 0; i < n; ++i) pts *= static_cast<double>(std::uint64_t{1} << opt.k);
    if (pts * pts > 4.0e6) throw InputError("feasibility: search space too large for this n and k");
  }

  FeasibilityResult res;
  res.options = opt;
  const detail::ConstraintSystem sys = detail::build_constraints(B, opt);
  res.constraint_count = sys.rows.size();
  const std::int64_t M = sys.modulus;
  const std::size_t P = sys.pairs.size();

  auto describe_family = [&] {
    std::string fam = "bicharacters with values in Z/" + std::to_string(M);
    if (opt.coboundary_period > 1)
      fam += " times coboundaries of functions on (Z/" + std::to_string(opt.coboundary_period) + ")^n";
    return fam;
  };

  if (opt.method == FeasibilityMethod::exhaustive) {
    if (n > 4) throw InputError("exhaustive feasibility search supports n <= 4; use the linear method");
    const std::size_t K = sys.key_rows.size();
    IntMatrix F(K, sys.f_unknowns);
    for (std::size_t r = 0; r < K; ++r)
      for (std::size_t u = 0; u < sys.f_unknowns; ++u) F(r, u) = sys.key_rows[r][u];
    const SmithForm snf = smith_normal_form(F);
    std::vector<std::vector<std::int64_t>> Umod(K, std::vector<std::int64_t>(K));
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) Umod[i][j] = detail::to_i64(mod_floor(snf.U(i, j), Int(M)));
    std::vector<std::int64_t> diag;
    for (std::size_t i = 0; i < std::min(K, sys.f_unknowns); ++i) {
      if (snf.D(i, i) == 0) break;
      diag.push_back(detail::to_i64(mod_floor(snf.D(i, i), Int(M))));
    }

    std::uint64_t total = 1;
    for (std::size_t p = 0; p < P; ++p) total *= static_cast<std::uint64_t>(M);
    std::vector<std::int64_t> upper(P), rhs(K), y(K);
    std::vector<bool> seen(K);
    for (std::uint64_t cand = 0; cand < total; ++cand) {
      ++res.candidates_examined;
      std::uint64_t rest = cand;
      for (std::size_t p = 0; p < P; ++p) {
        upper[p] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(M));
        rest /= static_cast<std::uint64_t>(M);
      }
      std::fill(seen.begin(), seen.end(), false);
      bool consistent = true;
      for (const auto& row : sys.rows) {
        std::int64_t v = row.constant;
        for (std::size_t p = 0; p < P; ++p) v += row.c_coeff[p] * upper[p];
        v = detail::mod_i64(-v, M);
        if (!seen[row.key]) {
          seen[row.key] = true;
          rhs[row.key] = v;
        } else if (rhs[row.key] != v) {
          consistent = false;
          break;
        }
      }
      if (!consistent) continue;
      // F f == rhs (mod M)  <=>  D z == U rhs with f = V z
      for (std::size_t i = 0; i < K; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < K; ++j) acc = (acc + Umod[i][j] * rhs[j]) % M;
        y[i] = acc;
      }
      std::vector<std::int64_t> z(sys.f_unknowns, 0);
      bool solvable = true;
      for (std::size_t i = 0; i < K && solvable; ++i) {
        if (i < diag.size()) {
          const std::int64_t d = diag[i];
          const std::int64_t g = detail::to_i64(gcd_int(Int(d), Int(M)));
          if (y[i] % g != 0) {
            solvable = false;
            break;
          }
          const std::int64_t Mg = M / g;
          z[i] = Mg == 1 ? 0 : detail::mod_i64((y[i] / g) * detail::inverse_mod(detail::mod_i64(d / g, Mg), Mg), Mg);
        } else if (y[i] != 0) {
          solvable = false;
        }
      }
      if (!solvable) continue;
      std::vector<std::int64_t> f(sys.f_unknowns, 0);
      for (std::size_t u = 0; u < sys.f_unknowns; ++u) {
        std::int64_t acc = 0;
        for (std::size_t v = 0; v < sys.f_unknowns; ++v)
          acc = detail::mod_i64(acc + detail::to_i64(mod_floor(snf.V(u, v), Int(M))) * z[v], M);
        f[u] = acc;
      }
      res.feasible = true;
      res.witness = detail::make_witness(sys, B.exponents.torsion, upper, f, opt.k);
      break;
    }
  } else {
    // joint linear system in (C_upper, f, t), homogenized by t
    const std::size_t cols = P + sys.f_unknowns + 1;
    IntMatrix A(sys.rows.size(), cols);
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
      const auto& row = sys.rows[r];
      for (std::size_t p = 0; p < P; ++p) A(r, p) = row.c_coeff[p];
      for (std::size_t u = 0; u < sys.f_unknowns; ++u) A(r, P + u) = sys.key_rows[row.key][u];
      A(r, cols - 1) = row.constant;
    }
    std::vector<Int> moduli(sys.rows.size(), Int(M));
    const Lattice sol = kernel_with_moduli(A, moduli);
    for (std::size_t r = 0; r < sol.rank(); ++r) {
      const Int& t = sol.basis()(r, cols - 1);
      if (mod_floor(t, Int(2)) == 0) continue;
      const std::int64_t u = detail::inverse_mod(detail::to_i64(mod_floor(t, Int(M))), M);
      std::vector<std::int64_t> upper(P), f(sys.f_unknowns);
      for (std::size_t p = 0; p < P; ++p) upper[p] = detail::to_i64(mod_floor(sol.basis()(r, p) * u, Int(M)));
      for (std::size_t v = 0; v < sys.f_unknowns; ++v)
        f[v] = detail::to_i64(mod_floor(sol.basis()(r, P + v) * u, Int(M)));
      res.feasible = true;
      res.witness = detail::make_witness(sys, B.exponents.torsion, upper, f, opt.k);
      break;
    }
  }

  if (res.feasible) {
    res.verdict = "feasible: witness found among " + describe_family();
  } else {
    res.verdict = "infeasible within " + describe_family();
    if (n >= 4) res.verdict += "; consistent with the known nonexistence of such a cocycle for n >= 4";
  }
  return res;
}

}  // namespace qaffine
