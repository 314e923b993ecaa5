#pragma once

// Exact integer-matrix and lattice algebra: Smith and Hermite normal forms,
// kernels of integer matrices with per-row congruence moduli, and quotient
// invariants of Z^n / L. Everything is arbitrary precision.

#include "qaffine/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qaffine {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Build from a list of rows; all rows must have length `cols`.
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw StructuralError("IntMatrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_ll(const std::vector<std::vector<long long>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<IntVec> r;
    for (const auto& row : rows) r.push_back(to_int_vec(row));
    return from_rows(r, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVec row(std::size_t r) const {
    return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  std::vector<IntVec> row_list() const {
    std::vector<IntVec> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }
  IntVec col(std::size_t c) const {
    IntVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw StructuralError("IntMatrix: product dimension mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  /// Row vector times matrix.
  friend IntVec operator*(const IntVec& v, const IntMatrix& m) {
    if (v.size() != m.rows_) throw StructuralError("IntMatrix: vector length mismatch");
    IntVec out(m.cols_);
    for (std::size_t k = 0; k < m.rows_; ++k) {
      if (v[k] == 0) continue;
      for (std::size_t j = 0; j < m.cols_; ++j) out[j] += v[k] * m(k, j);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? ",[" : "[");
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? "," : "") << m(r, c);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Sublattice of Z^n stored by its row-style Hermite normal form basis:
/// pivot columns strictly increase, pivots are positive, and entries above
/// a pivot lie in [0, pivot).
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::size_t ambient_rank) : ambient_(ambient_rank), basis_(0, ambient_rank) {}

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  std::vector<IntVec> basis_rows() const { return basis_.row_list(); }

  /// Pivot column of each basis row.
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
      std::size_t c = 0;
      while (c < ambient_ && basis_(r, c) == 0) ++c;
      p.push_back(c);
    }
    return p;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Lattice& l) { return os << l.basis_; }

 private:
  template <class Rows>
  friend Lattice make_lattice_from_hnf(std::size_t, Rows&&);

  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

template <class Rows>
Lattice make_lattice_from_hnf(std::size_t ambient, Rows&& rows) {
  Lattice l(ambient);
  l.basis_ = IntMatrix::from_rows(rows, ambient);
  return l;
}

/// Z^ambient / L  ~  Z^free_rank (+) Z/d_1 (+) ... with d_1 | d_2 | ...
struct QuotientShape {
  std::size_t free_rank = 0;
  std::vector<Int> torsion_orders;

  Int torsion_order() const {
    Int p = 1;
    for (const auto& d : torsion_orders) p *= d;
    return p;
  }
  bool operator==(const QuotientShape&) const = default;
};

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal with divisor chain
  IntMatrix V;  // cols x cols, unimodular
};

namespace detail {

// Locates the entry of smallest nonzero absolute value in A[from.., from..];
// ties go to the lowest row, then the lowest column.
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& A,
                                                                         std::size_t from) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_abs;
  for (std::size_t i = from; i < A.rows(); ++i)
    for (std::size_t j = from; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      Int a = abs_int(A(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = std::move(a);
      }
    }
  return best;
}

}  // namespace detail

/// U * M * V = D with U, V unimodular and D in Smith normal form.
inline SmithForm smith_normal_form(const IntMatrix& M) {
  IntMatrix A = M;
  IntMatrix U = IntMatrix::identity(M.rows());
  IntMatrix V = IntMatrix::identity(M.cols());
  const std::size_t limit = std::min(M.rows(), M.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    auto pos = detail::smallest_entry(A, t);
    if (!pos) break;
    for (;;) {
      A.swap_rows(t, pos->first);
      U.swap_rows(t, pos->first);
      A.swap_cols(t, pos->second);
      V.swap_cols(t, pos->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < A.rows(); ++i) {
        if (A(i, t) == 0) continue;
        Int q = A(i, t) / A(t, t);
        A.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < A.cols(); ++j) {
        if (A(t, j) == 0) continue;
        Int q = A(t, j) / A(t, t);
        A.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (clean) {
        // divisor chain: fold an offending row into the pivot row
        std::optional<std::size_t> bad_row;
        for (std::size_t i = t + 1; i < A.rows() && !bad_row; ++i)
          for (std::size_t j = t + 1; j < A.cols(); ++j)
            if (A(i, j) % A(t, t) != 0) {
              bad_row = i;
              break;
            }
        if (!bad_row) break;
        A.add_row(t, *bad_row, 1);
        U.add_row(t, *bad_row, 1);
      }
      pos = detail::smallest_entry(A, t);
    }
    if (A(t, t) < 0) {
      A.negate_row(t);
      U.negate_row(t);
    }
  }
  return {std::move(U), std::move(A), std::move(V)};
}

/// Row-style Hermite normal form of the span of `vectors` (each of length n).
inline Lattice hermite_basis(std::vector<IntVec> rows, std::size_t n) {
  for (const auto& r : rows)
    if (r.size() != n) throw StructuralError("hermite_basis: vector length mismatch");

  std::size_t top = 0;
  for (std::size_t col = 0; col < n && top < rows.size(); ++col) {
    bool have_pivot = false;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t k = top; k < rows.size(); ++k) {
        if (rows[k][col] == 0) continue;
        if (!best || abs_int(rows[k][col]) < abs_int(rows[*best][col])) best = k;
      }
      if (!best) break;
      have_pivot = true;
      std::swap(rows[top], rows[*best]);
      bool again = false;
      for (std::size_t k = top + 1; k < rows.size(); ++k) {
        if (rows[k][col] == 0) continue;
        Int q = rows[k][col] / rows[top][col];
        for (std::size_t c = col; c < n; ++c) rows[k][c] -= q * rows[top][c];
        if (rows[k][col] != 0) again = true;
      }
      if (!again) break;
    }
    if (!have_pivot) continue;
    if (rows[top][col] < 0)
      for (auto& x : rows[top]) x = -x;
    for (std::size_t k = 0; k < top; ++k) {
      Int q = div_floor(rows[k][col], rows[top][col]);
      if (q == 0) continue;
      for (std::size_t c = col; c < n; ++c) rows[k][c] -= q * rows[top][c];
    }
    ++top;
  }
  rows.resize(top);
  return make_lattice_from_hnf(n, rows);
}

inline Lattice hermite_basis(const IntMatrix& m) { return hermite_basis(m.row_list(), m.cols()); }

/// The full lattice Z^n.
inline Lattice full_lattice(std::size_t n) {
  return make_lattice_from_hnf(n, IntMatrix::identity(n).row_list());
}

/// {x in Z^cols : A x = 0}, in Hermite form.
inline Lattice integer_kernel(const IntMatrix& A) {
  const std::size_t r = A.rows(), c = A.cols();
  // Echelonize [A^T | I] on the first r columns; rows that vanish there carry
  // a kernel basis in their last c entries.
  std::vector<IntVec> W(c, IntVec(r + c));
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < r; ++j) W[i][j] = A(j, i);
    W[i][r + i] = 1;
  }
  std::size_t top = 0;
  for (std::size_t col = 0; col < r && top < c; ++col) {
    bool have_pivot = false;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t k = top; k < c; ++k) {
        if (W[k][col] == 0) continue;
        if (!best || abs_int(W[k][col]) < abs_int(W[*best][col])) best = k;
      }
      if (!best) break;
      have_pivot = true;
      std::swap(W[top], W[*best]);
      bool again = false;
      for (std::size_t k = top + 1; k < c; ++k) {
        if (W[k][col] == 0) continue;
        Int q = W[k][col] / W[top][col];
        for (std::size_t j = col; j < r + c; ++j) W[k][j] -= q * W[top][j];
        if (W[k][col] != 0) again = true;
      }
      if (!again) break;
    }
    if (have_pivot) ++top;
  }
  std::vector<IntVec> kernel;
  for (std::size_t k = top; k < c; ++k) kernel.emplace_back(W[k].begin() + static_cast<std::ptrdiff_t>(r), W[k].end());
  return hermite_basis(std::move(kernel), c);
}

/// Sublattice {v in L : row . v == 0 (mod modulus)} for every (row, modulus)
/// pair; modulus 0 means equality over Z.
inline Lattice restrict_lattice(const Lattice& L, const IntMatrix& rows, std::span<const Int> moduli) {
  if (rows.rows() != moduli.size()) throw StructuralError("restrict_lattice: moduli length must equal row count");
  if (rows.rows() > 0 && rows.cols() != L.ambient_rank())
    throw StructuralError("restrict_lattice: row length must equal ambient rank");
  Lattice cur = L;
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const Int& m = moduli[r];
    if (m < 0) throw StructuralError("restrict_lattice: negative modulus");
    const std::size_t k = cur.rank();
    if (k == 0) break;
    IntVec s(k);
    bool trivial = true;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < cur.ambient_rank(); ++j) s[i] += rows(r, j) * cur.basis()(i, j);
      if (m != 0) s[i] = mod_floor(s[i], m);
      if (s[i] != 0) trivial = false;
    }
    if (trivial) continue;

    // coefficient vectors x with sum x_i s_i == 0 (mod m)
    IntMatrix one_row(1, m == 0 ? k : k + 1);
    for (std::size_t i = 0; i < k; ++i) one_row(0, i) = s[i];
    if (m != 0) one_row(0, k) = m;
    Lattice coeffs = integer_kernel(one_row);

    std::vector<IntVec> next;
    for (std::size_t i = 0; i < coeffs.rank(); ++i) {
      IntVec x = coeffs.basis().row(i);
      x.resize(k);
      next.push_back(x * cur.basis());
    }
    cur = hermite_basis(std::move(next), cur.ambient_rank());
  }
  return cur;
}

/// {a in Z^cols : (M a)_r == 0 mod moduli[r]} (modulus 0: equality over Z).
inline Lattice kernel_with_moduli(const IntMatrix& M, std::span<const Int> moduli) {
  return restrict_lattice(full_lattice(M.cols()), M, moduli);
}

inline QuotientShape quotient_shape(std::size_t ambient_rank, const Lattice& L) {
  if (L.ambient_rank() != ambient_rank) throw StructuralError("quotient_shape: ambient rank mismatch");
  QuotientShape shape;
  shape.free_rank = ambient_rank - L.rank();
  if (L.rank() == 0) return shape;
  SmithForm snf = smith_normal_form(L.basis());
  for (std::size_t i = 0; i < L.rank(); ++i)
    if (snf.D(i, i) > 1) shape.torsion_orders.push_back(snf.D(i, i));
  return shape;
}

inline bool lattice_contains(const Lattice& L, IntVec v) {
  if (v.size() != L.ambient_rank()) throw StructuralError("lattice_contains: length mismatch");
  const auto piv = L.pivots();
  for (std::size_t r = 0; r < L.rank(); ++r) {
    const std::size_t p = piv[r];
    for (std::size_t c = 0; c < p; ++c)
      if (v[c] != 0) return false;
    const Int& pivot = L.basis()(r, p);
    if (v[p] % pivot != 0) return false;
    Int q = v[p] / pivot;
    for (std::size_t c = p; c < v.size(); ++c) v[c] -= q * L.basis()(r, c);
  }
  return is_zero(v);
}

/// Every basis vector of `inner` lies in `outer`.
inline bool lattice_subset(const Lattice& inner, const Lattice& outer) {
  for (const auto& row : inner.basis_rows())
    if (!lattice_contains(outer, row)) return false;
  return true;
}

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw StructuralError("lattice_sum: ambient mismatch");
  auto rows = a.basis_rows();
  for (auto& r : b.basis_rows()) rows.push_back(std::move(r));
  return hermite_basis(std::move(rows), a.ambient_rank());
}

inline Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw StructuralError("lattice_intersection: ambient mismatch");
  const std::size_t n = a.ambient_rank(), ka = a.rank(), kb = b.rank();
  if (ka == 0 || kb == 0) return Lattice(n);
  // (x, y) with x.A - y.B = 0
  IntMatrix stacked(n, ka + kb);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < ka; ++i) stacked(j, i) = a.basis()(i, j);
    for (std::size_t i = 0; i < kb; ++i) stacked(j, ka + i) = -b.basis()(i, j);
  }
  Lattice coeffs = integer_kernel(stacked);
  std::vector<IntVec> rows;
  for (std::size_t r = 0; r < coeffs.rank(); ++r) {
    IntVec x = coeffs.basis().row(r);
    x.resize(ka);
    rows.push_back(x * a.basis());
  }
  return hermite_basis(std::move(rows), n);
}

/// Gamma_w: vectors of Z^n vanishing on the coordinates flagged in `zero_coords`.
inline Lattice coordinate_sublattice(const std::vector<bool>& zero_coords) {
  const std::size_t n = zero_coords.size();
  std::vector<IntVec> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (zero_coords[j]) continue;
    IntVec e(n);
    e[j] = 1;
    rows.push_back(std::move(e));
  }
  return hermite_basis(std::move(rows), n);
}

/// Smallest positive multiple t with t*v in L, or nullopt if none exists.
inline std::optional<Int> minimal_multiple_in(const Lattice& L, const IntVec& v) {
  if (v.size() != L.ambient_rank()) throw StructuralError("minimal_multiple_in: length mismatch");
  if (is_zero(v)) return Int(1);
  // t*v in L  <=>  (t) lies in the kernel of the congruence system; use
  // the lattice L intersected with the line Z v.
  Lattice line = hermite_basis({v}, v.size());
  Lattice meet = lattice_intersection(L, line);
  if (meet.rank() == 0) return std::nullopt;
  IntVec g = meet.basis().row(0);
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) return abs_int(g[j] / v[j]);
  return std::nullopt;
}

}  // namespace qaffine
