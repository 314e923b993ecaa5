#pragma once

// The scalar group <q_ij> = Z^a (+) Z/m as exponent vectors, its square-root
// extension (half-exponents), and the symbolic coefficient ring used when
// writing ideal generators.

#include "qaffine/integer.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qaffine {

/// Z^free_rank (+) Z/torsion_order. The torsion part is cyclic, as is every
/// finite subgroup of a field's unit group.
struct ScalarGroup {
  std::size_t free_rank = 0;
  Int torsion_order = 1;
  bool char_k_is_two = false;
  std::optional<Int> declared_char;

  ScalarGroup() = default;
  ScalarGroup(std::size_t a, Int m, bool char2 = false, std::optional<Int> characteristic = std::nullopt)
      : free_rank(a), torsion_order(std::move(m)), char_k_is_two(char2), declared_char(std::move(characteristic)) {
    if (torsion_order < 1) throw InputError("torsion order must be >= 1");
    if (declared_char && *declared_char == 2) char_k_is_two = true;
  }

  bool has_torsion() const { return torsion_order > 1; }

  bool operator==(const ScalarGroup&) const = default;
};

/// -1 lies in the group iff its cyclic torsion part has even order, unless
/// char k = 2 (where -1 = 1).
inline bool minus_one_in_group(const ScalarGroup& G) {
  return !G.char_k_is_two && (G.torsion_order % 2 == 0);
}

class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(ScalarGroup group) : group_(std::move(group)), free_(group_.free_rank) {}
  GroupElement(ScalarGroup group, IntVec free_exponents, const Int& torsion_exponent = 0)
      : group_(std::move(group)), free_(std::move(free_exponents)) {
    if (free_.size() != group_.free_rank) throw StructuralError("GroupElement: free exponent length mismatch");
    torsion_ = mod_floor(torsion_exponent, group_.torsion_order);
  }

  static GroupElement identity(const ScalarGroup& g) { return GroupElement(g); }

  const ScalarGroup& group() const { return group_; }
  const IntVec& free_exponents() const { return free_; }
  const Int& torsion_exponent() const { return torsion_; }

  bool is_identity() const { return is_zero(free_) && torsion_ == 0; }

  GroupElement operator*(const GroupElement& h) const {
    check_same(h);
    GroupElement out = *this;
    for (std::size_t l = 0; l < free_.size(); ++l) out.free_[l] += h.free_[l];
    out.torsion_ = mod_floor(torsion_ + h.torsion_, group_.torsion_order);
    return out;
  }

  GroupElement inverse() const {
    GroupElement out = *this;
    for (auto& e : out.free_) e = -e;
    out.torsion_ = mod_floor(-torsion_, group_.torsion_order);
    return out;
  }

  GroupElement pow(const Int& k) const {
    GroupElement out = *this;
    for (auto& e : out.free_) e *= k;
    out.torsion_ = mod_floor(torsion_ * k, group_.torsion_order);
    return out;
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.free_ == b.free_ && a.torsion_ == b.torsion_;
  }

 private:
  void check_same(const GroupElement& h) const {
    if (!(group_ == h.group_)) throw StructuralError("group elements from different scalar groups");
  }

  ScalarGroup group_;
  IntVec free_;
  Int torsion_ = 0;
};

inline GroupElement element_mul(const GroupElement& g, const GroupElement& h) { return g * h; }
inline GroupElement element_inverse(const GroupElement& g) { return g.inverse(); }
inline bool is_identity(const GroupElement& g) { return g.is_identity(); }

/// Element of the square-root extension: free exponents live in (1/2)Z and
/// are stored doubled; the torsion exponent is an ordinary residue mod m.
class HalfElement {
 public:
  HalfElement() = default;
  explicit HalfElement(ScalarGroup group) : group_(std::move(group)), doubled_(group_.free_rank) {}
  HalfElement(ScalarGroup group, IntVec doubled_free, const Int& torsion_exponent = 0)
      : group_(std::move(group)), doubled_(std::move(doubled_free)) {
    if (doubled_.size() != group_.free_rank) throw StructuralError("HalfElement: free exponent length mismatch");
    torsion_ = mod_floor(torsion_exponent, group_.torsion_order);
  }

  /// The embedding of an ordinary group element.
  static HalfElement from_element(const GroupElement& g) {
    IntVec d = g.free_exponents();
    for (auto& x : d) x *= 2;
    return HalfElement(g.group(), std::move(d), g.torsion_exponent());
  }

  const ScalarGroup& group() const { return group_; }
  const IntVec& doubled_free_exponents() const { return doubled_; }
  const Int& torsion_exponent() const { return torsion_; }

  bool is_identity() const { return is_zero(doubled_) && torsion_ == 0; }

  /// h^2, which always lands in the original group.
  GroupElement square() const {
    return GroupElement(group_, doubled_, torsion_ * 2);
  }

  HalfElement operator*(const HalfElement& h) const {
    if (!(group_ == h.group_)) throw StructuralError("half elements from different scalar groups");
    HalfElement out = *this;
    for (std::size_t l = 0; l < doubled_.size(); ++l) out.doubled_[l] += h.doubled_[l];
    out.torsion_ = mod_floor(torsion_ + h.torsion_, group_.torsion_order);
    return out;
  }

  HalfElement inverse() const {
    HalfElement out = *this;
    for (auto& e : out.doubled_) e = -e;
    out.torsion_ = mod_floor(-torsion_, group_.torsion_order);
    return out;
  }

  HalfElement pow(const Int& k) const {
    HalfElement out = *this;
    for (auto& e : out.doubled_) e *= k;
    out.torsion_ = mod_floor(torsion_ * k, group_.torsion_order);
    return out;
  }

  friend bool operator==(const HalfElement& a, const HalfElement& b) {
    return a.group_ == b.group_ && a.doubled_ == b.doubled_ && a.torsion_ == b.torsion_;
  }

 private:
  ScalarGroup group_;
  IntVec doubled_;
  Int torsion_ = 0;
};

/// The unique square root of g in the divisible hull, which exists when the
/// group has no element of order 2.
inline HalfElement sqrt_element(const GroupElement& g) {
  const ScalarGroup& G = g.group();
  if (minus_one_in_group(G))
    throw HypothesisError(
        "square roots are not unique: -1 lies in the subgroup generated by the parameters and char k != 2");
  const Int& m = G.torsion_order;
  if (m % 2 == 0)
    throw InputError("a field of characteristic 2 has no roots of unity of even order (torsion order " +
                     to_string(m) + ")");
  // 2 * (m+1)/2 == 1 (mod m), so multiplying by (m+1)/2 halves a residue
  Int half = mod_floor(g.torsion_exponent() * ((m + 1) / 2), m);
  return HalfElement(G, g.free_exponents(), half);
}

/// rational * (scalar-group half element) * lambda_1^e_1 ... lambda_n^e_n
class SymbolicCoefficient {
 public:
  SymbolicCoefficient() = default;
  SymbolicCoefficient(Rational r, HalfElement scalar, IntVec lambda_exponents)
      : rational_(std::move(r)), scalar_(std::move(scalar)), lambda_(std::move(lambda_exponents)) {
    normalize();
  }

  static SymbolicCoefficient one(const ScalarGroup& G, std::size_t n) {
    return SymbolicCoefficient(Rational(1), HalfElement(G), IntVec(n));
  }
  static SymbolicCoefficient zero(const ScalarGroup& G, std::size_t n) {
    return SymbolicCoefficient(Rational(0), HalfElement(G), IntVec(n));
  }
  static SymbolicCoefficient scalar(const HalfElement& h, std::size_t n) {
    return SymbolicCoefficient(Rational(1), h, IntVec(n));
  }

  const Rational& rational() const { return rational_; }
  const HalfElement& scalar_part() const { return scalar_; }
  const IntVec& lambda_exponents() const { return lambda_; }
  bool is_zero() const { return rational_ == 0; }

  SymbolicCoefficient operator*(const SymbolicCoefficient& v) const {
    if (lambda_.size() != v.lambda_.size()) throw StructuralError("coefficient lambda arity mismatch");
    IntVec lam = lambda_;
    for (std::size_t j = 0; j < lam.size(); ++j) lam[j] += v.lambda_[j];
    return SymbolicCoefficient(rational_ * v.rational_, scalar_ * v.scalar_, std::move(lam));
  }

  SymbolicCoefficient inverse() const {
    if (is_zero()) throw StructuralError("inverse of zero coefficient");
    IntVec lam = lambda_;
    for (auto& e : lam) e = -e;
    return SymbolicCoefficient(Rational(1) / rational_, scalar_.inverse(), std::move(lam));
  }

  /// Lambda symbols indexed by `zero_coords` are zero on the stratum, so they
  /// may not appear with negative exponent.
  void check_stratum(const std::vector<bool>& zero_coords) const {
    for (std::size_t j = 0; j < lambda_.size() && j < zero_coords.size(); ++j)
      if (zero_coords[j] && lambda_[j] < 0)
        throw StructuralError("negative power of lambda_" + std::to_string(j + 1) +
                              ", which vanishes on this stratum");
  }

  friend bool operator==(const SymbolicCoefficient& a, const SymbolicCoefficient& b) {
    return a.rational_ == b.rational_ && a.scalar_ == b.scalar_ && a.lambda_ == b.lambda_;
  }

 private:
  void normalize() {
    if (rational_ == 0) {
      scalar_ = HalfElement(scalar_.group());
      for (auto& e : lambda_) e = 0;
    }
  }

  Rational rational_ = 1;
  HalfElement scalar_;
  IntVec lambda_;
};

inline SymbolicCoefficient coeff_mul(const SymbolicCoefficient& u, const SymbolicCoefficient& v) { return u * v; }
inline bool coeff_eq(const SymbolicCoefficient& u, const SymbolicCoefficient& v) { return u == v; }

}  // namespace qaffine
