#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qaffine {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;

/// Malformed input (bad file, bad flag values, inconsistent data).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands that do not live in the same structure (different groups, dimensions).
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A computation was requested whose mathematical hypothesis fails
/// (e.g. -1 in the subgroup generated by the parameters).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonnegative residue of a modulo m (m > 0).
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Floor division for m > 0.
inline Int div_floor(const Int& a, const Int& m) {
  Int q = a / m;
  if ((a % m) != 0 && ((a < 0) != (m < 0))) --q;
  return q;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Extended Euclid: returns g = gcd(a, b) >= 0 with x*a + y*b = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw StructuralError("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline IntVec to_int_vec(const std::vector<long long>& v) {
  return IntVec(v.begin(), v.end());
}

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1)
    return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Parse "a" or "a/b" as an exact rational. Throws InputError.
inline Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw InputError("empty integer in rational '" + text + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InputError("bad rational '" + text + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') throw InputError("bad rational '" + text + "'");
    return Int(s[0] == '+' ? s.substr(1) : s);
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

/// r^e for integer e (r must be nonzero when e < 0).
inline Rational rational_pow(const Rational& r, const Int& e) {
  if (e < 0) {
    if (r == 0) throw StructuralError("rational_pow: zero to a negative power");
    return rational_pow(Rational(1) / r, Int(-e));
  }
  Rational result = 1, base = r;
  Int k = e;
  while (k > 0) {
    if ((k & 1) != 0) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace qaffine
