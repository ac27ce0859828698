#pragma once

// Number backends. Everything downstream is templated on the scalar type S:
//   Rational: arbitrary-precision rationals (GMP); identities are checked to
//              residual exactly 0 on this backend.
//   MpFloat:  MPFR floats with runtime precision (>= 128 bits); comparisons
//              always take an explicit caller tolerance.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xdop {

// expression templates are off so arithmetic yields concrete values that flow
// through templated code and Eigen unchanged
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer  = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                               boost::multiprecision::et_off>;
using MpFloat  = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static const char* backend_name() { return "exact"; }
};

template <>
struct ScalarTraits<MpFloat> {
  static constexpr bool exact = false;
  static std::string backend_name_str();
  static const char* backend_name() {
    static std::string s = backend_name_str();
    return s.c_str();
  }
};

inline int float_precision_bits = 256;

// Sets the working precision of the float backend. Numbers created after this
// call carry the new precision.
inline void set_float_precision(int bits) {
  if (bits < 128) throw std::invalid_argument("float precision must be >= 128 bits");
  float_precision_bits = bits;
  // boost counts decimal digits; 1 bit ~ log10(2) digits
  MpFloat::default_precision(static_cast<unsigned>(bits * 0.30103) + 2);
}

inline std::string ScalarTraits<MpFloat>::backend_name_str() {
  return "float:" + std::to_string(float_precision_bits);
}

// q^n for integer n, n possibly negative; exact on the rational backend.
template <class S>
S pow_int(const S& base, long n) {
  if (n < 0) return S(1) / pow_int(base, -n);
  S r(1), b = base;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline MpFloat to_float(const Rational& r) { return MpFloat(r); }
inline const MpFloat& to_float(const MpFloat& x) { return x; }

template <class S>
S abs_val(const S& x) { return x < 0 ? S(-x) : x; }

// Parses "p/q", "p", or (float backend only) a decimal string.
Rational parse_rational(std::string_view text);

// Decimal rendering of a rational at the given number of significant digits.
std::string to_decimal(const Rational& r, int digits);
std::string to_decimal(const MpFloat& x, int digits);

// "num/den" with positive canonical denominator, the exact serialization format.
std::string to_fraction_string(const Rational& r);

}  // namespace xdop
