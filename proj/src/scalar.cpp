#include "xdop/scalar.hpp"

#include <cctype>

namespace xdop {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(num, den);  // canonicalizes
  }
  auto dot = s.find('.');
  auto epos = s.find_first_of("eE");
  if (dot == std::string::npos && epos == std::string::npos) {
    return Rational(Integer(s));
  }
  // decimal form: mantissa.fraction[e exp] -> exact rational
  long exp10 = 0;
  if (epos != std::string::npos) {
    exp10 = std::stol(s.substr(epos + 1));
    s = s.substr(0, epos);
    dot = s.find('.');
  }
  std::string digits = s;
  long frac_len = 0;
  if (dot != std::string::npos) {
    frac_len = static_cast<long>(s.size() - dot - 1);
    digits = s.substr(0, dot) + s.substr(dot + 1);
  }
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("bad number '" + std::string(text) + "'");
  // strip leading zeros so gmp does not read the string as octal
  bool negative = digits[0] == '-';
  size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
  size_t first = digits.find_first_not_of('0', start);
  std::string mantissa =
      first == std::string::npos ? "0" : digits.substr(first);
  Rational r{Integer(mantissa)};
  if (negative) r = -r;
  long net = exp10 - frac_len;
  return r * pow_int(Rational(10), net);
}

std::string to_decimal(const Rational& r, int digits) {
  MpFloat x(r);
  return to_decimal(x, digits);
}

std::string to_decimal(const MpFloat& x, int digits) {
  return x.str(digits);
}

std::string to_fraction_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

}  // namespace xdop
