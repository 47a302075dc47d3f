#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "ftmodsym/error.hpp"

namespace ftmodsym {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numer(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denom(const Rational& r) { return boost::multiprecision::denominator(r); }

// Always "num/den", including integers ("-3/1", "0/1").
inline std::string format_rational(const Rational& r) {
  return numer(r).str() + "/" + denom(r).str();
}

inline Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(n, d);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed rational '" + s + "'");
  }
}

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

}  // namespace ftmodsym
