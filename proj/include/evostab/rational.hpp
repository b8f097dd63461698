#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "evostab/errors.hpp"

namespace evostab {

// Exact rational scalar. Expression templates are disabled so that `auto`
// always yields a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

namespace detail {

inline bool is_decimal_integer(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

// Parses "a" or "a/b" with decimal integers a and b > 0. `field` names the
// offending location in the error message.
inline Rational parse_rational(std::string_view text, const std::string& field = "rational") {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!detail::is_decimal_integer(num, true))
    throw ParseError(field, "not a rational: \"" + std::string(text) + "\"");
  std::string num_str(num.front() == '+' ? num.substr(1) : num);
  if (slash == std::string_view::npos) return Rational(num_str);
  if (!detail::is_decimal_integer(den, false))
    throw ParseError(field, "bad denominator in \"" + std::string(text) + "\"");
  std::string den_str(den);
  if (den_str.find_first_not_of('0') == std::string::npos)
    throw ParseError(field, "zero denominator in \"" + std::string(text) + "\"");
  // mpq_set_str keeps the fraction as written.
  Rational r(num_str + "/" + den_str);
  mpq_canonicalize(r.backend().data());
  return r;
}

// Canonical "a/b" (or "a" when the denominator is 1).
inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace evostab
