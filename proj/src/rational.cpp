#include "ffconv/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>

#include "ffconv/error.hpp"

namespace ffconv {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw ParseError("not an integer literal: '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
      throw ParseError("denominator must be unsigned: '" + std::string(text) + "'");
    }
    Integer den = parse_integer(den_text);
    if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) int_part.remove_prefix(1);
    if (int_part.empty() && frac_part.empty()) throw ParseError("bad decimal: '" + std::string(text) + "'");
    for (char c : frac_part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError("bad decimal: '" + std::string(text) + "'");
      }
    }
    Integer whole = int_part.empty() ? Integer(0) : parse_integer(int_part);
    Integer frac = frac_part.empty() ? Integer(0) : Integer(std::string(frac_part), 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rational r(whole * scale + frac, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot convert a non-finite double to a rational");
  return Rational(value);
}

double to_double(const Rational& value) {
  mpfr_t tmp;
  mpfr_init2(tmp, 53);
  mpfr_set_q(tmp, value.get_mpq_t(), MPFR_RNDN);
  double out = mpfr_get_d(tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

int sign(const Rational& value) { return sgn(value); }

}  // namespace ffconv
