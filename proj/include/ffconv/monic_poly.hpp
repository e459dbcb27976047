#pragma once

#include <span>
#include <string>
#include <vector>

#include "ffconv/rational.hpp"

namespace ffconv {

/// Monic polynomial of degree d >= 1 with exact rational coefficients.
///
/// Coefficients are kept in descending powers, so coeffs()[0] == 1 and
/// coeffs()[k] is the coefficient of x^(d-k).
class MonicPoly {
 public:
  /// Validates length >= 2 and a leading coefficient of exactly one.
  explicit MonicPoly(std::vector<Rational> coeffs_desc);

  static MonicPoly from_roots(std::span<const Rational> roots);
  /// Exact dyadic expansion of each double root.
  static MonicPoly from_roots(std::span<const double> roots);
  /// x^d.
  static MonicPoly monomial(int degree);
  /// (x - c)^d.
  static MonicPoly power_of_linear(const Rational& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Coefficient of x^power.
  const Rational& coeff_of_power(int power) const { return coeffs_[degree() - power]; }

  Rational operator()(const Rational& x) const;

  friend bool operator==(const MonicPoly&, const MonicPoly&) = default;

  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;
};

MonicPoly from_roots(std::span<const Rational> roots);

/// Normalized elementary symmetric function: (-1)^k coeff(x^(d-k)) / C(d, k).
Rational e_tilde(const MonicPoly& p, int k);

/// Builds the polynomial whose normalized coefficients are e[0..d] (e[0] must be 1).
MonicPoly from_e_tilde(std::span<const Rational> e);

struct Shift {
  Rational c;
};
struct Dilate {
  Rational c;
};
struct Reflect {};
struct Reverse {};

/// p(x - c).
MonicPoly shift(const MonicPoly& p, const Rational& c);
/// Roots multiplied by c; c = 0 gives x^d.
MonicPoly dilate(const MonicPoly& p, const Rational& c);
/// (-1)^d p(-x).
MonicPoly reflect(const MonicPoly& p);
/// Monic polynomial with roots 1/lambda_i; DomainError when p(0) = 0.
MonicPoly reverse(const MonicPoly& p);

MonicPoly transform(const MonicPoly& p, const Shift& t);
MonicPoly transform(const MonicPoly& p, const Dilate& t);
MonicPoly transform(const MonicPoly& p, const Reflect& t);
MonicPoly transform(const MonicPoly& p, const Reverse& t);

/// Monic degree-j polynomial D^(d-j) p / (d!/j!), 1 <= j <= d.
MonicPoly derivative_map(const MonicPoly& p, int j);

}  // namespace ffconv
