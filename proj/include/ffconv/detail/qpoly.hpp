#pragma once

// Dense univariate polynomial algebra over Q and Z used behind the public API.
// Coefficients are stored in ascending powers; the zero polynomial is empty.

#include <utility>
#include <vector>

#include "ffconv/rational.hpp"

namespace ffconv::detail {

using QPoly = std::vector<Rational>;
using ZPoly = std::vector<Integer>;

int degree(const QPoly& p);
int degree(const ZPoly& p);

void trim(QPoly& p);
void trim(ZPoly& p);

QPoly derivative(const QPoly& p);
ZPoly derivative(const ZPoly& p);

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rational& c);

/// Euclidean division over Q; throws DomainError on division by zero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

/// Exact quotient a / b; the remainder must vanish.
QPoly exact_div(const QPoly& a, const QPoly& b);

/// Monic gcd over Q (computed with a primitive remainder sequence over Z).
QPoly gcd(const QPoly& a, const QPoly& b);

QPoly make_monic(const QPoly& p);

Rational eval(const QPoly& p, const Rational& x);

/// Clears denominators and removes the content; leading coefficient positive.
ZPoly primitive_integer(const QPoly& p);
ZPoly primitive_part(const ZPoly& p);
QPoly to_qpoly(const ZPoly& p);

/// Pseudo-remainder with a positive multiplier |lc(b)|^k, so r has the sign of
/// the true Euclidean remainder up to a positive factor.
ZPoly positive_prem(const ZPoly& a, const ZPoly& b);

/// Exact sign of p(num/den), den > 0.
int sign_at(const ZPoly& p, const Integer& num, const Integer& den);
int sign_at(const ZPoly& p, const Rational& x);

/// Largest coefficient size in bits.
std::size_t max_coeff_bits(const ZPoly& p);

/// Sufficient test for square-freeness: gcd(p, p') = 1 modulo a large prime
/// that divides neither lc(p) nor deg(p) * lc(p). False means "unknown".
bool squarefree_certificate_mod_p(const ZPoly& p);

/// Yun decomposition p = c * prod f_i^i; returns (f_i, i) with non-constant,
/// primitive, pairwise coprime, square-free f_i.
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p);

}  // namespace ffconv::detail
