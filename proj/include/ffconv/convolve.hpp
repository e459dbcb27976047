#pragma once

#include <vector>

#include "ffconv/monic_poly.hpp"

namespace ffconv {

enum class ConvKind { additive, multiplicative };

/// Coefficients a_0..a_d of p in the basis r^(k) = D^k (x - 1)^d, D = x d/dx / d.
struct RBasisCoeffs {
  int degree = 0;
  std::vector<Rational> coeffs;
};

/// Finite free additive convolution; DimensionError unless deg p == deg q.
MonicPoly boxplus(const MonicPoly& p, const MonicPoly& q);

/// Finite free multiplicative convolution; DimensionError unless deg p == deg q.
/// Never checks real-rootedness.
MonicPoly boxtimes(const MonicPoly& p, const MonicPoly& q);

MonicPoly convolve(const MonicPoly& p, const MonicPoly& q, ConvKind kind);

RBasisCoeffs expand_in_r_basis(const MonicPoly& p);

/// The r-basis polynomials r^(0..d) as monic polynomials of degree d.
std::vector<MonicPoly> r_basis(int degree);

/// p boxtimes q computed as [(PQ)(D)](x - 1)^d, reducing the powers above d
/// with the expansion of r^(d+1). Must agree exactly with boxtimes.
MonicPoly boxtimes_via_diffop(const MonicPoly& p, const MonicPoly& q);

}  // namespace ffconv
