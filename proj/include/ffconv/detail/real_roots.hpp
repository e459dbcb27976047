#pragma once

#include <optional>
#include <vector>

#include "ffconv/detail/qpoly.hpp"

namespace ffconv::detail {

/// One real root of a square-free polynomial, certified to lie in [lo, hi].
struct IsolatedRoot {
  Rational lo;
  Rational hi;
  double approx = 0.0;
  std::optional<Rational> exact;
};

/// Degrees above this use the certified numeric isolation path first.
inline constexpr int kSturmDegreeLimit = 24;

/// Isolates every real root of a square-free polynomial to an interval of
/// width <= tol, sorted ascending. Rational roots are reported exactly.
std::vector<IsolatedRoot> isolate_real_roots(const ZPoly& squarefree, double tol);

/// Number of distinct real roots of a square-free polynomial.
int count_distinct_real_roots(const ZPoly& squarefree);

/// Root bound: every root has absolute value < the returned power of two.
Rational root_bound(const ZPoly& p);

}  // namespace ffconv::detail
