#pragma once

#include <vector>

#include "ffconv/detail/qpoly.hpp"

namespace ffconv::detail {

/// Sturm sequence of a square-free integer polynomial, built with
/// content-normalized positive pseudo-remainders.
class SturmSequence {
 public:
  explicit SturmSequence(const ZPoly& squarefree);

  int variations_at(const Rational& x) const;
  int variations_at_plus_infinity() const;
  int variations_at_minus_infinity() const;

  /// Distinct roots in (lo, hi].
  int count(const Rational& lo, const Rational& hi) const;
  /// All distinct real roots.
  int count_all() const;

 private:
  std::vector<ZPoly> chain_;
};

}  // namespace ffconv::detail
