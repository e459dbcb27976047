#pragma once

#include "ffconv/monic_poly.hpp"
#include "ffconv/rational.hpp"

namespace ffconv {

/// Half-open real interval (lo, hi] with finite endpoints, lo < hi.
struct Interval {
  Rational lo;
  Rational hi;

  Interval(Rational lo_, Rational hi_);
  static Interval from_doubles(double lo, double hi);
};

/// Number of distinct real roots of p in (lo, hi], from an exact Sturm sequence.
int sturm_count(const MonicPoly& p, const Interval& iv);

/// True iff p has d real roots counted with multiplicity.
bool is_real_rooted(const MonicPoly& p);

/// Real roots counted with multiplicity.
int real_root_count(const MonicPoly& p);

}  // namespace ffconv
