#pragma once

#include <optional>
#include <vector>

#include "ffconv/rational.hpp"

namespace ffconv {

/// A real location: a double approximation, plus the exact value when it is
/// rational and known. For irrational roots the approximation is the rounded
/// value of a multiprecision root, so equal reals get equal doubles.
struct Location {
  double approx = 0.0;
  std::optional<Rational> exact;

  static Location of(const Rational& value) { return {to_double(value), value}; }
  static Location of(double value) { return {value, std::nullopt}; }

  bool is_exact() const { return exact.has_value(); }
  /// Exact value if known, otherwise the dyadic value of the approximation.
  Rational as_rational() const { return exact ? *exact : rational_from_double(approx); }
};

/// -1, 0, 1. Exact when both sides are exact, else by approximation.
int compare(const Location& a, const Location& b);
/// Compares against a plain double, exactly when a is exact.
int compare(const Location& a, double x);

/// Right-continuous nondecreasing step function: value[i] on [x_i, x_{i+1}),
/// zero left of x_0; the last value is one.
class StepCDF {
 public:
  StepCDF() = default;
  /// Checks strictly increasing breakpoints, nondecreasing values in (0, 1], last value 1.
  StepCDF(std::vector<Location> breakpoints, std::vector<Rational> values);

  const std::vector<Location>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return breakpoints_.size(); }

  /// F(x).
  Rational at(const Location& x) const;
  Rational at(double x) const { return at(Location::of(x)); }
  /// F(x^-).
  Rational left_limit(const Location& x) const;
  Rational left_limit(double x) const { return left_limit(Location::of(x)); }

  /// True when every breakpoint is exact.
  bool is_exact() const;

  /// inf{x : F(x) >= level}, level in (0, 1].
  const Location& quantile(const Rational& level) const;

 private:
  std::vector<Location> breakpoints_;
  std::vector<Rational> values_;
};

}  // namespace ffconv
