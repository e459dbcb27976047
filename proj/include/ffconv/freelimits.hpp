#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffconv/convolve.hpp"
#include "ffconv/step_cdf.hpp"

namespace ffconv {

struct Atom {
  Rational location;
  Rational mass;
};

/// Finitely atomic probability measure: distinct locations, positive masses summing to one.
class DiscreteMeasure {
 public:
  /// Sorts by location; DomainError on repeated locations, nonpositive masses, or total != 1.
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  Rational mass_at(const Rational& x) const;
  /// mu((-inf, x]).
  Rational cdf(const Rational& x) const;
  bool is_nonnegative() const { return atoms_.front().location >= 0; }
  StepCDF step_cdf() const;

 private:
  std::vector<Atom> atoms_;
};

/// Closed-form CDF of a reference law.
class AnalyticCDF {
 public:
  enum class Family { point, uniform, arcsine, semicircle, discrete };

  static AnalyticCDF point(const Rational& c);
  static AnalyticCDF uniform(const Rational& a, const Rational& b);
  static AnalyticCDF arcsine(const Rational& a, const Rational& b);
  /// Wigner semicircle with the given mean and variance (radius 2 sigma).
  static AnalyticCDF semicircle(const Rational& mean, const Rational& variance);
  static AnalyticCDF discrete(DiscreteMeasure mu);

  Family family() const { return family_; }
  const std::string& name() const { return name_; }

  double operator()(double x) const;
  double left_limit(double x) const;

  /// Exact F(x) / F(x^-) for the families that have rational closed forms.
  std::optional<Rational> exact_at(const Rational& x) const;
  std::optional<Rational> exact_left_limit(const Rational& x) const;

  std::pair<double, double> support() const { return {lo_, hi_}; }
  /// Point masses; empty for the continuous families.
  std::vector<Atom> atoms() const;
  const std::optional<DiscreteMeasure>& as_discrete() const { return discrete_; }

  /// inf{x : F(x) >= level} for level in (0, 1]; exact where the family allows.
  Location quantile(const Rational& level) const;

  /// Bound on |computed F - true F| for double evaluation.
  double evaluation_error() const;

 private:
  AnalyticCDF(Family family, std::string name) : family_(family), name_(std::move(name)) {}

  Family family_;
  std::string name_;
  Rational a_, b_;  // family parameters, exact
  double lo_ = 0.0, hi_ = 0.0;
  std::optional<DiscreteMeasure> discrete_;
};

/// Builds a reference law by name: arcsine(a, b), semicircle(mean, variance),
/// point(c), uniform(a, b), bernoulli_pm1. DomainError on bad parameters.
AnalyticCDF reference_cdf(const std::string& name, std::span<const Rational> params);

struct FreeAtom {
  Rational location;
  Rational mass;
  /// Predicted F at the atom, when the theory provides it.
  std::optional<Rational> cdf;
};

/// Atoms of mu boxplus nu or mu boxtimes nu, sorted by location. The
/// multiplicative case needs nu supported on [0, inf).
std::vector<FreeAtom> free_atoms(const DiscreteMeasure& mu, const DiscreteMeasure& nu, ConvKind kind);

}  // namespace ffconv
