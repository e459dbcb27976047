#pragma once

#include <vector>

#include "ffconv/convolve.hpp"
#include "ffconv/freelimits.hpp"
#include "ffconv/monic_poly.hpp"
#include "ffconv/step_cdf.hpp"

namespace ffconv {

/// Default width of root isolating intervals.
inline constexpr double kDefaultRootTol = 1e-12;

struct MeasureEntry {
  Location location;
  int multiplicity = 0;
};

/// Empirical root distribution: distinct sorted roots with exact multiplicities.
class EmpiricalMeasure {
 public:
  /// Checks strictly increasing locations and positive multiplicities.
  explicit EmpiricalMeasure(std::vector<MeasureEntry> entries);

  const std::vector<MeasureEntry>& entries() const { return entries_; }
  int degree() const { return degree_; }

  /// lambda_1 <= ... <= lambda_d, repeated by multiplicity.
  std::vector<Location> sorted_roots() const;
  const Location& max_root() const { return entries_.back().location; }

  /// m_alpha for an exact location (0 when alpha is not a root).
  int multiplicity_at(const Rational& alpha) const;
  /// Roots strictly below / strictly above alpha, with multiplicity.
  int count_below(const Location& alpha) const;
  int count_above(const Location& alpha) const;

  /// Jumps of multiplicity / d at each root.
  StepCDF cdf() const;

 private:
  std::vector<MeasureEntry> entries_;
  int degree_ = 0;
};

/// Roots with exact multiplicities from a square-free decomposition; DomainError
/// naming the deficit when p is not real-rooted.
EmpiricalMeasure roots_with_multiplicity(const MonicPoly& p, double tol = kDefaultRootTol);

StepCDF empirical_cdf(const MonicPoly& p, double tol = kDefaultRootTol);

struct CutMode {
  enum class Kind { up, down, both };
  Kind kind;
  Rational a;
};

/// Clamps the roots: up a gives min(lambda, a), down a gives max(lambda, a),
/// both a clamps to [-a, a] (a > 0). Kept irrational roots must come as whole
/// irrational factors, otherwise the result is not rational and DomainError is thrown.
MonicPoly cut(const MonicPoly& p, const CutMode& mode);

/// lambda_i(p) <= lambda_i(q) for every i; DimensionError on degree mismatch.
bool partial_order_le(const MonicPoly& p, const MonicPoly& q);

/// p interlaces q, for deg p == deg q or deg p == deg q - 1.
bool interlaces(const MonicPoly& p, const MonicPoly& q);

struct AtomTriplet {
  Rational alpha;
  Rational beta;
  Rational gamma;
  int multiplicity = 0;
  Rational mass;
  /// Predicted CDF of the convolution at gamma, when the theory gives it.
  std::optional<Rational> cdf_at_gamma;
};

/// Trivial roots of p (+) q or p (x) q forced by m^p_alpha + m^q_beta > d;
/// for the multiplicative kind also the origin atom with multiplicity
/// max(m^p_0, m^q_0). Atoms with irrational alpha or beta are UnsupportedError.
std::vector<AtomTriplet> atom_triplets(const MonicPoly& p, const MonicPoly& q, ConvKind kind);

/// Roots lambda_k = inf{x : F(x) >= k/d}, k = 1..d-1, with lambda_{d-1}
/// repeated; d = 1 uses the median.
MonicPoly quantile_poly(const AnalyticCDF& target, int d);
MonicPoly quantile_poly(const StepCDF& target, int d);

/// q = q^(0), ..., q^(l): each step replaces the smallest original root of q
/// with a = max(lambda_max(p), lambda_max(q)) + 1. PreconditionError naming
/// the first i with lambda_i(p) > lambda_{l+i}(q).
std::vector<MonicPoly> interlacing_chain(const MonicPoly& p, const MonicPoly& q, int l);

}  // namespace ffconv
