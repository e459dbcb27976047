#pragma once

#include <optional>
#include <variant>

#include "ffconv/freelimits.hpp"
#include "ffconv/step_cdf.hpp"

namespace ffconv {

struct DistanceResult {
  double value = 0.0;
  /// Set whenever the value was computed in exact arithmetic.
  std::optional<Rational> exact_value;
  /// True when every input location was exact as well.
  bool exact = false;
  /// Location where the sup is attained or approached.
  double witness = 0.0;
  /// Bound on |value - true distance| from floating-point evaluation.
  double error_bound = 0.0;
};

using AnyCDF = std::variant<StepCDF, AnalyticCDF>;

/// Lévy bisection iterations on [0, 1] when no exact search applies.
inline constexpr int kLevyBisectionSteps = 60;

/// sup |F - G|. Purely atomic analytic laws are handled as step CDFs;
/// two continuous analytic laws are UnsupportedError.
DistanceResult kolmogorov(const AnyCDF& f, const AnyCDF& g);

/// inf{eps > 0 : F(x - eps) - eps <= G(x) <= F(x + eps) + eps for all x}.
DistanceResult levy(const AnyCDF& f, const AnyCDF& g);

}  // namespace ffconv
