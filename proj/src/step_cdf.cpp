#include "ffconv/step_cdf.hpp"

#include <algorithm>

#include "ffconv/error.hpp"

namespace ffconv {

int compare(const Location& a, const Location& b) {
  if (a.exact && b.exact) return cmp(*a.exact, *b.exact) < 0 ? -1 : (cmp(*a.exact, *b.exact) > 0 ? 1 : 0);
  if (a.approx < b.approx) return -1;
  if (a.approx > b.approx) return 1;
  return 0;
}

int compare(const Location& a, double x) {
  if (a.exact) {
    const int c = cmp(*a.exact, rational_from_double(x));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (a.approx < x) return -1;
  if (a.approx > x) return 1;
  return 0;
}

StepCDF::StepCDF(std::vector<Location> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size()) throw DimensionError("StepCDF: breakpoints and values differ in length");
  if (breakpoints_.empty()) throw DimensionError("StepCDF: no breakpoints");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i > 0 && compare(breakpoints_[i - 1], breakpoints_[i]) >= 0) {
      throw DomainError("StepCDF: breakpoints must be strictly increasing");
    }
    if (values_[i] <= 0 || values_[i] > 1 || (i > 0 && values_[i] < values_[i - 1])) {
      throw DomainError("StepCDF: values must be nondecreasing in (0, 1]");
    }
  }
  if (values_.back() != 1) throw DomainError("StepCDF: last value must be 1");
}

Rational StepCDF::at(const Location& x) const {
  // Number of breakpoints <= x.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x,
                             [](const Location& v, const Location& b) { return compare(v, b) < 0; });
  const auto n = it - breakpoints_.begin();
  return n == 0 ? Rational(0) : values_[n - 1];
}

Rational StepCDF::left_limit(const Location& x) const {
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x,
                             [](const Location& b, const Location& v) { return compare(b, v) < 0; });
  const auto n = it - breakpoints_.begin();
  return n == 0 ? Rational(0) : values_[n - 1];
}

bool StepCDF::is_exact() const {
  return std::all_of(breakpoints_.begin(), breakpoints_.end(), [](const Location& b) { return b.is_exact(); });
}

const Location& StepCDF::quantile(const Rational& level) const {
  if (level <= 0 || level > 1) throw DomainError("quantile level must lie in (0, 1]");
  auto it = std::lower_bound(values_.begin(), values_.end(), level);
  return breakpoints_[it - values_.begin()];
}

}  // namespace ffconv
