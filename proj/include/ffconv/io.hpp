#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ffconv/freelimits.hpp"
#include "ffconv/measures.hpp"
#include "ffconv/monic_poly.hpp"
#include "ffconv/step_cdf.hpp"

namespace ffconv {

/// {"degree": d, "roots": [...]} or {"coeffs_monic_desc": [...]}; entries are
/// rational strings ("3", "-1/2", "0.25") or JSON integers. ParseError otherwise.
MonicPoly parse_polynomial_json(std::string_view text);
/// Compact {"coeffs_monic_desc":["1","0","-2"]}.
std::string polynomial_to_json(const MonicPoly& p);

/// [{"root": "1", "mult": 3}, ...]; irrational roots are written as decimals.
std::string measure_to_json(const EmpiricalMeasure& m);
EmpiricalMeasure parse_measure_json(std::string_view text);

/// Header "x,F" then one row per breakpoint.
std::string step_cdf_to_csv(const StepCDF& f);
StepCDF parse_step_cdf_csv(std::string_view text);

/// "1/2", or a round-trippable decimal for inexact locations.
std::string location_to_string(const Location& x);
Location parse_location(std::string_view text);

/// "arcsine:-2:2", "semicircle:0:1", "point:3", "uniform:0:1", "bernoulli_pm1",
/// or "discrete:1@1/2:4@1/2".
AnalyticCDF parse_target(std::string_view spec);
/// An atomic law written as a target string (point, bernoulli_pm1, discrete).
DiscreteMeasure parse_discrete_measure(std::string_view spec);

struct SweepRow {
  int degree = 0;
  double d_K = 0.0;
  double d_L = 0.0;
  long long runtime_ms = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Header "degree,d_K,d_L,runtime_ms"; reals printed with 17 significant digits.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

}  // namespace ffconv
