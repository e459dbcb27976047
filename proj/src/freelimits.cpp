#include "ffconv/freelimits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ffconv/error.hpp"

namespace ffconv {

namespace {

// Smallest double x in (lo, hi] with f(x) >= u, given f(lo) < u <= f(hi).
template <class F>
double smallest_double_reaching(const F& f, double u, double lo, double hi) {
  for (int it = 0; it < 4096; ++it) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (f(mid) >= u ? hi : lo) = mid;
  }
  return hi;
}

std::string param_name(const std::string& family, std::initializer_list<Rational> params) {
  std::string out = family;
  for (const auto& p : params) out += ":" + to_string(p);
  return out;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("discrete measure needs at least one atom");
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
  Rational total = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].mass <= 0) throw DomainError("atom masses must be positive");
    if (i > 0 && atoms_[i].location == atoms_[i - 1].location) {
      throw DomainError("repeated atom location " + to_string(atoms_[i].location));
    }
    total += atoms_[i].mass;
  }
  if (total != 1) throw DomainError("atom masses sum to " + to_string(total) + ", not 1");
}

Rational DiscreteMeasure::mass_at(const Rational& x) const {
  for (const auto& a : atoms_) {
    if (a.location == x) return a.mass;
  }
  return 0;
}

Rational DiscreteMeasure::cdf(const Rational& x) const {
  Rational acc = 0;
  for (const auto& a : atoms_) {
    if (a.location > x) break;
    acc += a.mass;
  }
  return acc;
}

StepCDF DiscreteMeasure::step_cdf() const {
  std::vector<Location> xs;
  std::vector<Rational> vs;
  Rational acc = 0;
  for (const auto& a : atoms_) {
    acc += a.mass;
    xs.push_back(Location::of(a.location));
    vs.push_back(acc);
  }
  return StepCDF(std::move(xs), std::move(vs));
}

AnalyticCDF AnalyticCDF::point(const Rational& c) {
  AnalyticCDF out(Family::point, param_name("point", {c}));
  out.a_ = c;
  out.lo_ = out.hi_ = to_double(c);
  out.discrete_ = DiscreteMeasure({{c, Rational(1)}});
  return out;
}

AnalyticCDF AnalyticCDF::uniform(const Rational& a, const Rational& b) {
  if (!(a < b)) throw DomainError("uniform(a, b) needs a < b");
  AnalyticCDF out(Family::uniform, param_name("uniform", {a, b}));
  out.a_ = a;
  out.b_ = b;
  out.lo_ = to_double(a);
  out.hi_ = to_double(b);
  return out;
}

AnalyticCDF AnalyticCDF::arcsine(const Rational& a, const Rational& b) {
  if (!(a < b)) throw DomainError("arcsine(a, b) needs a < b");
  AnalyticCDF out(Family::arcsine, param_name("arcsine", {a, b}));
  out.a_ = a;
  out.b_ = b;
  out.lo_ = to_double(a);
  out.hi_ = to_double(b);
  return out;
}

AnalyticCDF AnalyticCDF::semicircle(const Rational& mean, const Rational& variance) {
  if (!(variance > 0)) throw DomainError("semicircle needs a positive variance");
  AnalyticCDF out(Family::semicircle, param_name("semicircle", {mean, variance}));
  out.a_ = mean;
  out.b_ = variance;
  const double radius = 2.0 * std::sqrt(to_double(variance));
  out.lo_ = to_double(mean) - radius;
  out.hi_ = to_double(mean) + radius;
  return out;
}

AnalyticCDF AnalyticCDF::discrete(DiscreteMeasure mu) {
  std::string name = "discrete";
  for (const auto& a : mu.atoms()) name += ":" + to_string(a.location) + "@" + to_string(a.mass);
  AnalyticCDF out(Family::discrete, std::move(name));
  out.lo_ = to_double(mu.atoms().front().location);
  out.hi_ = to_double(mu.atoms().back().location);
  out.discrete_ = std::move(mu);
  return out;
}

double AnalyticCDF::operator()(double x) const {
  switch (family_) {
    case Family::point:
    case Family::discrete:
      return to_double(discrete_->cdf(rational_from_double(x)));
    case Family::uniform:
      if (x <= lo_) return 0.0;
      if (x >= hi_) return 1.0;
      return (x - lo_) / (hi_ - lo_);
    case Family::arcsine: {
      if (x <= lo_) return 0.0;
      if (x >= hi_) return 1.0;
      const double t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
      return std::clamp(0.5 + std::asin(std::clamp(t, -1.0, 1.0)) / std::numbers::pi, 0.0, 1.0);
    }
    case Family::semicircle: {
      if (x <= lo_) return 0.0;
      if (x >= hi_) return 1.0;
      const double radius = (hi_ - lo_) / 2;
      const double t = std::clamp((x - to_double(a_)) / radius, -1.0, 1.0);
      return std::clamp(0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / std::numbers::pi, 0.0, 1.0);
    }
  }
  return 0.0;
}

double AnalyticCDF::left_limit(double x) const {
  if (discrete_) {
    const Rational q = rational_from_double(x);
    return to_double(discrete_->cdf(q) - discrete_->mass_at(q));
  }
  return (*this)(x);
}

std::optional<Rational> AnalyticCDF::exact_at(const Rational& x) const {
  switch (family_) {
    case Family::point:
    case Family::discrete:
      return discrete_->cdf(x);
    case Family::uniform:
      if (x <= a_) return Rational(0);
      if (x >= b_) return Rational(1);
      return Rational((x - a_) / (b_ - a_));
    default:
      return std::nullopt;
  }
}

std::optional<Rational> AnalyticCDF::exact_left_limit(const Rational& x) const {
  if (discrete_) return discrete_->cdf(x) - discrete_->mass_at(x);
  return exact_at(x);
}

std::vector<Atom> AnalyticCDF::atoms() const {
  if (discrete_) return discrete_->atoms();
  return {};
}

Location AnalyticCDF::quantile(const Rational& level) const {
  if (level <= 0 || level > 1) throw DomainError("quantile level must lie in (0, 1]");
  switch (family_) {
    case Family::point:
    case Family::discrete: {
      Rational acc = 0;
      for (const auto& a : discrete_->atoms()) {
        acc += a.mass;
        if (acc >= level) return Location::of(a.location);
      }
      return Location::of(discrete_->atoms().back().location);
    }
    case Family::uniform:
      return Location::of(Rational(a_ + level * (b_ - a_)));
    default:
      break;
  }
  if (level == 1) return family_ == Family::arcsine ? Location::of(b_) : Location::of(hi_);
  const double u = to_double(level);
  const double x = smallest_double_reaching([this](double t) { return (*this)(t); }, u, lo_, hi_);
  return Location::of(x);
}

double AnalyticCDF::evaluation_error() const {
  switch (family_) {
    case Family::point:
    case Family::discrete:
      return 0.0;
    case Family::uniform:
      return 1e-15;
    default:
      return 1e-14;
  }
}

AnalyticCDF reference_cdf(const std::string& name, std::span<const Rational> params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw ParseError(name + " takes " + std::to_string(n) + " parameter(s), got " + std::to_string(params.size()));
    }
  };
  if (name == "arcsine") {
    need(2);
    return AnalyticCDF::arcsine(params[0], params[1]);
  }
  if (name == "semicircle") {
    need(2);
    return AnalyticCDF::semicircle(params[0], params[1]);
  }
  if (name == "point") {
    need(1);
    return AnalyticCDF::point(params[0]);
  }
  if (name == "uniform") {
    need(2);
    return AnalyticCDF::uniform(params[0], params[1]);
  }
  if (name == "bernoulli_pm1") {
    need(0);
    return AnalyticCDF::discrete(DiscreteMeasure({{Rational(-1), Rational(1, 2)}, {Rational(1), Rational(1, 2)}}));
  }
  throw ParseError("unknown reference law '" + name + "'");
}

std::vector<FreeAtom> free_atoms(const DiscreteMeasure& mu, const DiscreteMeasure& nu, ConvKind kind) {
  std::vector<FreeAtom> out;
  if (kind == ConvKind::additive) {
    for (const auto& a : mu.atoms()) {
      for (const auto& b : nu.atoms()) {
        if (a.mass + b.mass > 1) {
          out.push_back({a.location + b.location, a.mass + b.mass - 1,
                         Rational(mu.cdf(a.location) + nu.cdf(b.location) - 1)});
        }
      }
    }
  } else {
    if (!nu.is_nonnegative()) throw DomainError("multiplicative free convolution needs nu supported on [0, inf)");
    const Rational zero_mass = std::max(mu.mass_at(0), nu.mass_at(0));
    if (zero_mass > 0) {
      std::optional<Rational> cdf;
      if (mu.is_nonnegative()) cdf = zero_mass;
      out.push_back({Rational(0), zero_mass, cdf});
    }
    const bool both_nonnegative = mu.is_nonnegative();
    for (const auto& a : mu.atoms()) {
      if (a.location == 0) continue;
      for (const auto& b : nu.atoms()) {
        if (b.location == 0 || a.mass + b.mass <= 1) continue;
        std::optional<Rational> cdf;
        if (both_nonnegative) cdf = mu.cdf(a.location) + nu.cdf(b.location) - 1;
        out.push_back({a.location * b.location, a.mass + b.mass - 1, cdf});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const FreeAtom& x, const FreeAtom& y) { return x.location < y.location; });
  return out;
}

}  // namespace ffconv
