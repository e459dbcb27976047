#include "ffconv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ffconv/error.hpp"

namespace ffconv {

namespace {

// Turns atomic analytic laws into step CDFs; returns nullopt for continuous ones.
std::optional<StepCDF> as_step(const AnyCDF& c) {
  if (const auto* s = std::get_if<StepCDF>(&c)) return *s;
  const auto& a = std::get<AnalyticCDF>(c);
  if (a.as_discrete()) return a.as_discrete()->step_cdf();
  return std::nullopt;
}

DistanceResult exact_result(const Rational& v, double witness, bool exact_inputs) {
  DistanceResult r;
  r.value = to_double(v);
  r.exact_value = v;
  r.exact = exact_inputs;
  r.witness = witness;
  return r;
}

DistanceResult kolmogorov_step_step(const StepCDF& f, const StepCDF& g) {
  Rational best = 0;
  double witness = f.breakpoints().front().approx;
  auto consider = [&](const Location& x) {
    Rational d1 = abs(f.at(x) - g.at(x));
    Rational d2 = abs(f.left_limit(x) - g.left_limit(x));
    if (d1 > best) {
      best = d1;
      witness = x.approx;
    }
    if (d2 > best) {
      best = d2;
      witness = x.approx;
    }
  };
  for (const auto& x : f.breakpoints()) consider(x);
  for (const auto& x : g.breakpoints()) consider(x);
  return exact_result(best, witness, f.is_exact() && g.is_exact());
}

DistanceResult kolmogorov_step_analytic(const StepCDF& f, const AnalyticCDF& g) {
  // G is monotone and F is constant between breakpoints, so the sup is
  // reached at a breakpoint or approached just left of one.
  bool all_exact = true;
  Rational best_exact = 0;
  double best = 0.0;
  double witness = f.breakpoints().front().approx;
  const auto& xs = f.breakpoints();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational f_here = f.values()[i];
    const Rational f_before = i == 0 ? Rational(0) : f.values()[i - 1];
    std::optional<Rational> g_here, g_before;
    if (xs[i].exact) {
      g_here = g.exact_at(*xs[i].exact);
      g_before = g.exact_left_limit(*xs[i].exact);
    }
    if (g_here && g_before) {
      const Rational d = std::max(Rational(abs(f_here - *g_here)), Rational(abs(f_before - *g_before)));
      if (d > best_exact) best_exact = d;
      const double dd = to_double(d);
      if (dd > best) {
        best = dd;
        witness = xs[i].approx;
      }
      continue;
    }
    all_exact = false;
    const double d = std::max(std::fabs(to_double(f_here) - g(xs[i].approx)),
                              std::fabs(to_double(f_before) - g.left_limit(xs[i].approx)));
    if (d > best) {
      best = d;
      witness = xs[i].approx;
    }
  }
  if (all_exact) return exact_result(best_exact, witness, true);
  DistanceResult r;
  r.value = std::min(best, 1.0);
  r.witness = witness;
  r.error_bound = g.evaluation_error();
  return r;
}

// Lévy feasibility of eps for step F against a monotone right-continuous G:
//   max_i F(b_i) - G(b_i + eps) <= eps  and  max_i G((b_{i+1} - eps)^-) - F(b_i) <= eps.
template <class Num, class EvalG, class EvalGLeft>
bool levy_feasible(const std::vector<Num>& b, const std::vector<Num>& fv, const Num& eps, const EvalG& g_at,
                   const EvalGLeft& g_left, double* witness, const std::vector<double>& approx) {
  Num prev_f = Num(0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (fv[i] - g_at(b[i] + eps) > eps) {
      if (witness) *witness = approx[i];
      return false;
    }
    if (g_left(b[i] - eps) - prev_f > eps) {
      if (witness) *witness = approx[i];
      return false;
    }
    prev_f = fv[i];
  }
  return true;
}

DistanceResult levy_exact(const StepCDF& f, const StepCDF& g) {
  std::vector<Rational> b, fv, c, gv;
  std::vector<double> approx;
  for (std::size_t i = 0; i < f.size(); ++i) {
    b.push_back(*f.breakpoints()[i].exact);
    fv.push_back(f.values()[i]);
    approx.push_back(f.breakpoints()[i].approx);
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    c.push_back(*g.breakpoints()[j].exact);
    gv.push_back(g.values()[j]);
  }
  // The infimum sits where a shifted jump of G meets a jump of F, or where
  // eps equals a difference of CDF values.
  std::vector<Rational> cand;
  cand.reserve(b.size() * c.size() + (fv.size() + 1) * (gv.size() + 1) + 1);
  for (const auto& x : b) {
    for (const auto& y : c) {
      Rational d = abs(x - y);
      if (d > 0 && d < 1) cand.push_back(std::move(d));
    }
  }
  std::vector<Rational> fvals = fv, gvals = gv;
  fvals.emplace_back(0);
  gvals.emplace_back(0);
  for (const auto& x : fvals) {
    for (const auto& y : gvals) {
      Rational d = abs(x - y);
      if (d > 0 && d < 1) cand.push_back(std::move(d));
    }
  }
  cand.emplace_back(0);
  cand.emplace_back(1);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  auto g_at = [&](const Rational& x) { return g.at(Location::of(x)); };
  auto g_left = [&](const Rational& x) { return g.left_limit(Location::of(x)); };
  auto feasible = [&](const Rational& eps) {
    return levy_feasible<Rational>(b, fv, eps, g_at, g_left, nullptr, approx);
  };
  // cand[0] = 0 may be feasible; find the first feasible candidate.
  std::size_t lo = 0, hi = cand.size() - 1;  // cand[hi] = 1 is always feasible
  if (feasible(cand[0])) return exact_result(Rational(0), f.breakpoints().front().approx, true);
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (feasible(cand[mid]) ? hi : lo) = mid;
  }
  double witness = f.breakpoints().front().approx;
  levy_feasible<Rational>(b, fv, cand[lo], g_at, g_left, &witness, approx);
  return exact_result(cand[hi], witness, true);
}

template <class EvalG, class EvalGLeft>
DistanceResult levy_bisect(const StepCDF& f, const EvalG& g_at, const EvalGLeft& g_left, double eval_error) {
  std::vector<double> b, fv;
  for (std::size_t i = 0; i < f.size(); ++i) {
    b.push_back(f.breakpoints()[i].approx);
    fv.push_back(to_double(f.values()[i]));
  }
  auto feasible = [&](double eps, double* witness) {
    return levy_feasible<double>(b, fv, eps, g_at, g_left, witness, b);
  };
  double lo = 0.0, hi = 1.0;
  double witness = b.front();
  if (feasible(0.0, nullptr)) {
    hi = 0.0;
  } else {
    for (int it = 0; it < kLevyBisectionSteps; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid, nullptr)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    feasible(lo, &witness);
  }
  // The bracket stops shrinking at one ulp, and forming b +- eps rounds at
  // the scale of the breakpoints.
  double scale = 1.0;
  for (double x : b) scale = std::max(scale, std::fabs(x) + 1.0);
  DistanceResult r;
  r.value = hi;
  r.witness = witness;
  r.error_bound = (hi - lo) + 4.0 * scale * std::numeric_limits<double>::epsilon() + eval_error;
  return r;
}

}  // namespace

DistanceResult kolmogorov(const AnyCDF& f, const AnyCDF& g) {
  auto sf = as_step(f);
  auto sg = as_step(g);
  if (sf && sg) return kolmogorov_step_step(*sf, *sg);
  if (sf) return kolmogorov_step_analytic(*sf, std::get<AnalyticCDF>(g));
  if (sg) return kolmogorov_step_analytic(*sg, std::get<AnalyticCDF>(f));
  throw UnsupportedError("Kolmogorov distance between two continuous analytic laws is not supported");
}

DistanceResult levy(const AnyCDF& f, const AnyCDF& g) {
  auto sf = as_step(f);
  auto sg = as_step(g);
  if (!sf && !sg) throw UnsupportedError("Lévy distance between two continuous analytic laws is not supported");
  if (sf && sg) {
    if (sf->is_exact() && sg->is_exact()) return levy_exact(*sf, *sg);
    auto g_at = [&](double x) { return to_double(sg->at(x)); };
    auto g_left = [&](double x) { return to_double(sg->left_limit(x)); };
    return levy_bisect(*sf, g_at, g_left, 0.0);
  }
  // The definition is symmetric in the two laws, so put the step CDF first.
  const StepCDF& step = sf ? *sf : *sg;
  const AnalyticCDF& an = sf ? std::get<AnalyticCDF>(g) : std::get<AnalyticCDF>(f);
  auto g_at = [&](double x) { return an(x); };
  auto g_left = [&](double x) { return an.left_limit(x); };
  return levy_bisect(step, g_at, g_left, an.evaluation_error());
}

}  // namespace ffconv
