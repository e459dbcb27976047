#include "ffconv/measures.hpp"

#include <algorithm>
#include <string>

#include "ffconv/detail/qpoly.hpp"
#include "ffconv/detail/real_roots.hpp"
#include "ffconv/error.hpp"

namespace ffconv {

namespace {

using detail::IsolatedRoot;
using detail::QPoly;
using detail::ZPoly;

struct FactorRoots {
  ZPoly factor;
  int multiplicity;
  std::vector<IsolatedRoot> roots;
};

QPoly ascending(const MonicPoly& p) { return QPoly(p.coeffs().rbegin(), p.coeffs().rend()); }

MonicPoly from_ascending(const QPoly& f) {
  const QPoly monic = detail::make_monic(f);
  return MonicPoly(std::vector<Rational>(monic.rbegin(), monic.rend()));
}

std::vector<FactorRoots> analyze(const MonicPoly& p, double tol) {
  const ZPoly zp = detail::primitive_integer(ascending(p));
  std::vector<FactorRoots> out;
  int real = 0;
  for (auto& [factor, mult] : detail::squarefree_decomposition(zp)) {
    auto roots = detail::isolate_real_roots(factor, tol);
    real += mult * static_cast<int>(roots.size());
    out.push_back({std::move(factor), mult, std::move(roots)});
  }
  if (real < p.degree()) {
    throw DomainError("polynomial is not real-rooted: " + std::to_string(real) + " of " +
                      std::to_string(p.degree()) + " roots are real (deficit " +
                      std::to_string(p.degree() - real) + ")");
  }
  return out;
}

bool root_less(const IsolatedRoot& a, const IsolatedRoot& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  if (a.hi < b.lo) return true;
  if (b.hi < a.lo) return false;
  return a.approx < b.approx;
}

Location location_of(const IsolatedRoot& r) {
  if (r.exact) return Location::of(*r.exact);
  return Location::of(r.approx);
}

// Position of a root relative to the rational c: -1 below, 0 equal, 1 above.
int side_of(const ZPoly& factor, IsolatedRoot root, const Rational& c) {
  if (root.exact) return cmp(*root.exact, c) < 0 ? -1 : (*root.exact == c ? 0 : 1);
  // An inexact root is irrational, so it never equals c; shrink the bracket until c is outside.
  const int s_hi = detail::sign_at(factor, root.hi);
  while (!(c < root.lo) && !(root.hi < c)) {
    if (c == root.lo) return 1;
    if (c == root.hi) return -1;
    const Rational mid = (root.lo + root.hi) / 2;
    if (detail::sign_at(factor, mid) == s_hi) {
      root.hi = mid;
    } else {
      root.lo = mid;
    }
  }
  return c < root.lo ? 1 : -1;
}

QPoly linear_power(const Rational& r, int n) {
  QPoly out{Rational(1)};
  const QPoly lin{-r, Rational(1)};
  for (int i = 0; i < n; ++i) out = detail::mul(out, lin);
  return out;
}

QPoly power(const QPoly& f, int n) {
  QPoly out{Rational(1)};
  for (int i = 0; i < n; ++i) out = detail::mul(out, f);
  return out;
}

EmpiricalMeasure measure_from(const std::vector<FactorRoots>& factors) {
  std::vector<std::pair<IsolatedRoot, int>> all;
  for (const auto& f : factors) {
    for (const auto& r : f.roots) all.emplace_back(r, f.multiplicity);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return root_less(a.first, b.first); });
  std::vector<MeasureEntry> entries;
  entries.reserve(all.size());
  for (const auto& [root, mult] : all) entries.push_back({location_of(root), mult});
  return EmpiricalMeasure(std::move(entries));
}

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(std::vector<MeasureEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionError("empirical measure with no roots");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].multiplicity <= 0) throw DomainError("multiplicities must be positive");
    if (i > 0 && compare(entries_[i - 1].location, entries_[i].location) >= 0) {
      throw DomainError("root locations must be strictly increasing");
    }
    degree_ += entries_[i].multiplicity;
  }
}

std::vector<Location> EmpiricalMeasure::sorted_roots() const {
  std::vector<Location> out;
  out.reserve(degree_);
  for (const auto& e : entries_) out.insert(out.end(), e.multiplicity, e.location);
  return out;
}

int EmpiricalMeasure::multiplicity_at(const Rational& alpha) const {
  for (const auto& e : entries_) {
    if (e.location.exact && *e.location.exact == alpha) return e.multiplicity;
  }
  return 0;
}

int EmpiricalMeasure::count_below(const Location& alpha) const {
  int n = 0;
  for (const auto& e : entries_) {
    if (compare(e.location, alpha) < 0) n += e.multiplicity;
  }
  return n;
}

int EmpiricalMeasure::count_above(const Location& alpha) const {
  int n = 0;
  for (const auto& e : entries_) {
    if (compare(e.location, alpha) > 0) n += e.multiplicity;
  }
  return n;
}

StepCDF EmpiricalMeasure::cdf() const {
  std::vector<Location> xs;
  std::vector<Rational> vs;
  xs.reserve(entries_.size());
  vs.reserve(entries_.size());
  int acc = 0;
  for (const auto& e : entries_) {
    acc += e.multiplicity;
    xs.push_back(e.location);
    vs.emplace_back(acc, degree_);
    vs.back().canonicalize();
  }
  return StepCDF(std::move(xs), std::move(vs));
}

EmpiricalMeasure roots_with_multiplicity(const MonicPoly& p, double tol) {
  return measure_from(analyze(p, tol));
}

StepCDF empirical_cdf(const MonicPoly& p, double tol) { return roots_with_multiplicity(p, tol).cdf(); }

MonicPoly cut(const MonicPoly& p, const CutMode& mode) {
  std::optional<Rational> lower, upper;
  switch (mode.kind) {
    case CutMode::Kind::up:
      upper = mode.a;
      break;
    case CutMode::Kind::down:
      lower = mode.a;
      break;
    case CutMode::Kind::both:
      if (mode.a <= 0) throw DomainError("cut both needs a > 0");
      lower = -mode.a;
      upper = mode.a;
      break;
  }
  const auto factors = analyze(p, kDefaultRootTol);
  QPoly result{Rational(1)};
  int to_lower = 0, to_upper = 0;
  for (const auto& f : factors) {
    // Rational roots peel off as linear factors; the rest is irrational.
    QPoly irrational = detail::to_qpoly(f.factor);
    std::vector<const IsolatedRoot*> inexact;
    for (const auto& r : f.roots) {
      if (r.exact) {
        const int below = lower ? side_of(f.factor, r, *lower) : 1;
        const int above = upper ? side_of(f.factor, r, *upper) : -1;
        irrational = detail::exact_div(irrational, QPoly{-*r.exact, Rational(1)});
        if (below < 0) {
          to_lower += f.multiplicity;
        } else if (above > 0) {
          to_upper += f.multiplicity;
        } else {
          result = detail::mul(result, linear_power(*r.exact, f.multiplicity));
        }
        continue;
      }
      inexact.push_back(&r);
    }
    int moved = 0;
    for (const IsolatedRoot* r : inexact) {
      const int below = lower ? side_of(f.factor, *r, *lower) : 1;
      const int above = upper ? side_of(f.factor, *r, *upper) : -1;
      if (below < 0) {
        to_lower += f.multiplicity;
        ++moved;
      } else if (above > 0) {
        to_upper += f.multiplicity;
        ++moved;
      }
    }
    if (moved == 0 && detail::degree(irrational) > 0) {
      result = detail::mul(result, power(irrational, f.multiplicity));
    } else if (moved != static_cast<int>(inexact.size()) ||
               detail::degree(irrational) != static_cast<int>(inexact.size())) {
      throw DomainError("cut: the clamped polynomial has irrational roots that do not form a rational factor");
    }
  }
  if (lower) result = detail::mul(result, linear_power(*lower, to_lower));
  if (upper) result = detail::mul(result, linear_power(*upper, to_upper));
  return from_ascending(result);
}

bool partial_order_le(const MonicPoly& p, const MonicPoly& q) {
  if (p.degree() != q.degree()) throw DimensionError("partial_order_le: degree mismatch");
  const auto rp = roots_with_multiplicity(p).sorted_roots();
  const auto rq = roots_with_multiplicity(q).sorted_roots();
  for (std::size_t i = 0; i < rp.size(); ++i) {
    if (compare(rp[i], rq[i]) > 0) return false;
  }
  return true;
}

bool interlaces(const MonicPoly& p, const MonicPoly& q) {
  const int dp = p.degree();
  const int dq = q.degree();
  if (dp != dq && dp != dq - 1) {
    throw DimensionError("interlaces: needs deg p in {deg q, deg q - 1}, got " + std::to_string(dp) + " and " +
                         std::to_string(dq));
  }
  const auto rp = roots_with_multiplicity(p).sorted_roots();
  const auto rq = roots_with_multiplicity(q).sorted_roots();
  std::vector<const Location*> chain;
  if (dp == dq) {
    for (int i = 0; i < dq; ++i) {
      chain.push_back(&rp[i]);
      chain.push_back(&rq[i]);
    }
  } else {
    for (int i = 0; i < dp; ++i) {
      chain.push_back(&rq[i]);
      chain.push_back(&rp[i]);
    }
    chain.push_back(&rq[dp]);
  }
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (compare(*chain[i - 1], *chain[i]) > 0) return false;
  }
  return true;
}

std::vector<AtomTriplet> atom_triplets(const MonicPoly& p, const MonicPoly& q, ConvKind kind) {
  if (p.degree() != q.degree()) throw DimensionError("atom_triplets: degree mismatch");
  const int d = p.degree();
  const EmpiricalMeasure mp = roots_with_multiplicity(p);
  const EmpiricalMeasure mq = roots_with_multiplicity(q);
  const StepCDF fp = mp.cdf();
  const StepCDF fq = mq.cdf();
  const bool nonnegative =
      compare(mp.entries().front().location, 0.0) >= 0 && compare(mq.entries().front().location, 0.0) >= 0;

  std::vector<AtomTriplet> out;
  if (kind == ConvKind::multiplicative) {
    const int m0 = std::max(mp.multiplicity_at(0), mq.multiplicity_at(0));
    if (m0 > 0) {
      AtomTriplet t{0, 0, 0, m0, Rational(m0, d), std::nullopt};
      t.mass.canonicalize();
      if (nonnegative) t.cdf_at_gamma = t.mass;
      out.push_back(std::move(t));
    }
  }
  for (const auto& a : mp.entries()) {
    for (const auto& b : mq.entries()) {
      const int m = a.multiplicity + b.multiplicity - d;
      if (m <= 0) continue;
      if (!a.location.exact || !b.location.exact) {
        throw UnsupportedError("atom triplet with an irrational root (near " + std::to_string(a.location.approx) +
                               ", " + std::to_string(b.location.approx) + ")");
      }
      const Rational& alpha = *a.location.exact;
      const Rational& beta = *b.location.exact;
      AtomTriplet t;
      t.alpha = alpha;
      t.beta = beta;
      t.multiplicity = m;
      t.mass = Rational(m, d);
      t.mass.canonicalize();
      if (kind == ConvKind::additive) {
        t.gamma = alpha + beta;
        t.cdf_at_gamma = fp.at(a.location) + fq.at(b.location) - 1;
      } else {
        if (alpha == 0 || beta == 0) continue;
        t.gamma = alpha * beta;
        if (nonnegative) t.cdf_at_gamma = fp.at(a.location) + fq.at(b.location) - 1;
      }
      out.push_back(std::move(t));
    }
  }
  std::sort(out.begin(), out.end(), [](const AtomTriplet& x, const AtomTriplet& y) { return x.gamma < y.gamma; });
  return out;
}

namespace {

template <class Target>
MonicPoly quantile_poly_impl(const Target& target, int d) {
  if (d < 1) throw DimensionError("quantile_poly: degree must be >= 1");
  std::vector<Rational> roots;
  roots.reserve(d);
  if (d == 1) {
    roots.push_back(target.quantile(Rational(1, 2)).as_rational());
  } else {
    for (int k = 1; k <= d - 1; ++k) {
      Rational level(k, d);
      level.canonicalize();
      roots.push_back(target.quantile(level).as_rational());
    }
    roots.push_back(roots.back());
  }
  return MonicPoly::from_roots(std::span<const Rational>(roots));
}

}  // namespace

MonicPoly quantile_poly(const AnalyticCDF& target, int d) { return quantile_poly_impl(target, d); }
MonicPoly quantile_poly(const StepCDF& target, int d) { return quantile_poly_impl(target, d); }

std::vector<MonicPoly> interlacing_chain(const MonicPoly& p, const MonicPoly& q, int l) {
  if (p.degree() != q.degree()) throw DimensionError("interlacing_chain: degree mismatch");
  const int d = p.degree();
  if (l < 0 || l > d) throw IndexError("interlacing_chain: l must lie in [0, d]");
  const EmpiricalMeasure mp = roots_with_multiplicity(p);
  const EmpiricalMeasure mq = roots_with_multiplicity(q);
  const auto rp = mp.sorted_roots();
  const auto rq = mq.sorted_roots();
  for (int i = 0; i + l < d; ++i) {
    if (compare(rp[i], rq[i + l]) > 0) {
      throw PreconditionError("interlacing_chain: hypothesis fails at i = " + std::to_string(i + 1) + ": lambda_" +
                              std::to_string(i + 1) + "(p) = " + std::to_string(rp[i].approx) + " > lambda_" +
                              std::to_string(i + 1 + l) + "(q) = " + std::to_string(rq[i + l].approx));
    }
  }
  const Location& top = compare(mp.max_root(), mq.max_root()) >= 0 ? mp.max_root() : mq.max_root();
  const Rational a = top.as_rational() + 1;

  std::vector<MonicPoly> chain{q};
  QPoly cur = ascending(q);
  for (int k = 0; k < l; ++k) {
    if (!rq[k].exact) {
      throw UnsupportedError("interlacing_chain: root lambda_" + std::to_string(k + 1) + "(q) is irrational");
    }
    cur = detail::exact_div(cur, QPoly{-*rq[k].exact, Rational(1)});
    cur = detail::mul(cur, QPoly{-a, Rational(1)});
    chain.push_back(from_ascending(cur));
  }
  return chain;
}

}  // namespace ffconv
