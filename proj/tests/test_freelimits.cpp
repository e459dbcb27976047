#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "ffconv/error.hpp"
#include "ffconv/freelimits.hpp"
#include "ffconv/measures.hpp"
#include "test_support.hpp"

namespace ffconv {
namespace {

using testing::random_int;

DiscreteMeasure measure(std::initializer_list<std::pair<Rational, Rational>> atoms) {
  std::vector<Atom> v;
  for (const auto& [x, m] : atoms) v.push_back({x, m});
  return DiscreteMeasure(std::move(v));
}

TEST(ReferenceCDF, Examples) {
  const AnalyticCDF a = AnalyticCDF::arcsine(-2, 2);
  EXPECT_NEAR(a(0.0), 0.5, 1e-15);
  EXPECT_NEAR(a(std::sqrt(2.0)), 0.75, 1e-14);
  const AnalyticCDF p = AnalyticCDF::point(3);
  EXPECT_EQ(p(3.0), 1.0);
  EXPECT_EQ(p.left_limit(3.0), 0.0);
  EXPECT_EQ(p.exact_at(3).value(), 1);
  EXPECT_EQ(p.exact_left_limit(3).value(), 0);
  ASSERT_EQ(p.atoms().size(), 1u);
}

TEST(ReferenceCDF, ByName) {
  const std::vector<Rational> ab{-2, 2};
  EXPECT_EQ(reference_cdf("arcsine", ab).family(), AnalyticCDF::Family::arcsine);
  EXPECT_EQ(reference_cdf("uniform", ab).family(), AnalyticCDF::Family::uniform);
  const std::vector<Rational> mv{0, 1};
  EXPECT_EQ(reference_cdf("semicircle", mv).family(), AnalyticCDF::Family::semicircle);
  const std::vector<Rational> c{5};
  EXPECT_EQ(reference_cdf("point", c).family(), AnalyticCDF::Family::point);
  const auto b = reference_cdf("bernoulli_pm1", {});
  EXPECT_EQ(b.exact_at(0).value(), testing::Q(1, 2));
  EXPECT_EQ(b.exact_at(1).value(), 1);
  EXPECT_EQ(b.exact_left_limit(-1).value(), 0);

  const std::vector<Rational> bad{2, -2};
  EXPECT_THROW(reference_cdf("arcsine", bad), DomainError);
  EXPECT_THROW(reference_cdf("uniform", bad), DomainError);
  const std::vector<Rational> zero_var{0, 0};
  EXPECT_THROW(reference_cdf("semicircle", zero_var), DomainError);
  EXPECT_THROW(reference_cdf("cauchy", ab), ParseError);
}

TEST(ReferenceCDF, MonotoneWithCorrectEndpoints) {
  const AnalyticCDF laws[] = {AnalyticCDF::arcsine(-2, 2), AnalyticCDF::arcsine(1, 4), AnalyticCDF::semicircle(1, 2),
                              AnalyticCDF::uniform(0, 1), AnalyticCDF::point(testing::Q(-1, 4)),
                              reference_cdf("bernoulli_pm1", {})};
  for (const auto& f : laws) {
    const auto [lo, hi] = f.support();
    const double span = hi - lo + 2.0;
    double prev = -1.0;
    for (int i = 0; i <= 10000; ++i) {
      const double x = lo - 1.0 + span * i / 10000.0;
      const double v = f(x);
      EXPECT_GE(v, prev) << f.name() << " at " << x;
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      prev = v;
    }
    EXPECT_NEAR(f.left_limit(lo), 0.0, 1e-12) << f.name();
    EXPECT_NEAR(f(hi), 1.0, 1e-12) << f.name();
  }
}

// Composite Simpson rule on the semicircle density, independent of the closed form.
double semicircle_integral(double mean, double var, double x) {
  const double r = 2.0 * std::sqrt(var);
  const double lo = mean - r;
  if (x <= lo) return 0.0;
  x = std::min(x, mean + r);
  // substitute t = lo + s^2 to tame the square-root edge
  auto density = [&](double t) {
    const double u = t - mean;
    return std::sqrt(std::max(0.0, r * r - u * u)) * 2.0 / (std::numbers::pi * r * r);
  };
  const int n = 20000;
  const double smax = std::sqrt(x - lo);
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = smax * i / n;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * density(lo + s * s) * 2.0 * s;
  }
  return sum * smax / (3.0 * n);
}

TEST(ReferenceCDF, SemicircleMatchesQuadrature) {
  for (const auto& [mean, var] : {std::pair{0.0, 1.0}, std::pair{1.0, 0.25}, std::pair{-2.0, 3.0}}) {
    const AnalyticCDF f = AnalyticCDF::semicircle(rational_from_double(mean), rational_from_double(var));
    for (int i = 1; i < 50; ++i) {
      const double x = mean - 2.0 * std::sqrt(var) + 4.0 * std::sqrt(var) * i / 50.0;
      EXPECT_NEAR(f(x), semicircle_integral(mean, var, x), 1e-8) << x;
    }
  }
}

TEST(ReferenceCDF, ArcsineMatchesClosedForm) {
  const AnalyticCDF f = AnalyticCDF::arcsine(1, 4);
  for (int i = 1; i < 100; ++i) {
    const double x = 1.0 + 3.0 * i / 100.0;
    // 1/2 + arcsin((2x - a - b)/(b - a)) / pi
    EXPECT_NEAR(f(x), 0.5 + std::asin((2.0 * x - 5.0) / 3.0) / std::numbers::pi, 1e-14);
  }
}

TEST(ReferenceCDF, QuantileIsGeneralizedInverse) {
  const AnalyticCDF laws[] = {AnalyticCDF::arcsine(-2, 2), AnalyticCDF::semicircle(0, 1), AnalyticCDF::uniform(-1, 3),
                              reference_cdf("bernoulli_pm1", {})};
  for (const auto& f : laws) {
    for (int k = 1; k <= 16; ++k) {
      const Rational level = testing::Q(k, 16);
      const Location q = f.quantile(level);
      EXPECT_GE(f(q.approx) + f.evaluation_error(), to_double(level)) << f.name() << " " << k;
      const double below = std::nextafter(q.approx, -INFINITY);
      EXPECT_LT(f(below) - f.evaluation_error(), to_double(level)) << f.name() << " " << k;
    }
  }
  EXPECT_EQ(AnalyticCDF::uniform(0, 1).quantile(testing::Q(1, 3)).exact.value(), testing::Q(1, 3));
}

TEST(DiscreteMeasure, Validation) {
  EXPECT_THROW(measure({{0, testing::Q(1, 2)}, {0, testing::Q(1, 2)}}), DomainError);
  EXPECT_THROW(measure({{0, testing::Q(1, 2)}, {1, testing::Q(1, 3)}}), DomainError);
  EXPECT_THROW(measure({{0, testing::Q(3, 2)}, {1, testing::Q(-1, 2)}}), DomainError);
  const auto m = measure({{3, testing::Q(1, 4)}, {-1, testing::Q(3, 4)}});
  EXPECT_EQ(m.atoms().front().location, -1);
  EXPECT_EQ(m.cdf(0), testing::Q(3, 4));
  EXPECT_EQ(m.mass_at(3), testing::Q(1, 4));
  EXPECT_EQ(m.mass_at(2), 0);
  EXPECT_FALSE(m.is_nonnegative());
}

TEST(FreeAtoms, Examples) {
  const auto add = free_atoms(measure({{0, testing::Q(3, 4)}, {5, testing::Q(1, 4)}}),
                              measure({{2, testing::Q(3, 4)}, {7, testing::Q(1, 4)}}), ConvKind::additive);
  ASSERT_EQ(add.size(), 1u);
  EXPECT_EQ(add[0].location, 2);
  EXPECT_EQ(add[0].mass, testing::Q(1, 2));
  EXPECT_EQ(add[0].cdf.value(), testing::Q(1, 2));

  const auto b = measure({{-1, testing::Q(1, 2)}, {1, testing::Q(1, 2)}});
  EXPECT_TRUE(free_atoms(b, b, ConvKind::additive).empty());

  const auto mul = free_atoms(measure({{0, testing::Q(1, 2)}, {1, testing::Q(1, 2)}}),
                              measure({{0, testing::Q(1, 3)}, {3, testing::Q(2, 3)}}), ConvKind::multiplicative);
  ASSERT_EQ(mul.size(), 2u);
  EXPECT_EQ(mul[0].location, 0);
  EXPECT_EQ(mul[0].mass, testing::Q(1, 2));
  EXPECT_EQ(mul[1].location, 3);
  EXPECT_EQ(mul[1].mass, testing::Q(1, 6));

  EXPECT_THROW(free_atoms(b, b, ConvKind::multiplicative), DomainError);
}

// Uniform atomic measure with counts / d, and the polynomial realizing it.
struct Realized {
  DiscreteMeasure mu;
  MonicPoly p;
};

Realized realize(std::mt19937_64& rng, int d, bool nonnegative) {
  std::map<Rational, int> counts;
  for (int i = 0; i < d; ++i) {
    const int v = nonnegative ? random_int(rng, 0, 3) : random_int(rng, -2, 2);
    ++counts[Rational(v)];
  }
  std::vector<Atom> atoms;
  testing::Roots roots;
  for (const auto& [x, c] : counts) {
    atoms.push_back({x, testing::Q(c, d)});
    roots.insert(roots.end(), c, x);
  }
  return {DiscreteMeasure(std::move(atoms)), testing::poly(roots)};
}

TEST(FreeAtoms, AgreeWithFiniteAtoms) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = random_int(rng, 1, 9);
    const ConvKind kind = trial % 2 ? ConvKind::multiplicative : ConvKind::additive;
    const bool nn = kind == ConvKind::multiplicative;
    const Realized a = realize(rng, d, nn), b = realize(rng, d, nn);
    const auto free = free_atoms(a.mu, b.mu, kind);
    auto finite = atom_triplets(a.p, b.p, kind);
    std::map<Rational, Rational> finite_mass;
    for (const auto& t : finite) finite_mass[t.gamma] += t.mass;
    std::map<Rational, Rational> free_mass;
    Rational total = 0;
    for (const auto& f : free) {
      free_mass[f.location] += f.mass;
      total += f.mass;
    }
    EXPECT_LE(total, 1);
    EXPECT_EQ(free_mass, finite_mass) << "trial " << trial;
  }
}

}  // namespace
}  // namespace ffconv
