#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ffconv/detail/qpoly.hpp"
#include "ffconv/detail/real_roots.hpp"
#include "ffconv/detail/sturm_sequence.hpp"
#include "ffconv/sturm.hpp"
#include "test_support.hpp"

namespace ffconv::detail {
namespace {

ZPoly chebyshev(int n) {
  // T_0 = 1, T_1 = x, T_{k+1} = 2x T_k - T_{k-1}
  ZPoly a{1}, b{0, 1};
  for (int k = 1; k < n; ++k) {
    ZPoly c(b.size() + 1);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + 1] += 2 * b[i];
    for (std::size_t i = 0; i < a.size(); ++i) c[i] -= a[i];
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

ZPoly from_rational_roots(const std::vector<Rational>& roots) {
  QPoly p{Rational(1)};
  for (const auto& r : roots) p = mul(p, QPoly{-r, Rational(1)});
  return primitive_integer(p);
}

class Chebyshev : public ::testing::TestWithParam<int> {};

TEST_P(Chebyshev, RootsMatchClosedForm) {
  const int n = GetParam();
  const auto roots = isolate_real_roots(chebyshev(n), 1e-12);
  ASSERT_EQ(static_cast<int>(roots.size()), n);
  for (int k = 1; k <= n; ++k) {
    // Ascending order: k-th root is cos((2(n-k)+1) pi / 2n).
    const double expected = std::cos((2.0 * (n - k) + 1.0) * std::numbers::pi / (2.0 * n));
    const auto& r = roots[k - 1];
    EXPECT_LE(r.hi - r.lo, rational_from_double(1e-12));
    EXPECT_NEAR(r.approx, expected, 1e-14) << "n=" << n << " k=" << k;
    if (std::fabs(expected) < 1e-300) {
      ASSERT_TRUE(r.exact.has_value());
      EXPECT_EQ(*r.exact, 0);
    }
  }
}

// Degrees on both sides of the Sturm limit exercise both isolation paths.
INSTANTIATE_TEST_SUITE_P(Degrees, Chebyshev, ::testing::Values(3, 10, 24, 25, 40, 97, 160));

TEST(RealRoots, ExactRationalRootsAtHighDegree) {
  std::vector<Rational> roots;
  for (int k = 0; k < 60; ++k) roots.push_back(testing::Q(k * k - 300, 7 + (k % 5)));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  const auto found = isolate_real_roots(from_rational_roots(roots), 1e-12);
  ASSERT_EQ(found.size(), roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    ASSERT_TRUE(found[i].exact.has_value()) << i;
    EXPECT_EQ(*found[i].exact, roots[i]);
  }
}

TEST(RealRoots, NearlyCoincidentRootsStaySeparated) {
  std::vector<Rational> roots;
  for (int k = 0; k < 30; ++k) roots.push_back(testing::Q(k, 3));
  Rational tiny(1);
  tiny /= Rational(Integer("100000000000000000000"));
  roots.push_back(Rational(1) + tiny);
  std::sort(roots.begin(), roots.end());
  const auto found = isolate_real_roots(from_rational_roots(roots), 1e-12);
  ASSERT_EQ(found.size(), roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_EQ(found[i].exact.value(), roots[i]);
}

TEST(RealRoots, ComplexPairsFallBackToExactCount) {
  QPoly p{Rational(1), Rational(0), Rational(1)};  // x^2 + 1
  for (int k = 1; k <= 28; ++k) p = mul(p, QPoly{testing::Q(-k, 3), Rational(1)});
  const ZPoly z = primitive_integer(p);
  EXPECT_EQ(count_distinct_real_roots(z), 28);
  EXPECT_EQ(isolate_real_roots(z, 1e-12).size(), 28u);
}

TEST(RealRoots, IrrationalHighDegreeAgreesWithSturm) {
  // prod_{k=1}^{15} (x^2 - k) minus squares: roots +-sqrt(k), k not a square.
  QPoly p{Rational(1)};
  for (int k = 1; k <= 15; ++k) p = mul(p, QPoly{Rational(-k), Rational(0), Rational(1)});
  const ZPoly z = primitive_integer(p);
  const auto roots = isolate_real_roots(z, 1e-12);
  ASSERT_EQ(roots.size(), 30u);
  const SturmSequence sturm(z);
  for (const auto& r : roots) {
    if (r.exact) {
      EXPECT_EQ(sign_at(z, *r.exact), 0);
      continue;
    }
    EXPECT_EQ(sturm.count(r.lo, r.hi), 1);
    const double v = r.approx * r.approx;
    EXPECT_NEAR(v, std::round(v), 1e-12);
  }
}

TEST(RootBound, BoundsEveryRoot) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = ffconv::testing::random_int(rng, 1, 12);
    const auto r = ffconv::testing::random_roots(rng, d, 1000, 3);
    const ZPoly z = from_rational_roots(r);
    const Rational b = root_bound(z);
    for (const auto& x : r) EXPECT_LT(abs(x), b);
  }
}

TEST(SquareFree, DecompositionRecoversMultiplicities) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<Rational, int>> spec;
    const int distinct = ffconv::testing::random_int(rng, 1, 5);
    for (int i = 0; i < distinct; ++i) {
      spec.emplace_back(Rational(i * 3 + ffconv::testing::random_int(rng, 0, 2), 2), ffconv::testing::random_int(rng, 1, 4));
    }
    const auto roots = ffconv::testing::with_multiplicities(spec);
    const auto parts = squarefree_decomposition(from_rational_roots(roots));
    int total = 0;
    for (const auto& [f, m] : parts) total += degree(f) * m;
    EXPECT_EQ(total, static_cast<int>(roots.size()));
    for (const auto& [value, mult] : spec) {
      int found = 0;
      for (const auto& [f, m] : parts) {
        if (sign_at(f, value) == 0) found = m;
      }
      EXPECT_EQ(found, mult);
    }
  }
}

TEST(SquareFree, ModularCertificate) {
  EXPECT_TRUE(squarefree_certificate_mod_p(chebyshev(30)));
  const ZPoly sq = primitive_integer(mul(QPoly{Rational(-1), Rational(1)}, QPoly{Rational(-1), Rational(1)}));
  EXPECT_FALSE(squarefree_certificate_mod_p(sq));
}

}  // namespace
}  // namespace ffconv::detail
