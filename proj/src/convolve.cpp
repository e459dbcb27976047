#include "ffconv/convolve.hpp"

#include <string>

#include "ffconv/detail/qpoly.hpp"
#include "ffconv/error.hpp"

namespace ffconv {

namespace {

void require_same_degree(const MonicPoly& p, const MonicPoly& q, const char* op) {
  if (p.degree() != q.degree()) {
    throw DimensionError(std::string(op) + ": degree mismatch (" + std::to_string(p.degree()) +
                         " vs " + std::to_string(q.degree()) + ")");
  }
}

// Integer vector c and positive integer den with coeffs = c / den.
struct Cleared {
  std::vector<Integer> num;
  Integer den;
};

Cleared clear_denominators(const std::vector<Rational>& coeffs) {
  Cleared out{{}, 1};
  for (const auto& c : coeffs) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), c.get_den_mpz_t());
  out.num.reserve(coeffs.size());
  for (const auto& c : coeffs) out.num.push_back(c.get_num() * (out.den / c.get_den()));
  return out;
}

// Ascending coefficients of D f for D = x d/dx / d.
detail::QPoly apply_d(const detail::QPoly& f, int d) {
  detail::QPoly out(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) out[n] = f[n] * static_cast<long>(n) / d;
  return out;
}

detail::QPoly ascending(const MonicPoly& p) {
  return detail::QPoly(p.coeffs().rbegin(), p.coeffs().rend());
}

MonicPoly from_ascending(const detail::QPoly& f) {
  return MonicPoly(std::vector<Rational>(f.rbegin(), f.rend()));
}

// Taylor coefficients of f at x = 1, i.e. ascending coefficients of f(x + 1).
detail::QPoly taylor_at_one(detail::QPoly f) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int i = 0; i < n; ++i) {
    for (int j = n - 1; j >= i; --j) f[j] += f[j + 1];
  }
  return f;
}

// r^(0..last) as ascending coefficient vectors, all of degree d.
std::vector<detail::QPoly> r_polys(int d, int last) {
  std::vector<detail::QPoly> out;
  out.reserve(last + 1);
  detail::QPoly f(d + 1);
  for (int k = 0; k <= d; ++k) f[k] = Rational(binomial(d, k)) * ((d - k) % 2 == 0 ? 1 : -1);
  out.push_back(f);
  for (int k = 1; k <= last; ++k) out.push_back(apply_d(out.back(), d));
  return out;
}

std::vector<Rational> solve_in_basis(const detail::QPoly& target, const std::vector<detail::QPoly>& basis,
                                     int d) {
  // r^(k) vanishes to order exactly d - k at 1, so the Taylor system is triangular.
  std::vector<detail::QPoly> t;
  t.reserve(basis.size());
  for (int k = 0; k <= d; ++k) t.push_back(taylor_at_one(basis[k]));
  const detail::QPoly rhs = taylor_at_one(target);
  std::vector<Rational> a(d + 1);
  for (int m = 0; m <= d; ++m) {
    const int k = d - m;
    Rational acc = rhs[m];
    for (int j = k + 1; j <= d; ++j) acc -= a[j] * t[j][m];
    a[k] = acc / t[k][m];
  }
  return a;
}

}  // namespace

MonicPoly boxplus(const MonicPoly& p, const MonicPoly& q) {
  require_same_degree(p, q, "boxplus");
  const int d = p.degree();
  // c_k = sum_{i+j=k} (d-i)!(d-j)! a_i b_j / (d! (d-k)!)
  const Cleared a = clear_denominators(p.coeffs());
  const Cleared b = clear_denominators(q.coeffs());
  std::vector<Integer> fact(d + 1);
  fact[0] = 1;
  for (int i = 1; i <= d; ++i) fact[i] = fact[i - 1] * i;
  std::vector<Integer> u(d + 1), v(d + 1);
  for (int i = 0; i <= d; ++i) {
    u[i] = a.num[i] * fact[d - i];
    v[i] = b.num[i] * fact[d - i];
  }
  std::vector<Rational> c(d + 1);
  const Integer scale = a.den * b.den * fact[d];
  Integer acc;
  for (int k = 0; k <= d; ++k) {
    acc = 0;
    for (int i = 0; i <= k; ++i) mpz_addmul(acc.get_mpz_t(), u[i].get_mpz_t(), v[k - i].get_mpz_t());
    c[k] = Rational(acc, scale * fact[d - k]);
    c[k].canonicalize();
  }
  return MonicPoly(std::move(c));
}

MonicPoly boxtimes(const MonicPoly& p, const MonicPoly& q) {
  require_same_degree(p, q, "boxtimes");
  const int d = p.degree();
  std::vector<Rational> c(d + 1);
  for (int k = 0; k <= d; ++k) {
    c[k] = p.coeffs()[k] * q.coeffs()[k] / Rational(binomial(d, k));
    if (k % 2 == 1) c[k] = -c[k];
  }
  return MonicPoly(std::move(c));
}

MonicPoly convolve(const MonicPoly& p, const MonicPoly& q, ConvKind kind) {
  return kind == ConvKind::additive ? boxplus(p, q) : boxtimes(p, q);
}

std::vector<MonicPoly> r_basis(int degree) {
  if (degree < 1) throw DimensionError("r_basis: degree must be >= 1");
  std::vector<MonicPoly> out;
  for (auto& f : r_polys(degree, degree)) out.push_back(from_ascending(f));
  return out;
}

RBasisCoeffs expand_in_r_basis(const MonicPoly& p) {
  const int d = p.degree();
  return {d, solve_in_basis(ascending(p), r_polys(d, d), d)};
}

MonicPoly boxtimes_via_diffop(const MonicPoly& p, const MonicPoly& q) {
  require_same_degree(p, q, "boxtimes_via_diffop");
  const int d = p.degree();
  const auto basis = r_polys(d, d + 1);
  const std::vector<Rational> a = solve_in_basis(ascending(p), basis, d);
  const std::vector<Rational> b = solve_in_basis(ascending(q), basis, d);
  // r^(d+1) = sum_k c_k r^(k); applying D^(l-1) gives r^(d+l) = sum_k c_k r^(k+l-1).
  const std::vector<Rational> c = solve_in_basis(basis[d + 1], basis, d);

  std::vector<Rational> pq(2 * d + 1);
  for (int i = 0; i <= d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j <= d; ++j) pq[i + j] += a[i] * b[j];
  }
  for (int m = 2 * d; m > d; --m) {
    if (pq[m] == 0) continue;
    const Rational t = pq[m];
    pq[m] = 0;
    for (int k = 0; k <= d; ++k) pq[k + m - d - 1] += t * c[k];
  }

  detail::QPoly out(d + 1);
  for (int k = 0; k <= d; ++k) {
    if (pq[k] == 0) continue;
    for (int n = 0; n <= d; ++n) out[n] += pq[k] * basis[k][n];
  }
  return from_ascending(out);
}

}  // namespace ffconv
