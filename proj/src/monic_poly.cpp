#include "ffconv/monic_poly.hpp"

#include <sstream>

#include "ffconv/error.hpp"

namespace ffconv {

MonicPoly::MonicPoly(std::vector<Rational> coeffs_desc) : coeffs_(std::move(coeffs_desc)) {
  if (coeffs_.size() < 2) throw DimensionError("a monic polynomial needs degree >= 1");
  if (coeffs_.front() != 1) {
    throw DomainError("leading coefficient must be 1, got " + ffconv::to_string(coeffs_.front()));
  }
}

MonicPoly MonicPoly::from_roots(std::span<const Rational> roots) {
  if (roots.empty()) throw DimensionError("from_roots: empty root list (degree must be >= 1)");
  std::vector<Rational> c{Rational(1)};
  c.reserve(roots.size() + 1);
  for (const auto& r : roots) {
    c.emplace_back(0);
    for (std::size_t k = c.size() - 1; k >= 1; --k) c[k] -= r * c[k - 1];
  }
  return MonicPoly(std::move(c));
}

MonicPoly MonicPoly::from_roots(std::span<const double> roots) {
  std::vector<Rational> exact;
  exact.reserve(roots.size());
  for (double r : roots) exact.push_back(rational_from_double(r));
  return from_roots(std::span<const Rational>(exact));
}

MonicPoly MonicPoly::monomial(int degree) {
  if (degree < 1) throw DimensionError("degree must be >= 1");
  std::vector<Rational> c(degree + 1);
  c[0] = 1;
  return MonicPoly(std::move(c));
}

MonicPoly MonicPoly::power_of_linear(const Rational& c, int degree) {
  if (degree < 1) throw DimensionError("degree must be >= 1");
  std::vector<Rational> coeffs(degree + 1);
  Rational minus_c_power = 1;
  for (int k = 0; k <= degree; ++k) {
    coeffs[k] = Rational(binomial(degree, k)) * minus_c_power;
    minus_c_power *= -c;
  }
  return MonicPoly(std::move(coeffs));
}

Rational MonicPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (const auto& c : coeffs_) acc = acc * x + c;
  return acc;
}

std::string MonicPoly::to_string() const {
  std::ostringstream os;
  const int d = degree();
  bool first = true;
  for (int k = 0; k <= d; ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    const int power = d - k;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || power == 0) os << ffconv::to_string(mag);
    if (power > 0) os << "x";
    if (power > 1) os << "^" << power;
  }
  return os.str();
}

MonicPoly from_roots(std::span<const Rational> roots) { return MonicPoly::from_roots(roots); }

Rational e_tilde(const MonicPoly& p, int k) {
  const int d = p.degree();
  if (k < 0 || k > d) {
    throw IndexError("e_tilde index " + std::to_string(k) + " outside [0, " + std::to_string(d) + "]");
  }
  Rational out = p.coeffs()[k] / Rational(binomial(d, k));
  return (k % 2 == 0) ? out : Rational(-out);
}

MonicPoly from_e_tilde(std::span<const Rational> e) {
  if (e.size() < 2) throw DimensionError("need e_tilde values for degree >= 1");
  const int d = static_cast<int>(e.size()) - 1;
  std::vector<Rational> c(e.size());
  for (int k = 0; k <= d; ++k) {
    c[k] = e[k] * Rational(binomial(d, k));
    if (k % 2 == 1) c[k] = -c[k];
  }
  return MonicPoly(std::move(c));
}

MonicPoly shift(const MonicPoly& p, const Rational& c) {
  // Taylor shift p(x - c) by repeated synthetic division, in ascending order.
  const int d = p.degree();
  std::vector<Rational> a(p.coeffs().rbegin(), p.coeffs().rend());
  const Rational minus_c = -c;
  for (int i = 0; i < d; ++i) {
    for (int j = d - 1; j >= i; --j) a[j] += minus_c * a[j + 1];
  }
  return MonicPoly(std::vector<Rational>(a.rbegin(), a.rend()));
}

MonicPoly dilate(const MonicPoly& p, const Rational& c) {
  if (c == 0) return MonicPoly::monomial(p.degree());
  std::vector<Rational> out(p.coeffs());
  Rational power = 1;
  for (auto& x : out) {
    x *= power;
    power *= c;
  }
  return MonicPoly(std::move(out));
}

MonicPoly reflect(const MonicPoly& p) {
  std::vector<Rational> out(p.coeffs());
  for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  return MonicPoly(std::move(out));
}

MonicPoly reverse(const MonicPoly& p) {
  const Rational& constant = p.coeffs().back();
  if (constant == 0) throw DomainError("reverse: p(0) = 0, the reversed polynomial is undefined");
  std::vector<Rational> out(p.coeffs().rbegin(), p.coeffs().rend());
  for (auto& x : out) x /= constant;
  return MonicPoly(std::move(out));
}

MonicPoly transform(const MonicPoly& p, const Shift& t) { return shift(p, t.c); }
MonicPoly transform(const MonicPoly& p, const Dilate& t) { return dilate(p, t.c); }
MonicPoly transform(const MonicPoly& p, const Reflect&) { return reflect(p); }
MonicPoly transform(const MonicPoly& p, const Reverse&) { return reverse(p); }

MonicPoly derivative_map(const MonicPoly& p, int j) {
  const int d = p.degree();
  if (j < 1 || j > d) {
    throw IndexError("derivative_map order " + std::to_string(j) + " outside [1, " + std::to_string(d) + "]");
  }
  const int order = d - j;
  // Coefficient of x^n in D^order p is c_n * n!/(n-order)!; dividing by d!/j! keeps it monic.
  const Integer norm = factorial(d) / factorial(j);
  std::vector<Rational> out(j + 1);
  for (int n = order; n <= d; ++n) {
    Rational c = p.coeff_of_power(n) * Rational(factorial(n) / factorial(n - order));
    out[d - n] = c / Rational(norm);
  }
  return MonicPoly(std::move(out));
}

}  // namespace ffconv
