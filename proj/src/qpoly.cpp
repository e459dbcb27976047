#include "ffconv/detail/qpoly.hpp"

#include <algorithm>
#include <cstdint>

#include "ffconv/error.hpp"

namespace ffconv::detail {

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }
int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<unsigned long>(i);
  trim(out);
  return out;
}

ZPoly derivative(const ZPoly& p) {
  if (p.size() <= 1) return {};
  ZPoly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<unsigned long>(i);
  trim(out);
  return out;
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly scale(const QPoly& a, const Rational& c) {
  if (c == 0) return {};
  QPoly out(a);
  for (auto& x : out) x *= c;
  return out;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  QPoly rem(a);
  trim(rem);
  const int db = degree(b);
  if (degree(rem) < db) return {QPoly{}, rem};
  QPoly quot(rem.size() - b.size() + 1);
  const Rational lead_inv = 1 / b.back();
  for (int k = degree(rem); k >= db; --k) {
    Rational c = rem[k] * lead_inv;
    quot[k - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b[j];
  }
  rem.resize(db);
  trim(rem);
  trim(quot);
  return {quot, rem};
}

QPoly exact_div(const QPoly& a, const QPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw DomainError("polynomial division is not exact");
  return q;
}

QPoly make_monic(const QPoly& p) {
  if (p.empty()) return p;
  return scale(p, 1 / p.back());
}

Rational eval(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ZPoly primitive_part(const ZPoly& p) {
  ZPoly out(p);
  trim(out);
  if (out.empty()) return out;
  Integer g = 0;
  for (const auto& c : out) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (out.back() < 0) g = -g;
  if (g != 1) {
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

ZPoly primitive_integer(const QPoly& p) {
  Integer den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Integer factor = den / p[i].get_den();
    out[i] = p[i].get_num() * factor;
  }
  return primitive_part(out);
}

QPoly to_qpoly(const ZPoly& p) {
  QPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = Rational(p[i]);
  return out;
}

ZPoly positive_prem(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw DomainError("pseudo-remainder by zero polynomial");
  ZPoly rem(a);
  trim(rem);
  const int db = degree(b);
  const Integer lead = b.back();
  const Integer abs_lead = abs(lead);
  const int lead_sign = sgn(lead);
  while (degree(rem) >= db) {
    const int shift = degree(rem) - db;
    const Integer top = rem.back();
    for (auto& c : rem) c *= abs_lead;
    for (int j = 0; j <= db; ++j) {
      if (lead_sign > 0) {
        rem[shift + j] -= top * b[j];
      } else {
        rem[shift + j] += top * b[j];
      }
    }
    trim(rem);
  }
  return rem;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  ZPoly x = primitive_integer(a);
  ZPoly y = primitive_integer(b);
  if (x.empty()) return make_monic(to_qpoly(y));
  if (y.empty()) return make_monic(to_qpoly(x));
  if (degree(x) < degree(y)) std::swap(x, y);
  while (!y.empty()) {
    ZPoly r = positive_prem(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  return make_monic(to_qpoly(x));
}

int sign_at(const ZPoly& p, const Integer& num, const Integer& den) {
  if (p.empty()) return 0;
  // den^n p(num/den) = sum c_i num^i den^(n-i), by Horner.
  Integer acc = p.back();
  Integer den_power = 1;
  for (int i = degree(p) - 1; i >= 0; --i) {
    den_power *= den;
    acc *= num;
    acc += p[i] * den_power;
  }
  return sgn(acc);
}

int sign_at(const ZPoly& p, const Rational& x) { return sign_at(p, x.get_num(), x.get_den()); }

std::size_t max_coeff_bits(const ZPoly& p) {
  std::size_t bits = 0;
  for (const auto& c : p) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return bits;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 out = 1;
  while (exp) {
    if (exp & 1) out = mulmod(out, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return out;
}

std::vector<u64> reduce_mod(const ZPoly& p, u64 m) {
  std::vector<u64> out(p.size());
  Integer mod(std::to_string(m));
  Integer r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    mpz_fdiv_r(r.get_mpz_t(), p[i].get_mpz_t(), mod.get_mpz_t());
    out[i] = std::stoull(r.get_str());
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Degree of gcd(a, b) over Z/m, m prime.
int gcd_degree_mod(std::vector<u64> a, std::vector<u64> b, u64 m) {
  while (!b.empty()) {
    const u64 inv = powmod(b.back(), m - 2, m);
    while (a.size() >= b.size()) {
      const u64 c = mulmod(a.back(), inv, m);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = (a[shift + j] + m - mulmod(c, b[j], m)) % m;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace

bool squarefree_certificate_mod_p(const ZPoly& p) {
  if (degree(p) <= 1) return true;
  Integer candidate = Integer(1) << 61;
  for (int attempt = 0; attempt < 3; ++attempt) {
    mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
    const u64 m = std::stoull(candidate.get_str());
    Integer lead_times_deg = p.back() * static_cast<unsigned long>(degree(p));
    if (mpz_divisible_p(lead_times_deg.get_mpz_t(), candidate.get_mpz_t())) continue;
    auto f = reduce_mod(p, m);
    auto df = reduce_mod(derivative(p), m);
    if (gcd_degree_mod(f, df, m) == 0) return true;
  }
  return false;
}

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p) {
  ZPoly f = primitive_part(p);
  if (degree(f) <= 0) return {};
  if (squarefree_certificate_mod_p(f)) return {{f, 1}};

  const QPoly fq = make_monic(to_qpoly(f));
  const QPoly dfq = derivative(fq);
  const QPoly a0 = gcd(fq, dfq);
  if (degree(a0) == 0) return {{f, 1}};

  std::vector<std::pair<ZPoly, int>> out;
  QPoly b = exact_div(fq, a0);
  QPoly c = exact_div(dfq, a0);
  QPoly d = sub(c, derivative(b));
  for (int i = 1; degree(b) > 0; ++i) {
    QPoly a = gcd(b, d);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = sub(c, derivative(b));
    if (degree(a) > 0) out.emplace_back(primitive_integer(a), i);
  }
  return out;
}

}  // namespace ffconv::detail
