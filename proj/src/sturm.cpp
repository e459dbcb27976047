#include "ffconv/sturm.hpp"

#include "ffconv/detail/real_roots.hpp"
#include "ffconv/detail/sturm_sequence.hpp"
#include "ffconv/error.hpp"

namespace ffconv {

namespace detail {

SturmSequence::SturmSequence(const ZPoly& squarefree) {
  ZPoly p0 = primitive_part(squarefree);
  if (p0.empty()) throw DomainError("Sturm sequence of the zero polynomial");
  chain_.push_back(p0);
  if (degree(p0) == 0) return;
  chain_.push_back(primitive_part(derivative(p0)));
  while (degree(chain_.back()) > 0) {
    ZPoly r = positive_prem(chain_[chain_.size() - 2], chain_.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    // Divide by the positive content only; the sign is part of the sequence.
    Integer g = 0;
    for (const auto& c : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1) {
      for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    chain_.push_back(std::move(r));
  }
}

namespace {

int count_sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int SturmSequence::variations_at(const Rational& x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& p : chain_) signs.push_back(sign_at(p, x));
  return count_sign_changes(signs);
}

int SturmSequence::variations_at_plus_infinity() const {
  std::vector<int> signs;
  for (const auto& p : chain_) signs.push_back(sgn(p.back()));
  return count_sign_changes(signs);
}

int SturmSequence::variations_at_minus_infinity() const {
  std::vector<int> signs;
  for (const auto& p : chain_) {
    int s = sgn(p.back());
    signs.push_back(degree(p) % 2 == 0 ? s : -s);
  }
  return count_sign_changes(signs);
}

int SturmSequence::count(const Rational& lo, const Rational& hi) const {
  return variations_at(lo) - variations_at(hi);
}

int SturmSequence::count_all() const {
  return variations_at_minus_infinity() - variations_at_plus_infinity();
}

}  // namespace detail

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (!(lo < hi)) throw DomainError("interval requires lo < hi");
}

Interval Interval::from_doubles(double lo, double hi) {
  return Interval(rational_from_double(lo), rational_from_double(hi));
}

int sturm_count(const MonicPoly& p, const Interval& iv) {
  using namespace detail;
  QPoly q(p.coeffs().rbegin(), p.coeffs().rend());
  ZPoly z = primitive_integer(q);
  // Work on the square-free part so endpoints that are multiple roots are handled.
  ZPoly sqf = z;
  if (!squarefree_certificate_mod_p(z)) {
    QPoly zq = to_qpoly(z);
    sqf = primitive_integer(exact_div(zq, gcd(zq, derivative(zq))));
  }
  return SturmSequence(sqf).count(iv.lo, iv.hi);
}

int real_root_count(const MonicPoly& p) {
  using namespace detail;
  QPoly q(p.coeffs().rbegin(), p.coeffs().rend());
  int total = 0;
  for (const auto& [factor, mult] : squarefree_decomposition(primitive_integer(q))) {
    total += mult * count_distinct_real_roots(factor);
  }
  return total;
}

bool is_real_rooted(const MonicPoly& p) { return real_root_count(p) == p.degree(); }

}  // namespace ffconv
