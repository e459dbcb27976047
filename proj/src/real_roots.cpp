#include "ffconv/detail/real_roots.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "ffconv/detail/sturm_sequence.hpp"
#include "ffconv/error.hpp"

namespace ffconv::detail {

namespace {

// Minimal RAII holder for an mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

Rational to_rational(const Real& x) {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), x.get());
  return out;
}

Real from_rational(const Rational& q, mpfr_prec_t prec) {
  Real out(prec);
  mpfr_set_q(out.get(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

/// x rounded to a multiple of 2^-bits, as an exact rational.
Rational round_dyadic(const Real& x, long bits) {
  Real scaled(mpfr_get_prec(x.get()) + 64);
  mpfr_mul_2si(scaled.get(), x.get(), bits, MPFR_RNDN);
  Integer num;
  mpfr_get_z(num.get_mpz_t(), scaled.get(), MPFR_RNDN);
  Integer den = Integer(1) << static_cast<mp_bitcnt_t>(std::max(bits, 0L));
  Rational out(num, den);
  if (bits < 0) out = Rational(num * (Integer(1) << static_cast<mp_bitcnt_t>(-bits)));
  out.canonicalize();
  return out;
}

/// Smallest k with 2^-k <= value (value > 0).
long bits_below(const Rational& value) {
  long k = 0;
  Rational scaled = value;
  while (scaled < 1) {
    scaled *= 2;
    ++k;
  }
  while (scaled >= 2) {
    scaled /= 2;
    --k;
  }
  return k + 1;
}

// Evaluates p, p', p'' at x by Horner's scheme.
struct Evaluation {
  Real p, dp, ddp;
  explicit Evaluation(mpfr_prec_t prec) : p(prec), dp(prec), ddp(prec) {}
};

void evaluate(const std::vector<Real>& coeffs, const Real& x, Evaluation& out) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  mpfr_set(out.p.get(), coeffs[n].get(), MPFR_RNDN);
  mpfr_set_zero(out.dp.get(), 1);
  mpfr_set_zero(out.ddp.get(), 1);
  for (int i = n - 1; i >= 0; --i) {
    mpfr_fma(out.ddp.get(), out.ddp.get(), x.get(), out.dp.get(), MPFR_RNDN);
    mpfr_fma(out.dp.get(), out.dp.get(), x.get(), out.p.get(), MPFR_RNDN);
    mpfr_fma(out.p.get(), out.p.get(), x.get(), coeffs[i].get(), MPFR_RNDN);
  }
  mpfr_mul_2ui(out.ddp.get(), out.ddp.get(), 1, MPFR_RNDN);
}

// Newton from a start point, confined to [lo, hi]; returns false if it leaves.
bool newton_polish(const std::vector<Real>& coeffs, Real& x, const Real& lo, const Real& hi) {
  const mpfr_prec_t prec = mpfr_get_prec(x.get());
  Evaluation ev(prec);
  Real step(prec), tol(prec);
  for (int it = 0; it < 100; ++it) {
    evaluate(coeffs, x, ev);
    if (mpfr_zero_p(ev.p.get())) return true;
    if (mpfr_zero_p(ev.dp.get())) return false;
    mpfr_div(step.get(), ev.p.get(), ev.dp.get(), MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
    if (mpfr_cmp(x.get(), lo.get()) < 0 || mpfr_cmp(x.get(), hi.get()) > 0) return false;
    mpfr_abs(tol.get(), x.get(), MPFR_RNDN);
    if (mpfr_cmp_ui(tol.get(), 1) < 0) mpfr_set_ui(tol.get(), 1, MPFR_RNDN);
    mpfr_mul_2si(tol.get(), tol.get(), -static_cast<long>(prec) + 8, MPFR_RNDN);
    mpfr_abs(step.get(), step.get(), MPFR_RNDN);
    if (mpfr_cmp(step.get(), tol.get()) <= 0) return true;
  }
  return true;
}

std::vector<Real> to_reals(const ZPoly& p, mpfr_prec_t prec) {
  std::vector<Real> out;
  out.reserve(p.size());
  for (const auto& c : p) {
    Real r(prec);
    mpfr_set_z(r.get(), c.get_mpz_t(), MPFR_RNDN);
    out.push_back(std::move(r));
  }
  return out;
}

/// Tries the continued-fraction convergents of x whose denominators divide
/// the leading coefficient; returns the exact root if one lies in [lo, hi].
std::optional<Rational> detect_rational_root(const ZPoly& p, const Rational& x, const Rational& lo,
                                             const Rational& hi) {
  const Integer& lead = p.back();
  if (p.front() == 0 && lo <= 0 && 0 <= hi) return Rational(0);
  // Numerators of nonzero roots divide the lowest nonzero coefficient.
  std::size_t low = 0;
  while (p[low] == 0) ++low;
  const Integer& constant = p[low];
  // Convergents h/k of x.
  Integer h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  Rational rest = x;
  const Integer abs_lead = abs(lead);
  for (int step = 0; step < 200; ++step) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer h = a * h_prev + h_prev2;
    Integer k = a * k_prev + k_prev2;
    if (k > abs_lead) break;
    if (mpz_divisible_p(lead.get_mpz_t(), k.get_mpz_t()) && h != 0 &&
        mpz_divisible_p(constant.get_mpz_t(), h.get_mpz_t())) {
      Rational cand(h, k);
      cand.canonicalize();
      if (lo <= cand && cand <= hi && sign_at(p, cand) == 0) return cand;
    }
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

mpfr_prec_t polish_precision(const ZPoly& p) {
  return static_cast<mpfr_prec_t>(128 + 2 * max_coeff_bits(p));
}

void finish_root(const ZPoly& p, IsolatedRoot& root, const std::vector<Real>& coeffs, mpfr_prec_t prec) {
  if (root.exact) {
    root.approx = to_double(*root.exact);
    return;
  }
  Real lo = from_rational(root.lo, prec);
  Real hi = from_rational(root.hi, prec);
  Real x = from_rational((root.lo + root.hi) / 2, prec);
  if (!newton_polish(coeffs, x, lo, hi)) x = from_rational((root.lo + root.hi) / 2, prec);
  Rational xq = to_rational(x);
  root.exact = detect_rational_root(p, xq, root.lo, root.hi);
  root.approx = root.exact ? to_double(*root.exact) : mpfr_get_d(x.get(), MPFR_RNDN);
}

// ---------------------------------------------------------------------------
// Exact path: Sturm bisection.

std::vector<IsolatedRoot> isolate_with_sturm(const ZPoly& p, double tol) {
  const SturmSequence sturm(p);
  const Rational bound = root_bound(p);
  const Rational width = rational_from_double(tol);

  std::vector<std::pair<Rational, Rational>> isolated;
  struct Pending {
    Rational lo, hi;
    int count;
  };
  std::vector<Pending> stack;
  const int total = sturm.count(-bound, bound);
  if (total > 0) stack.push_back({-bound, bound, total});
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (cur.count == 1) {
      isolated.emplace_back(cur.lo, cur.hi);
      continue;
    }
    Rational mid = (cur.lo + cur.hi) / 2;
    const int left = sturm.count(cur.lo, mid);
    const int right = cur.count - left;
    if (right > 0) stack.push_back({mid, cur.hi, right});
    if (left > 0) stack.push_back({cur.lo, mid, left});
  }
  std::sort(isolated.begin(), isolated.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<IsolatedRoot> roots;
  roots.reserve(isolated.size());
  for (auto& [lo, hi] : isolated) {
    IsolatedRoot root;
    const int s_hi = sign_at(p, hi);
    if (s_hi == 0) {
      root.lo = root.hi = hi;
      root.exact = hi;
    } else {
      while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        const int s = sign_at(p, mid);
        if (s == 0) {
          lo = hi = mid;
          root.exact = mid;
          break;
        }
        (s == s_hi ? hi : lo) = mid;
      }
      root.lo = lo;
      root.hi = hi;
    }
    roots.push_back(std::move(root));
  }

  const mpfr_prec_t prec = polish_precision(p);
  const auto coeffs = to_reals(p, prec);
  for (auto& root : roots) finish_root(p, root, coeffs, prec);
  return roots;
}

// ---------------------------------------------------------------------------
// Numeric path: Laguerre iteration with implicit deflation in multiprecision,
// followed by an exact sign-change certificate.

std::optional<std::vector<Real>> laguerre_all_roots(const ZPoly& p, const Rational& bound, mpfr_prec_t prec) {
  const int n = degree(p);
  const auto coeffs = to_reals(p, prec);
  const Real upper = from_rational(bound, prec);
  std::vector<Real> found;  // descending
  found.reserve(n);

  Evaluation ev(prec);
  Real x(prec), g(prec), h(prec), t(prec), disc(prec), denom(prec), step(prec), tol(prec);
  const long stop_exp = -static_cast<long>(prec) / 2;

  for (int j = 0; j < n; ++j) {
    const int m = n - j;
    if (j == 0) {
      mpfr_set(x.get(), upper.get(), MPFR_RNDN);
    } else {
      const Real& above = (j >= 2) ? found[j - 2] : upper;
      mpfr_add(x.get(), found[j - 1].get(), above.get(), MPFR_RNDN);
      mpfr_div_2ui(x.get(), x.get(), 1, MPFR_RNDN);
    }
    bool converged = false;
    bool final_step = false;
    for (int it = 0; it < 80; ++it) {
      evaluate(coeffs, x, ev);
      if (mpfr_zero_p(ev.p.get())) {
        converged = true;
        break;
      }
      // g = p'/p - sum 1/(x - r), h = g_full^2 - p''/p - sum 1/(x - r)^2.
      mpfr_div(g.get(), ev.dp.get(), ev.p.get(), MPFR_RNDN);
      mpfr_div(t.get(), ev.ddp.get(), ev.p.get(), MPFR_RNDN);
      mpfr_sqr(h.get(), g.get(), MPFR_RNDN);
      mpfr_sub(h.get(), h.get(), t.get(), MPFR_RNDN);
      for (const auto& r : found) {
        mpfr_sub(t.get(), x.get(), r.get(), MPFR_RNDN);
        if (mpfr_zero_p(t.get())) return std::nullopt;
        mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDN);
        mpfr_sub(g.get(), g.get(), t.get(), MPFR_RNDN);
        mpfr_sqr(t.get(), t.get(), MPFR_RNDN);
        mpfr_sub(h.get(), h.get(), t.get(), MPFR_RNDN);
      }
      // disc = (m - 1)(m h - g^2)
      mpfr_mul_ui(disc.get(), h.get(), m, MPFR_RNDN);
      mpfr_sqr(t.get(), g.get(), MPFR_RNDN);
      mpfr_sub(disc.get(), disc.get(), t.get(), MPFR_RNDN);
      mpfr_mul_ui(disc.get(), disc.get(), m - 1, MPFR_RNDN);
      if (mpfr_sgn(disc.get()) < 0) mpfr_set_zero(disc.get(), 1);
      mpfr_sqrt(disc.get(), disc.get(), MPFR_RNDN);
      if (mpfr_sgn(g.get()) >= 0) {
        mpfr_add(denom.get(), g.get(), disc.get(), MPFR_RNDN);
      } else {
        mpfr_sub(denom.get(), g.get(), disc.get(), MPFR_RNDN);
      }
      if (mpfr_zero_p(denom.get())) return std::nullopt;
      mpfr_ui_div(step.get(), m, denom.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
      if (!mpfr_number_p(x.get())) return std::nullopt;
      if (final_step) {
        converged = true;
        break;
      }
      mpfr_abs(tol.get(), x.get(), MPFR_RNDN);
      if (mpfr_cmp_ui(tol.get(), 1) < 0) mpfr_set_ui(tol.get(), 1, MPFR_RNDN);
      mpfr_mul_2si(tol.get(), tol.get(), stop_exp, MPFR_RNDN);
      mpfr_abs(step.get(), step.get(), MPFR_RNDN);
      if (mpfr_cmp(step.get(), tol.get()) <= 0) final_step = true;
    }
    if (!converged) return std::nullopt;
    if (!found.empty() && mpfr_cmp(x.get(), found.back().get()) >= 0) return std::nullopt;
    found.push_back(x);
  }
  std::reverse(found.begin(), found.end());
  return found;
}

std::optional<std::vector<IsolatedRoot>> certify(const ZPoly& p, const std::vector<Real>& approx,
                                                 const Rational& bound, double tol) {
  const std::size_t n = approx.size();
  std::vector<Rational> separators;
  separators.reserve(n + 1);
  separators.push_back(-bound);
  const mpfr_prec_t prec = mpfr_get_prec(approx.front().get());
  Real gap(prec), mid(prec);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    mpfr_sub(gap.get(), approx[i + 1].get(), approx[i].get(), MPFR_RNDN);
    if (mpfr_sgn(gap.get()) <= 0) return std::nullopt;
    // 2^-k <= gap / 4
    const long k = 3 - static_cast<long>(mpfr_get_exp(gap.get()));
    mpfr_add(mid.get(), approx[i + 1].get(), approx[i].get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    separators.push_back(round_dyadic(mid, k));
  }
  separators.push_back(bound);

  std::vector<int> signs(separators.size());
  for (std::size_t i = 0; i < separators.size(); ++i) {
    signs[i] = sign_at(p, separators[i]);
    if (signs[i] == 0) return std::nullopt;
    if (i > 0 && signs[i] == signs[i - 1]) return std::nullopt;
  }

  // Narrow each bracket to width <= tol around the approximation.
  const long half_bits = bits_below(rational_from_double(tol / 2));
  const Rational half = Rational(1) / Rational(Integer(1) << static_cast<mp_bitcnt_t>(half_bits));
  std::vector<IsolatedRoot> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    IsolatedRoot& root = roots[i];
    const Rational center = round_dyadic(approx[i], half_bits + 2);
    Rational lo = std::max(Rational(center - half), separators[i]);
    Rational hi = std::min(Rational(center + half), separators[i + 1]);
    const int s_lo = (lo == separators[i]) ? signs[i] : sign_at(p, lo);
    const int s_hi = (hi == separators[i + 1]) ? signs[i + 1] : sign_at(p, hi);
    if (s_lo == 0) {
      root.lo = root.hi = lo;
      root.exact = lo;
    } else if (s_hi == 0) {
      root.lo = root.hi = hi;
      root.exact = hi;
    } else if (s_lo != s_hi) {
      root.lo = lo;
      root.hi = hi;
    } else {
      return std::nullopt;
    }
  }
  return roots;
}

std::optional<std::vector<IsolatedRoot>> isolate_numerically(const ZPoly& p, double tol) {
  const Rational bound = root_bound(p);
  const mpfr_prec_t max_prec = static_cast<mpfr_prec_t>(64 * (degree(p) + 64) + 4 * max_coeff_bits(p));
  for (mpfr_prec_t prec = 128; prec <= max_prec; prec *= 2) {
    auto approx = laguerre_all_roots(p, bound, prec);
    if (!approx) continue;
    auto roots = certify(p, *approx, bound, tol);
    if (!roots) continue;
    for (std::size_t i = 0; i < roots->size(); ++i) {
      IsolatedRoot& root = (*roots)[i];
      if (!root.exact) root.exact = detect_rational_root(p, to_rational((*approx)[i]), root.lo, root.hi);
      root.approx = root.exact ? to_double(*root.exact) : mpfr_get_d((*approx)[i].get(), MPFR_RNDN);
    }
    return roots;
  }
  return std::nullopt;
}

}  // namespace

Rational root_bound(const ZPoly& p) {
  // Fujiwara: |z| <= 2 max_i |c_{n-i}/c_n|^(1/i) (last term halved), evaluated in log2.
  const int n = degree(p);
  if (n < 1) return Rational(1);
  auto log2_abs = [](const Integer& v) {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log2(std::fabs(mant)) + static_cast<double>(exp);
  };
  const double log_lead = log2_abs(p.back());
  double best = -1e300;
  for (int i = 1; i <= n; ++i) {
    const Integer& c = p[n - i];
    if (c == 0) continue;
    double term = (log2_abs(c) - log_lead - (i == n ? 1.0 : 0.0)) / i;
    best = std::max(best, term);
  }
  if (best < -1e299) return Rational(1);  // p = lc * x^n
  // Two for Fujiwara's factor, two more of slack against rounding in log2.
  const long exponent = static_cast<long>(std::ceil(best)) + 2;
  if (exponent >= 0) return Rational(Integer(1) << static_cast<mp_bitcnt_t>(exponent));
  return Rational(Integer(1), Integer(1) << static_cast<mp_bitcnt_t>(-exponent));
}

std::vector<IsolatedRoot> isolate_real_roots(const ZPoly& squarefree, double tol) {
  if (!(tol > 0)) throw DomainError("root isolation tolerance must be positive");
  const ZPoly p = primitive_part(squarefree);
  if (degree(p) < 1) return {};
  if (degree(p) == 1) {
    Rational r(-p[0], p[1]);
    r.canonicalize();
    IsolatedRoot root{r, r, to_double(r), r};
    return {root};
  }
  if (degree(p) > kSturmDegreeLimit) {
    if (auto roots = isolate_numerically(p, tol)) return std::move(*roots);
  }
  return isolate_with_sturm(p, tol);
}

int count_distinct_real_roots(const ZPoly& squarefree) {
  const ZPoly p = primitive_part(squarefree);
  if (degree(p) < 1) return 0;
  if (degree(p) > kSturmDegreeLimit) {
    if (auto roots = isolate_numerically(p, 1e-6)) return static_cast<int>(roots->size());
  }
  return SturmSequence(p).count_all();
}

}  // namespace ffconv::detail
