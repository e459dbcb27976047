#include "ffconv/rmt_mc.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "ffconv/error.hpp"

namespace ffconv {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

constexpr long long kChunk = 1024;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MatrixXcd haar(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  MatrixXcd g(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  }
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(d, d);
  const MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0) q.col(j) *= rjj / mag;
  }
  return q;
}

bool is_scalar(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

// Descending coefficients of prod (x - lambda_i).
void vieta(const VectorXd& lambda, std::vector<double>& out) {
  const int d = static_cast<int>(lambda.size());
  out.assign(d + 1, 0.0);
  out[0] = 1.0;
  for (int i = 0; i < d; ++i) {
    for (int k = i + 1; k >= 1; --k) out[k] -= lambda[i] * out[k - 1];
  }
}

VectorXd sample_spectrum(const VectorXd& a, const VectorXd& b, bool b_scalar, ConvKind kind, std::mt19937_64& rng) {
  const int d = static_cast<int>(a.size());
  MatrixXcd ubu;
  if (b_scalar) {
    ubu = MatrixXcd::Identity(d, d) * b[0];
  } else {
    const MatrixXcd u = haar(d, rng);
    ubu = u * b.cast<std::complex<double>>().asDiagonal() * u.adjoint();
  }
  MatrixXcd m;
  if (kind == ConvKind::additive) {
    m = ubu;
    m.diagonal() += a.cast<std::complex<double>>();
  } else {
    m = a.cast<std::complex<double>>().asDiagonal() * ubu * a.cast<std::complex<double>>().asDiagonal();
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

struct Moments {
  long long n = 0;
  std::vector<double> mean, m2;

  void add(const std::vector<double>& x) {
    if (mean.empty()) {
      mean.assign(x.size(), 0.0);
      m2.assign(x.size(), 0.0);
    }
    ++n;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double delta = x[k] - mean[k];
      mean[k] += delta / static_cast<double>(n);
      m2[k] += delta * (x[k] - mean[k]);
    }
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    for (std::size_t k = 0; k < mean.size(); ++k) {
      const double delta = o.mean[k] - mean[k];
      mean[k] += delta * static_cast<double>(o.n) / total;
      m2[k] += o.m2[k] + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    }
    n += o.n;
  }
};

int resolve_threads(int requested, long long jobs) {
  int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  t = std::max(t, 1);
  return static_cast<int>(std::min<long long>(t, std::max<long long>(jobs, 1)));
}

// Runs job(i) for i in [0, jobs) on a fixed pool; each index is independent.
template <class Job>
void run_parallel(long long jobs, int threads, const Job& job) {
  if (threads <= 1) {
    for (long long i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (long long i = t; i < jobs; i += threads) job(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state))};
  return std::mt19937_64(seq);
}

ComplexMatrix haar_unitary(int d, std::mt19937_64& rng) {
  if (d < 1) throw DimensionError("haar_unitary: d must be >= 1");
  const MatrixXcd q = haar(d, rng);
  ComplexMatrix out{d, d, std::vector<std::complex<double>>(static_cast<std::size_t>(d) * d)};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out(i, j) = q(i, j);
  }
  return out;
}

MCEstimate expected_charpoly_mc(std::span<const double> a, std::span<const double> b, ConvKind kind, long long n,
                                std::uint64_t seed, int threads) {
  if (a.size() != b.size()) throw DimensionError("expected_charpoly_mc: A and B sizes differ");
  if (a.empty()) throw DimensionError("expected_charpoly_mc: empty spectrum");
  if (n < 2) throw DomainError("expected_charpoly_mc: need at least 2 samples");
  const int d = static_cast<int>(a.size());
  const VectorXd av = Eigen::Map<const VectorXd>(a.data(), d);
  const VectorXd bv = Eigen::Map<const VectorXd>(b.data(), d);
  const bool b_scalar = is_scalar(b);

  const long long chunks = (n + kChunk - 1) / kChunk;
  std::vector<Moments> parts(chunks);
  run_parallel(chunks, resolve_threads(threads, chunks), [&](long long c) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(c));
    const long long count = std::min(kChunk, n - c * kChunk);
    std::vector<double> coeffs;
    for (long long s = 0; s < count; ++s) {
      vieta(sample_spectrum(av, bv, b_scalar, kind, rng), coeffs);
      parts[c].add(coeffs);
    }
  });
  Moments total;
  for (const auto& p : parts) total.merge(p);

  MCEstimate out;
  out.samples = n;
  out.seed = seed;
  out.coeff_means = total.mean;
  out.coeff_stderrs.resize(total.m2.size());
  for (std::size_t k = 0; k < total.m2.size(); ++k) {
    const double var = std::max(total.m2[k], 0.0) / static_cast<double>(n - 1);
    out.coeff_stderrs[k] = std::sqrt(var / static_cast<double>(n));
  }
  return out;
}

std::vector<int> realize_counts(const DiscreteMeasure& mu, int dim, bool* rounded) {
  const auto& atoms = mu.atoms();
  std::vector<int> counts(atoms.size());
  std::vector<std::pair<Rational, std::size_t>> remainders;
  int assigned = 0;
  bool inexact = false;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Rational share = atoms[i].mass * dim;
    Integer whole;
    mpz_fdiv_q(whole.get_mpz_t(), share.get_num_mpz_t(), share.get_den_mpz_t());
    counts[i] = static_cast<int>(whole.get_si());
    assigned += counts[i];
    const Rational frac = share - Rational(whole);
    if (frac != 0) inexact = true;
    remainders.emplace_back(frac, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (int k = 0; k < dim - assigned; ++k) ++counts[remainders[k].second];
  if (rounded) *rounded = inexact;
  return counts;
}

SpectralSample spectral_cdf_mc(const DiscreteMeasure& mu, const DiscreteMeasure& nu, ConvKind kind, int matrix_dim,
                               int samples, std::uint64_t seed, int threads) {
  if (matrix_dim < 2) throw DimensionError("spectral_cdf_mc: matrix_dim must be >= 2");
  if (samples < 1) throw DomainError("spectral_cdf_mc: need at least one sample");
  if (kind == ConvKind::multiplicative && !nu.is_nonnegative()) {
    throw DomainError("spectral_cdf_mc: multiplicative model needs nu supported on [0, inf)");
  }
  bool rounded_a = false, rounded_b = false;
  const auto ca = realize_counts(mu, matrix_dim, &rounded_a);
  const auto cb = realize_counts(nu, matrix_dim, &rounded_b);
  VectorXd a(matrix_dim), b(matrix_dim);
  for (std::size_t i = 0, k = 0; i < ca.size(); ++i) {
    for (int r = 0; r < ca[i]; ++r) a[k++] = to_double(mu.atoms()[i].location);
  }
  for (std::size_t i = 0, k = 0; i < cb.size(); ++i) {
    for (int r = 0; r < cb[i]; ++r) b[k++] = to_double(nu.atoms()[i].location);
  }
  const bool b_scalar = (b.array() == b[0]).all();
  const VectorXd sqrt_b = b.cwiseSqrt();

  std::vector<VectorXd> spectra(samples);
  run_parallel(samples, resolve_threads(threads, samples), [&](long long s) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(s));
    if (kind == ConvKind::additive) {
      spectra[s] = sample_spectrum(a, b, b_scalar, kind, rng);
      return;
    }
    // sqrt(B) U* A U sqrt(B): Hermitian, and needs only nu >= 0.
    MatrixXcd m;
    if (b_scalar) {
      m = (a * b[0]).cast<std::complex<double>>().asDiagonal();
    } else {
      const MatrixXcd u = haar(matrix_dim, rng);
      m = u.adjoint() * a.cast<std::complex<double>>().asDiagonal() * u;
      m = sqrt_b.cast<std::complex<double>>().asDiagonal() * m * sqrt_b.cast<std::complex<double>>().asDiagonal();
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    spectra[s] = es.eigenvalues();
  });

  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(samples) * matrix_dim);
  for (const auto& s : spectra) pooled.insert(pooled.end(), s.begin(), s.end());
  std::sort(pooled.begin(), pooled.end());
  const long long total = static_cast<long long>(pooled.size());
  std::vector<Location> xs;
  std::vector<Rational> vs;
  for (long long i = 0; i < total; ++i) {
    if (i + 1 < total && pooled[i + 1] == pooled[i]) continue;
    xs.push_back(Location::of(pooled[i]));
    Rational v(static_cast<long>(i + 1), static_cast<long>(total));
    v.canonicalize();
    vs.push_back(std::move(v));
  }
  return {StepCDF(std::move(xs), std::move(vs)), rounded_a || rounded_b};
}

}  // namespace ffconv
