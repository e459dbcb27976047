#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ffconv/convolve.hpp"
#include "ffconv/freelimits.hpp"
#include "ffconv/step_cdf.hpp"

namespace ffconv {

/// Reproducible sub-stream: mt19937_64 seeded from SplitMix64(seed, stream).
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// Dense row-major complex matrix.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::complex<double>> data;

  std::complex<double>& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const std::complex<double>& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// Haar unitary from the QR factorization of a complex Ginibre matrix,
/// with the phases of diag(R) moved into Q.
ComplexMatrix haar_unitary(int d, std::mt19937_64& rng);

struct MCEstimate {
  /// Descending coefficients of the averaged characteristic polynomial.
  std::vector<double> coeff_means;
  std::vector<double> coeff_stderrs;
  long long samples = 0;
  std::uint64_t seed = 0;
};

/// Sample mean of det(xI - A - UBU*) (additive) or det(xI - AUBU*A)
/// (multiplicative), A = diag(a), B = diag(b), U Haar. Work is split into
/// fixed chunks with their own streams and merged in order, so the result
/// does not depend on the thread count.
MCEstimate expected_charpoly_mc(std::span<const double> a, std::span<const double> b, ConvKind kind,
                                long long n, std::uint64_t seed, int threads = 0);

struct SpectralSample {
  StepCDF cdf;
  /// True when mu or nu masses were not integral at the matrix size and
  /// largest-remainder rounding was applied.
  bool rounded = false;
};

/// Pooled eigenvalue CDF of A + UBU* or sqrt(B) U*AU sqrt(B) (same spectrum
/// as the free multiplicative model), A and B diagonal realizations of mu, nu.
SpectralSample spectral_cdf_mc(const DiscreteMeasure& mu, const DiscreteMeasure& nu, ConvKind kind, int matrix_dim,
                               int samples, std::uint64_t seed, int threads = 0);

/// Atom counts summing to dim by largest remainder; sets *rounded when any count was inexact.
std::vector<int> realize_counts(const DiscreteMeasure& mu, int dim, bool* rounded);

}  // namespace ffconv
