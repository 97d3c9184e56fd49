#pragma once

// Small self-contained complex FFT used by the spectral features.
// Iterative radix-2 for power-of-two lengths, Bluestein's chirp-z
// transform otherwise, so 1-second epochs work at any sampling rate.

#include <complex>
#include <cstddef>
#include <vector>

namespace seizembed {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 FFT; a.size() must be a power of two.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse = false) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

// DFT of arbitrary length via Bluestein: x[k] -> sum_j x[j] e^{-2pi i jk/n}.
inline std::vector<std::complex<double>> dft_bluestein(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  std::vector<std::complex<double>> a(m), b(m);
  std::vector<std::complex<double>> chirp(n);
  for (std::size_t j = 0; j < n; ++j) {
    // angle = pi * j^2 / n, reduced mod 2n to keep the argument small
    const double ang = M_PI * static_cast<double>((j * j) % (2 * n)) / static_cast<double>(n);
    chirp[j] = std::complex<double>(std::cos(ang), -std::sin(ang));
  }
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = x[j] * chirp[j];
    b[j] = std::conj(chirp[j]);
    if (j != 0) b[m - j] = std::conj(chirp[j]);
  }
  fft_pow2(a);
  fft_pow2(b);
  for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
  fft_pow2(a, true);
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
  return out;
}

// Forward DFT of a real signal; returns all n complex bins.
inline std::vector<std::complex<double>> dft_real(const double* x, std::size_t n) {
  std::vector<std::complex<double>> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::complex<double>(x[i], 0.0);
  if (is_pow2(n)) {
    fft_pow2(a);
    return a;
  }
  return dft_bluestein(a);
}

}  // namespace seizembed
