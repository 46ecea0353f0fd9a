#include "hrvauth/fft.hpp"

#include <cmath>
#include <cstdint>

namespace hrvauth {

namespace {

using cplx = std::complex<double>;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// In-place iterative radix-2, n a power of two.
void fft_pow2(std::vector<cplx>& a, bool inverse) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& v : a) v /= static_cast<double>(n);
}

// Bluestein's algorithm: DFT of arbitrary n via one circular
// convolution of power-of-two length.
std::vector<cplx> fft_bluestein(const std::vector<cplx>& x) {
  const size_t n = x.size();
  const size_t big_n = 2 * n;
  const size_t conv_len = next_pow2(2 * n - 1);

  // chirp[k] = exp(-i pi k^2 / n), with k^2 reduced mod 2n for accuracy
  std::vector<cplx> chirp(n);
  for (size_t k = 0; k < n; ++k) {
    const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % big_n;
    const double ang = -M_PI * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = cplx(std::cos(ang), std::sin(ang));
  }

  std::vector<cplx> a(conv_len, cplx(0.0, 0.0));
  std::vector<cplx> b(conv_len, cplx(0.0, 0.0));
  for (size_t k = 0; k < n; ++k) {
    a[k] = x[k] * chirp[k];
    b[k] = std::conj(chirp[k]);
    if (k != 0) b[conv_len - k] = std::conj(chirp[k]);
  }
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (size_t k = 0; k < conv_len; ++k) a[k] *= b[k];
  fft_pow2(a, true);

  std::vector<cplx> out(n);
  for (size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
  return out;
}

}  // namespace

std::vector<cplx> fft(const std::vector<cplx>& x) {
  if (x.size() <= 1) return x;
  if (is_pow2(x.size())) {
    std::vector<cplx> a = x;
    fft_pow2(a, false);
    return a;
  }
  return fft_bluestein(x);
}

std::vector<cplx> fft_real(const std::vector<double>& x) {
  std::vector<cplx> c(x.size());
  for (size_t i = 0; i < x.size(); ++i) c[i] = cplx(x[i], 0.0);
  return fft(c);
}

}  // namespace hrvauth
