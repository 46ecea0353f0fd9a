#pragma once

#include <complex>
#include <vector>

namespace hrvauth {

/// Forward DFT of an arbitrary-length complex vector. Radix-2
/// Cooley-Tukey when the length is a power of two, Bluestein's chirp-z
/// otherwise, so no zero padding ever changes the spectrum.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);

std::vector<std::complex<double>> fft_real(const std::vector<double>& x);

}  // namespace hrvauth
