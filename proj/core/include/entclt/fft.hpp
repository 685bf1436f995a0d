#pragma once

#include <complex>
#include <vector>

namespace entclt {

// In-place iterative radix-2 transform; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

// Linear convolution of two real sequences (length na + nb - 1) via
// zero-padded FFT. Deterministic: no plan-dependent execution paths.
std::vector<double> convolve_real(const std::vector<double>& a,
                                  const std::vector<double>& b);

}  // namespace entclt
