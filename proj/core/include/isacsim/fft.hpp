#pragma once

#include <complex>
#include <vector>

namespace isacsim::fft {

/// Forward DFT, unnormalized (sum convention). Thread-safe.
std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& in);

/// Inverse DFT scaled by 1/N, so inverse(forward(x)) == x (up to rounding).
std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>>& in);

/// In-place variants operating on caller storage of size n.
void forward_inplace(std::complex<double>* data, std::size_t n);
void inverse_inplace(std::complex<double>* data, std::size_t n);

}  // namespace isacsim::fft
