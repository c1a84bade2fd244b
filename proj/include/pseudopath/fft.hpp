#pragma once

#include <complex>
#include <vector>

namespace pseudopath {

/// In-place complex FFTs (FFTW backed). Unnormalized forward transform,
/// inverse divides by n. Not thread safe at plan creation; callers in this
/// library are single threaded per transform.
void fft_forward(std::vector<std::complex<double>>& data);
void fft_inverse(std::vector<std::complex<double>>& data);

/// Angular frequency of DFT bin m for n samples with spacing dx,
/// in the usual wrap-around order (positive then negative).
double fft_omega(std::size_t m, std::size_t n, double dx);

} // namespace pseudopath
