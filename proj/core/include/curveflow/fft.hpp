#pragma once

#include <complex>
#include <vector>

namespace curveflow {

using cdouble = std::complex<double>;

/// Radix-2 complex FFT. Sample counts are powers of two throughout the
/// library (a ClosedCurve invariant), so no general-length machinery is
/// needed; the transform is self-contained, thread-safe and bit-deterministic.
void fft_inplace(std::vector<cdouble>& a, bool inverse);

std::vector<cdouble> fft(std::vector<cdouble> a);   // unnormalized forward
std::vector<cdouble> ifft(std::vector<cdouble> a);  // scaled by 1/n

bool is_power_of_two(std::size_t n);

}  // namespace curveflow
