#pragma once

#include <cstddef>
#include <vector>

#include "curveflow/fft.hpp"

namespace curveflow::spectral {

/// Fourier coefficients c_k of periodic grid samples g(j/n), normalized so
/// that g(theta) = sum_k c_k exp(2*pi*i*k*theta). Slot i holds wavenumber
/// k = i for i < n/2 and k = i - n otherwise.
std::vector<cdouble> modes(const std::vector<cdouble>& grid);

/// Inverse of modes(): grid samples at theta_j = j/n.
std::vector<cdouble> grid(const std::vector<cdouble>& modes);

int wavenumber(std::size_t slot, std::size_t n);

/// (d/dtheta)^order in mode space. Odd orders zero the Nyquist bin.
std::vector<cdouble> derivative(std::vector<cdouble> m, int order);

/// Periodic part of the antiderivative: k != 0 slots divided by 2*pi*i*k,
/// mean slot set to zero. The linear (mean) part is the caller's business.
std::vector<cdouble> antiderivative_periodic(std::vector<cdouble> m);

/// Direct evaluation of the trigonometric interpolant at arbitrary theta.
cdouble eval(const std::vector<cdouble>& modes, double theta);

/// Zero-padded upsampling to n_new slots (n_new >= n, both powers of two).
std::vector<cdouble> upsample_modes(const std::vector<cdouble>& modes, std::size_t n_new);

std::vector<cdouble> to_complex(const std::vector<double>& re);
std::vector<double> real_part(const std::vector<cdouble>& z);

}  // namespace curveflow::spectral
