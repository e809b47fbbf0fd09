#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mlfft {

using cplx = std::complex<double>;

// forward: X_l = sum_j x_j e^{-2 pi i j l / n}; inverse uses e^{+...}.
// Neither direction is normalized.
enum class FftDirection { forward, inverse };

// Any length n >= 1: radix-2 for powers of two, Bluestein otherwise.
void fft_inplace(std::vector<cplx>& x, FftDirection dir);
std::vector<cplx> fft_1d(std::span<const cplx> x, FftDirection dir);

// Quadratic reference transform, used by tests.
std::vector<cplx> dft_naive(std::span<const cplx> x, FftDirection dir);

}  // namespace mlfft
