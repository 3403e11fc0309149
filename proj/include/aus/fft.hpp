#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace aus {

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 transform, power-of-two length.
// dir = -1: sum_j a_j e^{-2pi i jk/N} (unscaled); dir = +1: conjugate kernel.
void fft_pow2(std::vector<std::complex<double>>& a, int dir);

// Reference O(N^2) transform, any length; oracle for fft_pow2 in tests.
std::vector<std::complex<double>> dft_naive(const std::vector<std::complex<double>>& a, int dir);

}  // namespace aus
