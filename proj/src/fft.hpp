#pragma once

#include <complex>
#include <span>

namespace zakharov::detail {

// In-place unnormalized DFTs of length data.size().
//   forward:  X_k = sum_j x_j e^{-2 pi i jk/m}
//   backward: x_j = sum_k X_k e^{+2 pi i jk/m}
void dft_forward(std::span<std::complex<double>> data);
void dft_backward(std::span<std::complex<double>> data);

}  // namespace zakharov::detail
