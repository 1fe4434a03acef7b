// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "fbmc/common.hpp"

namespace fbmc::detail {

// In-place unnormalized DFT of length x.size().
//   forward:  X[k] = sum_n x[n] e^{-j 2 pi k n / N}
//   inverse:  x[n] = sum_k X[k] e^{+j 2 pi k n / N}
// Plans are cached per (length, direction); planning is serialized since
// FFTW's planner is not thread-safe, execution is.
void dft_forward(std::span<cd> x);
void dft_inverse(std::span<cd> x);

} // namespace fbmc::detail
