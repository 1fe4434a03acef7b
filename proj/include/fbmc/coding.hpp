// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace fbmc {

// Rate-1/2 feedforward code. The generator MSB taps the current input bit.
struct ConvCode {
    std::array<unsigned, 2> generators{0133, 0171};
    int constraint_length = 7;
};

// Zero-terminated: output has 2 * (bits.size() + K - 1) bits.
std::vector<std::uint8_t> conv_encode(std::span<const std::uint8_t> bits, const ConvCode& code = {});

// Hard-decision Viterbi, full traceback from the zero state. Input length
// must be even and at least 2 * (K - 1).
std::vector<std::uint8_t> viterbi_decode(std::span<const std::uint8_t> coded, const ConvCode& code = {});

} // namespace fbmc
