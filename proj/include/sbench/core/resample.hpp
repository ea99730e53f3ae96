#pragma once

#include "sbench/core/bit_mask.hpp"

namespace sbench {

/// Nearest-neighbour upscale by an integer factor: out(x, y) = in(x / k, y / k).
BitMask upsample_nn(const BitMask& mask, int k);

}  // namespace sbench
