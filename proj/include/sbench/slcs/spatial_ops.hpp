#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sbench/core/bit_mask.hpp"
#include "sbench/core/scalar_field.hpp"

namespace sbench::slcs {

enum class Adjacency : int { kFour = 4, kEight = 8 };

/// Parses 4 or 8; throws ConfigError otherwise.
Adjacency adjacency_from_int(int n);

/// Per-pixel component ids; 0 is background, components are numbered from 1
/// in raster-scan order of their first pixel.
struct Labeling {
  int width = 0;
  int height = 0;
  std::uint32_t count = 0;
  std::vector<std::uint32_t> ids;

  std::uint32_t at(int x, int y) const {
    return ids[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x)];
  }
};

/// Closure: dilation by one adjacency step, the pixel itself included.
BitMask op_near(const BitMask& a, Adjacency adj);

/// Dual of near. Pixels outside the image count as not in `a`, so border
/// pixels are never interior.
BitMask op_interior(const BitMask& a, Adjacency adj);

Labeling connected_components(const BitMask& a, Adjacency adj);

/// Union of the connected components of `a` that intersect `b`.
BitMask op_touch(const BitMask& a, const BitMask& b, Adjacency adj);

/// Squared Euclidean distance (pixel centres) to the nearest on-pixel, or
/// kNoSite when the mask is empty.
inline constexpr std::int64_t kNoSite = INT64_MAX;
std::vector<std::int64_t> squared_dt(const BitMask& a);

/// Exact Euclidean distance transform; +inf everywhere for an empty mask.
ScalarField op_dt(const BitMask& a);

/// Unit-step geodesic distance inside `space` from `src` ∩ `space`. +inf
/// outside `space` and at unreachable pixels.
ScalarField op_gdt(const BitMask& space, const BitMask& src, Adjacency adj);

/// Minimum finite value. Throws EvalError when there is none.
double op_minval(const ScalarField& f);

}  // namespace sbench::slcs
