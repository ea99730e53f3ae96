#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sbench/core/bit_mask.hpp"
#include "sbench/slcs/spatial_ops.hpp"

namespace sbench::scenes {

enum class DotShape { kSquare, kDisk };

std::string_view to_string(DotShape s) noexcept;
DotShape dot_shape_from_string(std::string_view s);

/// All lengths are in unit-square coordinates.
struct DotsConfig {
  int n_min = 4;
  int n_max = 10;
  double r_min = 0.05;
  double r_max = 0.09;
  double ref_half_side = 0.04;
  double threshold = 0.35;  // D
  double margin = 0.10;     // epsilon
  double min_separation = 0.02;
  DotShape shape = DotShape::kSquare;
  int min_resolution = 16;
  int max_attempts = 10000;
  bool require_mixed = true;
  /// Extra rejections derived from min_resolution so that rasterized labels
  /// agree with `selected` at every R >= min_resolution (see sampler docs).
  bool raster_guard = true;

  void validate() const;

  friend bool operator==(const DotsConfig&, const DotsConfig&) = default;
};

/// A square of half side `r` or a disk of radius `r`, centred at (x, y).
struct Dot {
  double x = 0.0;
  double y = 0.0;
  double r = 0.0;
  friend bool operator==(const Dot&, const Dot&) = default;
};

struct DotsScene {
  DotsConfig config;
  Dot reference;
  std::vector<Dot> dots;
  std::vector<int> selected;  // ascending indices into `dots`

  friend bool operator==(const DotsScene&, const DotsScene&) = default;
};

/// Closed point-in-shape test.
bool shape_contains(DotShape shape, const Dot& d, double px, double py);

/// Euclidean gap between two shapes, 0 when they overlap. Squares use the
/// per-axis box gap; disks use centre distance minus radii.
double shape_distance(DotShape shape, const Dot& a, const Dot& b);

/// Number of pixel centres ((ix + 0.5) / R, (iy + 0.5) / R) inside the shape.
int covered_pixel_centres(DotShape shape, const Dot& d, int resolution);

/// Reference then dots are placed by rejection (centre: two uniforms, radius:
/// one uniform). A placement is rejected when out of bounds, closer than
/// min_separation to an earlier shape, within margin of the threshold, or
/// covering no pixel centre at min_resolution. Throws GenerationError after
/// max_attempts placements.
///
/// With raster_guard, two more rules apply at R = min_resolution. Every
/// covered pixel centre set lies within sqrt(2)/R of each point of its shape,
/// so rasterization can stretch a shape-to-shape distance by at most
/// 2*sqrt(2)/R and never shrinks it. Dots with distance in
/// (D - 2*sqrt(2)/R, D] are rejected, as are dots within sqrt(2)/R of
/// another dot (their pixels could touch and merge components).
DotsScene sample_dots_scene(std::uint64_t seed, const DotsConfig& cfg);

/// Indices of dots whose distance to the reference is at most the threshold.
std::vector<int> select_dots(const DotsConfig& cfg, const Dot& reference,
                             const std::vector<Dot>& dots);

/// Channel 0 dots, channel 1 reference, sampled at pixel centres.
std::vector<BitMask> rasterize_dots(const DotsScene& scene, int resolution);

/// Rasterizes a single shape.
BitMask rasterize_shape(DotShape shape, const Dot& d, int resolution);

/// Evaluates the reference dots spec with D = threshold * R pixels.
BitMask dots_ground_truth(const std::vector<BitMask>& channels, const DotsConfig& cfg,
                          slcs::Adjacency adjacency = slcs::Adjacency::kFour);

}  // namespace sbench::scenes
