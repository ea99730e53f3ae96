#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sbench/core/bit_mask.hpp"
#include "sbench/slcs/spatial_ops.hpp"

namespace sbench::scenes {

enum class LabelMode { kShortest, kCorridor };

std::string_view to_string(LabelMode m) noexcept;
LabelMode label_mode_from_string(std::string_view s);

struct MazeConfig {
  int cells_x = 4;
  int cells_y = 4;
  double connection_probability = 0.7;
  LabelMode label_mode = LabelMode::kShortest;
  int tol = 0;
  int max_attempts = 1000;

  /// Throws ConfigError when a field is out of range.
  void validate() const;

  int horizontal_walls() const { return (cells_x - 1) * cells_y; }
  int vertical_walls() const { return cells_x * (cells_y - 1); }
  int internal_walls() const { return horizontal_walls() + vertical_walls(); }

  friend bool operator==(const MazeConfig&, const MazeConfig&) = default;
};

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Internal walls are numbered horizontally-adjacent pairs first, then
/// vertically-adjacent pairs, each group in row-major order:
///   wall between (cx, cy) and (cx + 1, cy): cy * (cells_x - 1) + cx
///   wall between (cx, cy) and (cx, cy + 1): horizontal_walls + cy * cells_x + cx
struct MazeScene {
  MazeConfig config;
  std::vector<bool> open_walls;  // indexed by wall id
  Cell entry;
  Cell exit;

  bool open_right(int cx, int cy) const;  // wall between (cx,cy) and (cx+1,cy)
  bool open_down(int cx, int cy) const;   // wall between (cx,cy) and (cx,cy+1)
  int open_count() const;

  friend bool operator==(const MazeScene&, const MazeScene&) = default;
};

/// True when entry and exit are linked through open walls.
bool cells_connected(const MazeScene& scene);

/// Draws entry, exit, then one uniform per internal wall. Walls are
/// resampled with entry and exit held fixed until the two cells connect;
/// throws GenerationError after config.max_attempts wall draws.
MazeScene sample_maze_scene(std::uint64_t seed, const MazeConfig& cfg);

/// Same stream as sample_maze_scene but returns the first wall draw without
/// the connectivity requirement.
MazeScene sample_maze_scene_unchecked(std::uint64_t seed, const MazeConfig& cfg);

struct MazeGeometry {
  int resolution;
  int wall;     // t = R / 16
  int pitch_x;  // R / cells_x
  int pitch_y;  // R / cells_y
};

/// Throws ConfigError unless R is a positive multiple of 16 and of both
/// cell counts, with room for a non-empty interior in every cell.
MazeGeometry maze_geometry(const MazeConfig& cfg, int resolution);

/// Channel 0 walls, channel 1 entry-cell interior, channel 2 exit-cell interior.
std::vector<BitMask> rasterize_maze(const MazeScene& scene, int resolution);

/// Interior pixels of one cell (its block minus wall bands).
BitMask cell_interior(const MazeConfig& cfg, Cell cell, int resolution);

/// Evaluates the reference maze spec selected by cfg.label_mode.
BitMask maze_ground_truth(const std::vector<BitMask>& channels, const MazeConfig& cfg,
                          slcs::Adjacency adjacency = slcs::Adjacency::kFour);

}  // namespace sbench::scenes
