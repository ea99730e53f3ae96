#include "sbench/scenes/maze.hpp"

#include <algorithm>
#include <numeric>

#include "sbench/core/errors.hpp"
#include "sbench/core/rng.hpp"
#include "sbench/scenes/reference_specs.hpp"
#include "sbench/slcs/evaluator.hpp"

namespace sbench::scenes {

namespace {

int cell_index(const MazeConfig& cfg, Cell c) { return c.y * cfg.cells_x + c.x; }

Cell cell_at(const MazeConfig& cfg, int index) { return {index % cfg.cells_x, index / cfg.cells_x}; }

void draw_walls(Rng& rng, MazeScene& scene) {
  const auto& cfg = scene.config;
  scene.open_walls.assign(static_cast<std::size_t>(cfg.internal_walls()), false);
  for (std::size_t w = 0; w < scene.open_walls.size(); ++w) {
    scene.open_walls[w] = rng.uniform() < cfg.connection_probability;
  }
}

MazeScene draw_endpoints(Rng& rng, const MazeConfig& cfg) {
  cfg.validate();
  MazeScene scene;
  scene.config = cfg;
  const auto cells = static_cast<std::uint64_t>(cfg.cells_x * cfg.cells_y);
  const int entry = static_cast<int>(rng.below(cells));
  int exit = static_cast<int>(rng.below(cells - 1));
  if (exit >= entry) ++exit;
  scene.entry = cell_at(cfg, entry);
  scene.exit = cell_at(cfg, exit);
  return scene;
}

void fill(BitMask& m, int x0, int x1, int y0, int y1, bool value) {
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) m.set(x, y, value);
}

}  // namespace

std::string_view to_string(LabelMode m) noexcept {
  return m == LabelMode::kShortest ? "shortest" : "corridor";
}

LabelMode label_mode_from_string(std::string_view s) {
  if (s == "shortest") return LabelMode::kShortest;
  if (s == "corridor") return LabelMode::kCorridor;
  throw ConfigError("label mode must be 'shortest' or 'corridor', got '" + std::string(s) + "'");
}

void MazeConfig::validate() const {
  if (cells_x < 2 || cells_y < 2) throw ConfigError("maze needs at least 2x2 cells");
  if (!(connection_probability >= 0.0 && connection_probability <= 1.0)) {
    throw ConfigError("connection probability must lie in [0, 1]");
  }
  if (tol < 0) throw ConfigError("maze tol must be non-negative");
  if (max_attempts < 1) throw ConfigError("maze max_attempts must be >= 1");
}

bool MazeScene::open_right(int cx, int cy) const {
  return open_walls[static_cast<std::size_t>(cy * (config.cells_x - 1) + cx)];
}

bool MazeScene::open_down(int cx, int cy) const {
  return open_walls[static_cast<std::size_t>(config.horizontal_walls() + cy * config.cells_x + cx)];
}

int MazeScene::open_count() const {
  return static_cast<int>(std::count(open_walls.begin(), open_walls.end(), true));
}

bool cells_connected(const MazeScene& scene) {
  const auto& cfg = scene.config;
  std::vector<int> parent(static_cast<std::size_t>(cfg.cells_x * cfg.cells_y));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int cy = 0; cy < cfg.cells_y; ++cy) {
    for (int cx = 0; cx < cfg.cells_x; ++cx) {
      if (cx + 1 < cfg.cells_x && scene.open_right(cx, cy)) {
        unite(cell_index(cfg, {cx, cy}), cell_index(cfg, {cx + 1, cy}));
      }
      if (cy + 1 < cfg.cells_y && scene.open_down(cx, cy)) {
        unite(cell_index(cfg, {cx, cy}), cell_index(cfg, {cx, cy + 1}));
      }
    }
  }
  return find(cell_index(cfg, scene.entry)) == find(cell_index(cfg, scene.exit));
}

MazeScene sample_maze_scene(std::uint64_t seed, const MazeConfig& cfg) {
  Rng rng(seed);
  MazeScene scene = draw_endpoints(rng, cfg);
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    draw_walls(rng, scene);
    if (cells_connected(scene)) return scene;
  }
  throw GenerationError("maze sampler: entry and exit not connected after " +
                        std::to_string(cfg.max_attempts) + " wall draws (p = " +
                        std::to_string(cfg.connection_probability) + ")");
}

MazeScene sample_maze_scene_unchecked(std::uint64_t seed, const MazeConfig& cfg) {
  Rng rng(seed);
  MazeScene scene = draw_endpoints(rng, cfg);
  draw_walls(rng, scene);
  return scene;
}

MazeGeometry maze_geometry(const MazeConfig& cfg, int resolution) {
  cfg.validate();
  if (resolution < 16 || resolution % 16 != 0) {
    throw ConfigError("maze resolution must be a positive multiple of 16, got " +
                      std::to_string(resolution));
  }
  if (resolution % cfg.cells_x != 0 || resolution % cfg.cells_y != 0) {
    throw ConfigError("maze resolution " + std::to_string(resolution) +
                      " is not divisible by the cell counts");
  }
  MazeGeometry g{resolution, resolution / 16, resolution / cfg.cells_x, resolution / cfg.cells_y};
  if (g.pitch_x <= 2 * g.wall || g.pitch_y <= 2 * g.wall) {
    throw ConfigError("maze cells too small for the wall thickness at " +
                      std::to_string(resolution) + " px");
  }
  return g;
}

BitMask cell_interior(const MazeConfig& cfg, Cell c, int resolution) {
  const auto g = maze_geometry(cfg, resolution);
  const int r = g.resolution;
  BitMask m(r, r);
  fill(m, c.x * g.pitch_x + g.wall, std::min((c.x + 1) * g.pitch_x, r - g.wall),
       c.y * g.pitch_y + g.wall, std::min((c.y + 1) * g.pitch_y, r - g.wall), true);
  return m;
}

std::vector<BitMask> rasterize_maze(const MazeScene& scene, int resolution) {
  const auto& cfg = scene.config;
  const auto g = maze_geometry(cfg, resolution);
  const int r = g.resolution;
  const int t = g.wall;
  BitMask walls(r, r);
  for (int cy = 0; cy < cfg.cells_y; ++cy) {
    for (int cx = 0; cx < cfg.cells_x; ++cx) {
      const int x0 = cx * g.pitch_x;
      const int y0 = cy * g.pitch_y;
      fill(walls, x0, x0 + g.pitch_x, y0, y0 + t, true);  // top band
      fill(walls, x0, x0 + t, y0, y0 + g.pitch_y, true);  // left band
    }
  }
  fill(walls, 0, r, r - t, r, true);  // global bottom
  fill(walls, r - t, r, 0, r, true);  // global right

  for (int cy = 0; cy < cfg.cells_y; ++cy) {
    for (int cx = 0; cx < cfg.cells_x; ++cx) {
      if (cx + 1 < cfg.cells_x && scene.open_right(cx, cy)) {
        const int x0 = (cx + 1) * g.pitch_x;
        fill(walls, x0, x0 + t, cy * g.pitch_y + t, std::min((cy + 1) * g.pitch_y, r - t), false);
      }
      if (cy + 1 < cfg.cells_y && scene.open_down(cx, cy)) {
        const int y0 = (cy + 1) * g.pitch_y;
        fill(walls, cx * g.pitch_x + t, std::min((cx + 1) * g.pitch_x, r - t), y0, y0 + t, false);
      }
    }
  }

  std::vector<BitMask> channels;
  channels.push_back(std::move(walls));
  channels.push_back(cell_interior(cfg, scene.entry, resolution));
  channels.push_back(cell_interior(cfg, scene.exit, resolution));
  return channels;
}

BitMask maze_ground_truth(const std::vector<BitMask>& channels, const MazeConfig& cfg,
                          slcs::Adjacency adjacency) {
  slcs::EvalContext ctx;
  ctx.channels = channels;
  ctx.adjacency = adjacency;
  if (cfg.label_mode == LabelMode::kShortest) {
    ctx.params["tol"] = static_cast<double>(cfg.tol);
    return slcs::evaluate(maze_shortest_program(), ctx).at("label");
  }
  return slcs::evaluate(maze_corridor_program(), ctx).at("label");
}

}  // namespace sbench::scenes
