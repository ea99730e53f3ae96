#include "sbench/scenes/dots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "sbench/core/errors.hpp"
#include "sbench/core/rng.hpp"
#include "sbench/scenes/reference_specs.hpp"
#include "sbench/slcs/evaluator.hpp"

namespace sbench::scenes {

namespace {

// A single dot that keeps failing restarts the whole scene after this many draws.
constexpr int kPerDotStall = 1000;

class PlacementBudget {
 public:
  explicit PlacementBudget(int limit) : limit_(limit) {}
  void spend() {
    if (++used_ > limit_) {
      throw GenerationError("dots sampler: no valid scene after " + std::to_string(limit_) +
                            " placement attempts");
    }
  }

 private:
  int limit_;
  int used_ = 0;
};

bool inside_unit_square(const Dot& d) {
  return d.x - d.r >= 0.0 && d.x + d.r <= 1.0 && d.y - d.r >= 0.0 && d.y + d.r <= 1.0;
}

std::optional<std::vector<Dot>> try_scene(Rng& rng, const DotsConfig& cfg, Dot& reference,
                                          PlacementBudget& budget) {
  const int n = cfg.n_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.n_max - cfg.n_min + 1)));

  for (int stall = 0;; ++stall) {
    if (stall == kPerDotStall) return std::nullopt;
    budget.spend();
    Dot ref;
    ref.x = rng.uniform();
    ref.y = rng.uniform();
    ref.r = cfg.ref_half_side;
    if (!inside_unit_square(ref)) continue;
    if (covered_pixel_centres(cfg.shape, ref, cfg.min_resolution) < 1) continue;
    reference = ref;
    break;
  }

  const double pixel_diagonal = std::sqrt(2.0) / cfg.min_resolution;
  std::vector<Dot> dots;
  dots.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(dots.size()) < n) {
    bool placed = false;
    for (int stall = 0; stall < kPerDotStall && !placed; ++stall) {
      budget.spend();
      Dot d;
      d.x = rng.uniform();
      d.y = rng.uniform();
      d.r = cfg.r_min + (cfg.r_max - cfg.r_min) * rng.uniform();
      if (!inside_unit_square(d)) continue;
      const double to_ref = shape_distance(cfg.shape, d, reference);
      if (to_ref < cfg.min_separation) continue;
      if (std::abs(to_ref - cfg.threshold) < cfg.margin) continue;
      if (cfg.raster_guard && to_ref > cfg.threshold - 2.0 * pixel_diagonal &&
          to_ref <= cfg.threshold) {
        continue;
      }
      bool separated = true;
      for (const auto& other : dots) {
        const double gap = shape_distance(cfg.shape, d, other);
        if (gap < cfg.min_separation || (cfg.raster_guard && gap <= pixel_diagonal)) {
          separated = false;
          break;
        }
      }
      if (!separated) continue;
      if (covered_pixel_centres(cfg.shape, d, cfg.min_resolution) < 1) continue;
      dots.push_back(d);
      placed = true;
    }
    if (!placed) return std::nullopt;
  }
  return dots;
}

}  // namespace

std::string_view to_string(DotShape s) noexcept { return s == DotShape::kSquare ? "square" : "disk"; }

DotShape dot_shape_from_string(std::string_view s) {
  if (s == "square") return DotShape::kSquare;
  if (s == "disk") return DotShape::kDisk;
  throw ConfigError("dot shape must be 'square' or 'disk', got '" + std::string(s) + "'");
}

void DotsConfig::validate() const {
  if (n_min < 1 || n_max < n_min) throw ConfigError("dots: need 1 <= n_min <= n_max");
  if (require_mixed && n_min < 2) throw ConfigError("dots: require_mixed needs n_min >= 2");
  if (!(r_min > 0.0 && r_min <= r_max && r_max < 0.5)) {
    throw ConfigError("dots: need 0 < r_min <= r_max < 0.5");
  }
  if (!(ref_half_side > 0.0 && ref_half_side < 0.5)) {
    throw ConfigError("dots: reference half side must lie in (0, 0.5)");
  }
  if (!(threshold > 0.0 && threshold < std::sqrt(2.0))) {
    throw ConfigError("dots: threshold D must lie in (0, sqrt(2))");
  }
  if (!(margin > 0.0)) throw ConfigError("dots: margin must be positive");
  if (!(min_separation >= 0.0)) throw ConfigError("dots: min_separation must be non-negative");
  if (min_resolution < 1) throw ConfigError("dots: min_resolution must be >= 1");
  if (max_attempts < 1) throw ConfigError("dots: max_attempts must be >= 1");
}

bool shape_contains(DotShape shape, const Dot& d, double px, double py) {
  const double dx = px - d.x;
  const double dy = py - d.y;
  if (shape == DotShape::kSquare) return std::abs(dx) <= d.r && std::abs(dy) <= d.r;
  return dx * dx + dy * dy <= d.r * d.r;
}

double shape_distance(DotShape shape, const Dot& a, const Dot& b) {
  if (shape == DotShape::kSquare) {
    const double gx = std::max(0.0, std::abs(a.x - b.x) - (a.r + b.r));
    const double gy = std::max(0.0, std::abs(a.y - b.y) - (a.r + b.r));
    return std::sqrt(gx * gx + gy * gy);
  }
  return std::max(0.0, std::hypot(a.x - b.x, a.y - b.y) - a.r - b.r);
}

int covered_pixel_centres(DotShape shape, const Dot& d, int resolution) {
  const double R = resolution;
  const int x0 = std::max(0, static_cast<int>(std::floor((d.x - d.r) * R)) - 1);
  const int x1 = std::min(resolution - 1, static_cast<int>(std::ceil((d.x + d.r) * R)) + 1);
  const int y0 = std::max(0, static_cast<int>(std::floor((d.y - d.r) * R)) - 1);
  const int y1 = std::min(resolution - 1, static_cast<int>(std::ceil((d.y + d.r) * R)) + 1);
  int count = 0;
  for (int iy = y0; iy <= y1; ++iy)
    for (int ix = x0; ix <= x1; ++ix)
      if (shape_contains(shape, d, (ix + 0.5) / R, (iy + 0.5) / R)) ++count;
  return count;
}

std::vector<int> select_dots(const DotsConfig& cfg, const Dot& reference,
                             const std::vector<Dot>& dots) {
  std::vector<int> selected;
  for (std::size_t i = 0; i < dots.size(); ++i) {
    if (shape_distance(cfg.shape, dots[i], reference) <= cfg.threshold) {
      selected.push_back(static_cast<int>(i));
    }
  }
  return selected;
}

DotsScene sample_dots_scene(std::uint64_t seed, const DotsConfig& cfg) {
  cfg.validate();
  Rng rng(seed);
  PlacementBudget budget(cfg.max_attempts);
  for (;;) {
    DotsScene scene;
    scene.config = cfg;
    auto dots = try_scene(rng, cfg, scene.reference, budget);
    if (!dots) continue;
    scene.dots = std::move(*dots);
    scene.selected = select_dots(cfg, scene.reference, scene.dots);
    if (cfg.require_mixed &&
        (scene.selected.empty() || scene.selected.size() == scene.dots.size())) {
      continue;
    }
    return scene;
  }
}

BitMask rasterize_shape(DotShape shape, const Dot& d, int resolution) {
  BitMask m(resolution, resolution);
  const double R = resolution;
  for (int iy = 0; iy < resolution; ++iy)
    for (int ix = 0; ix < resolution; ++ix)
      if (shape_contains(shape, d, (ix + 0.5) / R, (iy + 0.5) / R)) m.set(ix, iy, true);
  return m;
}

std::vector<BitMask> rasterize_dots(const DotsScene& scene, int resolution) {
  if (resolution < 1) throw ConfigError("resolution must be positive");
  BitMask dots(resolution, resolution);
  for (const auto& d : scene.dots) dots = dots | rasterize_shape(scene.config.shape, d, resolution);
  std::vector<BitMask> channels;
  channels.push_back(std::move(dots));
  channels.push_back(rasterize_shape(scene.config.shape, scene.reference, resolution));
  return channels;
}

BitMask dots_ground_truth(const std::vector<BitMask>& channels, const DotsConfig& cfg,
                          slcs::Adjacency adjacency) {
  slcs::EvalContext ctx;
  ctx.channels = channels;
  ctx.adjacency = adjacency;
  if (ctx.channels.empty()) throw ValidationError("dots ground truth needs two channels");
  ctx.params["D"] = cfg.threshold * ctx.channels.front().width();
  return slcs::evaluate(dots_program(), ctx).at("label");
}

}  // namespace sbench::scenes
