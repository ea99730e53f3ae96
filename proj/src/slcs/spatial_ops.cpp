#include "sbench/slcs/spatial_ops.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "sbench/core/errors.hpp"
#include "sbench/slcs/errors.hpp"

namespace sbench::slcs {

namespace {

struct Offset {
  int dx;
  int dy;
};

constexpr Offset kNeighbours8[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                   {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};

std::span<const Offset> neighbours(Adjacency adj) {
  return {kNeighbours8, adj == Adjacency::kFour ? 4u : 8u};
}

void require_same_shape(const BitMask& a, const BitMask& b, const char* op) {
  if (!a.same_shape(b)) throw DimensionError(std::string(op) + ": operand dimensions differ");
}

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

}  // namespace

Adjacency adjacency_from_int(int n) {
  if (n == 4) return Adjacency::kFour;
  if (n == 8) return Adjacency::kEight;
  throw ConfigError("adjacency must be 4 or 8, got " + std::to_string(n));
}

BitMask op_near(const BitMask& a, Adjacency adj) {
  BitMask out = a;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!a.get(x, y)) continue;
      for (const auto& o : neighbours(adj)) {
        if (a.in_bounds(x + o.dx, y + o.dy)) out.set(x + o.dx, y + o.dy, true);
      }
    }
  }
  return out;
}

BitMask op_interior(const BitMask& a, Adjacency adj) {
  BitMask out(a.width(), a.height());
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!a.get(x, y)) continue;
      bool inside = true;
      for (const auto& o : neighbours(adj)) {
        const int nx = x + o.dx;
        const int ny = y + o.dy;
        if (!a.in_bounds(nx, ny) || !a.get(nx, ny)) {
          inside = false;
          break;
        }
      }
      out.set(x, y, inside);
    }
  }
  return out;
}

Labeling connected_components(const BitMask& a, Adjacency adj) {
  Labeling lab;
  lab.width = a.width();
  lab.height = a.height();
  lab.ids.assign(a.size(), 0);
  std::vector<std::size_t> stack;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      const std::size_t start = a.index(x, y);
      if (!a.at(start) || lab.ids[start] != 0) continue;
      const std::uint32_t id = ++lab.count;
      lab.ids[start] = id;
      stack.push_back(start);
      while (!stack.empty()) {
        const std::size_t p = stack.back();
        stack.pop_back();
        const int px = static_cast<int>(p % static_cast<std::size_t>(a.width()));
        const int py = static_cast<int>(p / static_cast<std::size_t>(a.width()));
        for (const auto& o : neighbours(adj)) {
          const int nx = px + o.dx;
          const int ny = py + o.dy;
          if (!a.in_bounds(nx, ny)) continue;
          const std::size_t q = a.index(nx, ny);
          if (a.at(q) && lab.ids[q] == 0) {
            lab.ids[q] = id;
            stack.push_back(q);
          }
        }
      }
    }
  }
  return lab;
}

BitMask op_touch(const BitMask& a, const BitMask& b, Adjacency adj) {
  require_same_shape(a, b, "touch");
  const Labeling lab = connected_components(a, adj);
  std::vector<std::uint8_t> hit(lab.count + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (lab.ids[i] != 0 && b.at(i)) hit[lab.ids[i]] = 1;
  }
  BitMask out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.set_at(i, lab.ids[i] != 0 && hit[lab.ids[i]]);
  }
  return out;
}

// Meijster, Roerdink and Hesselink separable exact EDT on integer squared
// distances. Columns without any site are skipped in the row pass.
std::vector<std::int64_t> squared_dt(const BitMask& a) {
  const int w = a.width();
  const int h = a.height();
  constexpr std::int64_t kNone = -1;

  // Column pass: vertical distance to the nearest on-pixel in the same column.
  std::vector<std::int64_t> g(a.size(), kNone);
  for (int x = 0; x < w; ++x) {
    std::int64_t last = kNone;
    for (int y = 0; y < h; ++y) {
      if (a.get(x, y)) last = y;
      if (last != kNone) g[a.index(x, y)] = y - last;
    }
    last = kNone;
    for (int y = h - 1; y >= 0; --y) {
      if (a.get(x, y)) last = y;
      if (last != kNone) {
        auto& v = g[a.index(x, y)];
        const std::int64_t d = last - y;
        if (v == kNone || d < v) v = d;
      }
    }
  }

  std::vector<std::int64_t> out(a.size(), kNoSite);
  std::vector<std::int64_t> gg(static_cast<std::size_t>(w));
  std::vector<int> s(static_cast<std::size_t>(w));
  std::vector<std::int64_t> t(static_cast<std::size_t>(w));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) gg[x] = g[a.index(x, y)];
    auto f = [&](std::int64_t x, int i) { return (x - i) * (x - i) + gg[i] * gg[i]; };
    auto sep = [&](int i, int u) {
      return floor_div(static_cast<std::int64_t>(u) * u - static_cast<std::int64_t>(i) * i +
                           gg[u] * gg[u] - gg[i] * gg[i],
                       2 * static_cast<std::int64_t>(u - i));
    };
    int q = -1;
    for (int u = 0; u < w; ++u) {
      if (gg[u] == kNone) continue;
      if (q < 0) {
        q = 0;
        s[0] = u;
        t[0] = 0;
        continue;
      }
      while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
      if (q < 0) {
        q = 0;
        s[0] = u;
        t[0] = 0;
      } else {
        const std::int64_t wpos = 1 + sep(s[q], u);
        if (wpos < w) {
          ++q;
          s[q] = u;
          t[q] = wpos;
        }
      }
    }
    if (q < 0) continue;
    for (int x = w - 1; x >= 0; --x) {
      out[a.index(x, y)] = f(x, s[q]);
      if (x == t[q]) --q;
    }
  }
  return out;
}

ScalarField op_dt(const BitMask& a) {
  const auto sq = squared_dt(a);
  ScalarField out(a.width(), a.height());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    out.set_at(i, sq[i] == kNoSite ? kInfinity : std::sqrt(static_cast<double>(sq[i])));
  }
  return out;
}

ScalarField op_gdt(const BitMask& space, const BitMask& src, Adjacency adj) {
  require_same_shape(space, src, "gdt");
  ScalarField out(space.width(), space.height());
  std::vector<std::int64_t> dist(space.size(), -1);
  std::deque<std::size_t> frontier;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.at(i) && src.at(i)) {
      dist[i] = 0;
      frontier.push_back(i);
    }
  }
  const auto w = static_cast<std::size_t>(space.width());
  while (!frontier.empty()) {
    const std::size_t p = frontier.front();
    frontier.pop_front();
    const int px = static_cast<int>(p % w);
    const int py = static_cast<int>(p / w);
    for (const auto& o : neighbours(adj)) {
      const int nx = px + o.dx;
      const int ny = py + o.dy;
      if (!space.in_bounds(nx, ny)) continue;
      const std::size_t q = space.index(nx, ny);
      if (space.at(q) && dist[q] < 0) {
        dist[q] = dist[p] + 1;
        frontier.push_back(q);
      }
    }
  }
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] >= 0) out.set_at(i, static_cast<double>(dist[i]));
  }
  return out;
}

double op_minval(const ScalarField& f) {
  double best = kInfinity;
  for (double v : f.values()) {
    if (v < best) best = v;
  }
  if (best == kInfinity) throw EvalError({}, "minval of a field with no finite value");
  return best;
}

}  // namespace sbench::slcs
