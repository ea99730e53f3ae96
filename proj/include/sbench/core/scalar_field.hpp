#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace sbench {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Row-major raster of extended reals: each value is finite or +inf.
/// +inf stands for "unreachable" or "undefined"; NaN is never stored.
class ScalarField {
 public:
  ScalarField(int width, int height, double fill = kInfinity);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  double get(int x, int y) const { return values_[index(x, y)]; }
  void set(int x, int y, double value) { set_at(index(x, y), value); }

  double at(std::size_t i) const { return values_[i]; }
  /// Stores `value`, mapping NaN and -inf to +inf.
  void set_at(std::size_t i, double value) { values_[i] = normalize(value); }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  std::span<const double> values() const noexcept { return values_; }

  static double normalize(double v) noexcept {
    return (v != v || v == -kInfinity) ? kInfinity : v;
  }

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  int width_;
  int height_;
  std::vector<double> values_;
};

}  // namespace sbench
