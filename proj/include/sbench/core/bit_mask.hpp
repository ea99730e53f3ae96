#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sbench {

/// Row-major binary raster. Origin is the top-left pixel, x grows rightward
/// and y grows downward.
class BitMask {
 public:
  BitMask(int width, int height, bool fill = false);

  static BitMask from_bits(int width, int height, std::span<const std::uint8_t> bits);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool get(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool value) { bits_[index(x, y)] = value ? 1 : 0; }

  bool at(std::size_t i) const { return bits_[i] != 0; }
  void set_at(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }

  bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  std::size_t popcount() const noexcept;
  bool empty() const noexcept { return popcount() == 0; }
  bool same_shape(const BitMask& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  /// Every on-pixel of *this is on in `other`.
  bool subset_of(const BitMask& other) const;

  BitMask complement() const;
  BitMask operator&(const BitMask& other) const;
  BitMask operator|(const BitMask& other) const;
  /// Pixels of *this that are off in `other`.
  BitMask minus(const BitMask& other) const;

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const BitMask&, const BitMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;  // one byte per pixel, 0 or 1
};

}  // namespace sbench
