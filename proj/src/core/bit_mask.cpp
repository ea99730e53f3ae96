#include "sbench/core/bit_mask.hpp"

#include <algorithm>
#include <string>

#include "sbench/core/errors.hpp"

namespace sbench {

namespace {

void require_same_shape(const BitMask& a, const BitMask& b) {
  if (!a.same_shape(b)) {
    throw DimensionError("mask dimensions differ: " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
  }
}

}  // namespace

BitMask::BitMask(int width, int height, bool fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw DimensionError("mask dimensions must be positive, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0);
}

BitMask BitMask::from_bits(int width, int height, std::span<const std::uint8_t> bits) {
  BitMask m(width, height);
  if (bits.size() != m.size()) {
    throw DimensionError("bit count " + std::to_string(bits.size()) + " does not match " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  std::transform(bits.begin(), bits.end(), m.bits_.begin(),
                 [](std::uint8_t b) -> std::uint8_t { return b != 0 ? 1 : 0; });
  return m;
}

std::size_t BitMask::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BitMask::subset_of(const BitMask& other) const {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

BitMask BitMask::complement() const {
  BitMask out = *this;
  for (auto& b : out.bits_) b ^= 1;
  return out;
}

BitMask BitMask::operator&(const BitMask& other) const {
  require_same_shape(*this, other);
  BitMask out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= other.bits_[i];
  return out;
}

BitMask BitMask::operator|(const BitMask& other) const {
  require_same_shape(*this, other);
  BitMask out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= other.bits_[i];
  return out;
}

BitMask BitMask::minus(const BitMask& other) const {
  require_same_shape(*this, other);
  BitMask out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= other.bits_[i] ^ 1;
  return out;
}

}  // namespace sbench
