#include "sbench/core/resample.hpp"

#include "sbench/core/errors.hpp"

namespace sbench {

BitMask upsample_nn(const BitMask& mask, int k) {
  if (k < 1) throw ConfigError("upsample factor must be >= 1");
  BitMask out(mask.width() * k, mask.height() * k);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      out.set(x, y, mask.get(x / k, y / k));
    }
  }
  return out;
}

}  // namespace sbench
