#pragma once

#include <cstdint>
#include <string_view>

namespace sbench {

struct SplitMixStep {
  std::uint64_t state;
  std::uint64_t output;
};

/// One step of the splitmix64 generator (wrapping 64-bit arithmetic).
constexpr SplitMixStep splitmix64_next(std::uint64_t state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {state, z ^ (z >> 31)};
}

constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : text) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Single-owner splitmix64 stream. All randomness in the toolkit comes from here.
class Rng {
 public:
  explicit Rng(std::uint64_t state) noexcept : state_(state) {}

  std::uint64_t next() noexcept {
    const auto step = splitmix64_next(state_);
    state_ = step.state;
    return step.output;
  }

  /// Uniform real in [0, 1) built from the top 53 bits of one output.
  double uniform() noexcept { return to_unit_interval(next()); }

  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, n) by rejection on raw 64-bit outputs. n must be >= 1.
  std::uint64_t below(std::uint64_t n) noexcept;

  std::uint64_t state() const noexcept { return state_; }

  static constexpr double to_unit_interval(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Seed of one generated case. Depends only on its arguments, never on the
/// order in which cases are produced.
std::uint64_t derive_case_seed(std::uint64_t master_seed, std::string_view task_tag, int resolution,
                               int case_index);

}  // namespace sbench
