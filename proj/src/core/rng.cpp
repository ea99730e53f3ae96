#include "sbench/core/rng.hpp"

#include <string>

#include "sbench/core/errors.hpp"

namespace sbench {

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  if (n <= 1) return 0;
  // floor(2^64 / n) * n == 2^64 - (2^64 mod n); values at or above it are rejected.
  const std::uint64_t rem = (UINT64_MAX % n + 1) % n;
  if (rem == 0) return next() % n;
  const std::uint64_t limit = 0 - rem;
  for (;;) {
    const std::uint64_t v = next();
    if (v < limit) return v % n;
  }
}

std::uint64_t derive_case_seed(std::uint64_t master_seed, std::string_view task_tag, int resolution,
                               int case_index) {
  if (case_index < 0) throw ConfigError("case index must be non-negative");
  Rng rng(master_seed ^ fnv1a64(task_tag) ^ static_cast<std::uint64_t>(resolution));
  std::uint64_t out = 0;
  for (int i = 0; i <= case_index; ++i) out = rng.next();
  return out;
}

}  // namespace sbench
