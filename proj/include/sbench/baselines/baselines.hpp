#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sbench/core/bit_mask.hpp"
#include "sbench/dataset/dataset.hpp"

namespace sbench::baselines {

enum class Kind { kOracle, kEmpty, kFull, kCopyChannel, kEntryComponent };

struct BaselineKind {
  Kind kind = Kind::kOracle;
  int channel = 0;  // copy_channel only

  friend bool operator==(const BaselineKind&, const BaselineKind&) = default;
};

/// Accepts `oracle`, `empty`, `full`, `entry_component` and `copy_channel<i>`
/// (also spelled `copy_channel(i)`). Throws ConfigError otherwise.
BaselineKind parse_baseline(const std::string& text);

/// Directory-safe name: `oracle`, `copy_channel1`, ...
std::string to_string(const BaselineKind& kind);

/// Throws ConfigError when the kind cannot run on the task.
void check_applicable(const BaselineKind& kind, const dataset::TaskParams& params);

BitMask predict(const BaselineKind& kind, const std::vector<BitMask>& channels,
                const dataset::TaskParams& params);

std::vector<std::pair<std::string, BitMask>> predict_dataset(const BaselineKind& kind,
                                                             const dataset::LoadedDataset& data, int jobs = 1);

}  // namespace sbench::baselines
