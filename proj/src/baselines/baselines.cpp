#include "sbench/baselines/baselines.hpp"

#include <charconv>

#include "sbench/core/errors.hpp"
#include "sbench/core/parallel.hpp"
#include "sbench/scenes/dots.hpp"
#include "sbench/scenes/maze.hpp"
#include "sbench/slcs/spatial_ops.hpp"

namespace sbench::baselines {

namespace {

constexpr std::string_view kCopyPrefix = "copy_channel";

int parse_index(std::string_view s, const std::string& text) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  int value = -1;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || value < 0) {
    throw ConfigError("baseline '" + text + "': expected copy_channel<index>");
  }
  return value;
}

}  // namespace

BaselineKind parse_baseline(const std::string& text) {
  if (text == "oracle") return {Kind::kOracle};
  if (text == "empty") return {Kind::kEmpty};
  if (text == "full") return {Kind::kFull};
  if (text == "entry_component") return {Kind::kEntryComponent};
  if (text.starts_with(kCopyPrefix)) {
    return {Kind::kCopyChannel, parse_index(std::string_view(text).substr(kCopyPrefix.size()), text)};
  }
  throw ConfigError("unknown baseline '" + text +
                    "' (expected oracle, empty, full, copy_channel<i> or entry_component)");
}

std::string to_string(const BaselineKind& kind) {
  switch (kind.kind) {
    case Kind::kOracle:
      return "oracle";
    case Kind::kEmpty:
      return "empty";
    case Kind::kFull:
      return "full";
    case Kind::kCopyChannel:
      return std::string(kCopyPrefix) + std::to_string(kind.channel);
    case Kind::kEntryComponent:
      return "entry_component";
  }
  return "unknown";
}

void check_applicable(const BaselineKind& kind, const dataset::TaskParams& params) {
  if (kind.kind == Kind::kEntryComponent && params.task != dataset::Task::kMaze) {
    throw ConfigError("entry_component is only defined for maze datasets");
  }
  const auto n = static_cast<int>(params.channel_names().size());
  if (kind.kind == Kind::kCopyChannel && kind.channel >= n) {
    throw ConfigError("copy_channel" + std::to_string(kind.channel) + ": task " +
                      std::string(dataset::to_string(params.task)) + " has " + std::to_string(n) + " channels");
  }
}

BitMask predict(const BaselineKind& kind, const std::vector<BitMask>& channels, const dataset::TaskParams& params) {
  check_applicable(kind, params);
  if (channels.size() != params.channel_names().size()) {
    throw DimensionError("expected " + std::to_string(params.channel_names().size()) + " channels, got " +
                         std::to_string(channels.size()));
  }
  const BitMask& first = channels.front();
  switch (kind.kind) {
    case Kind::kOracle:
      return params.task == dataset::Task::kMaze ? scenes::maze_ground_truth(channels, params.maze, params.adjacency)
                                                 : scenes::dots_ground_truth(channels, params.dots, params.adjacency);
    case Kind::kEmpty:
      return BitMask(first.width(), first.height(), false);
    case Kind::kFull:
      return BitMask(first.width(), first.height(), true);
    case Kind::kCopyChannel:
      return channels[static_cast<std::size_t>(kind.channel)];
    case Kind::kEntryComponent:
      return slcs::op_touch(channels[0].complement(), channels[1], params.adjacency);
  }
  throw ConfigError("unknown baseline");
}

std::vector<std::pair<std::string, BitMask>> predict_dataset(const BaselineKind& kind,
                                                             const dataset::LoadedDataset& data, int jobs) {
  check_applicable(kind, data.manifest.params);
  std::vector<std::pair<std::string, BitMask>> out(data.cases.size(), {std::string(), BitMask(1, 1)});
  parallel_for(data.cases.size(), jobs, [&](std::size_t i) {
    const auto& c = data.cases[i];
    out[i] = {c.record.case_id, predict(kind, c.channels, data.manifest.params)};
  });
  return out;
}

}  // namespace sbench::baselines
