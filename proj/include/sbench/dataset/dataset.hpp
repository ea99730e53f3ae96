#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sbench/core/bit_mask.hpp"
#include "sbench/scenes/dots.hpp"
#include "sbench/scenes/maze.hpp"
#include "sbench/slcs/spatial_ops.hpp"

namespace sbench::dataset {

namespace fs = std::filesystem;

inline constexpr int kSchemaVersion = 1;

enum class Task { kMaze, kDots };

std::string_view to_string(Task t) noexcept;
Task task_from_string(std::string_view s);

/// Everything needed to regenerate a task's cases, echoed into the manifest.
struct TaskParams {
  Task task = Task::kDots;
  scenes::MazeConfig maze;
  scenes::DotsConfig dots;
  slcs::Adjacency adjacency = slcs::Adjacency::kFour;

  std::vector<std::string> channel_names() const;
  friend bool operator==(const TaskParams&, const TaskParams&) = default;
};

struct CaseRecord {
  std::string case_id;
  int index = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> channel_files;  // relative to the dataset root
  std::string label_file;
  std::map<std::string, std::int64_t> meta;

  friend bool operator==(const CaseRecord&, const CaseRecord&) = default;
};

struct CaseData {
  CaseRecord record;
  std::vector<BitMask> channels;
  BitMask label{1, 1};
};

struct ChannelInfo {
  int index = 0;
  std::string name;
  friend bool operator==(const ChannelInfo&, const ChannelInfo&) = default;
};

struct DatasetManifest {
  int schema_version = kSchemaVersion;
  Task task = Task::kDots;
  int resolution = 16;
  int num_cases = 0;
  std::uint64_t master_seed = 0;
  TaskParams params;
  std::vector<ChannelInfo> channels;
  std::vector<CaseRecord> cases;
  std::string generator_version;
  std::optional<int> folds;  // reserved for external trainers

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

/// `dots_029` or `maze_4x4_048`.
std::string case_id(const TaskParams& params, int index);

/// Samples, rasterizes and labels case `index` at `resolution`.
CaseData generate_case(const TaskParams& params, int resolution, std::uint64_t master_seed, int index);

std::vector<CaseData> generate_cases(const TaskParams& params, int resolution, int num_cases,
                                     std::uint64_t master_seed, int jobs = 1);

struct DatasetHeader {
  TaskParams params;
  int resolution = 16;
  std::uint64_t master_seed = 0;
  std::optional<int> folds;
};

/// Writes imagesTr/, labelsTr/ and dataset.json into a staging directory and
/// renames it to `out_dir`. Refuses a non-empty `out_dir` (IoError); throws
/// ValidationError on duplicate case ids. Returns the manifest written.
DatasetManifest write_dataset(const std::vector<CaseData>& cases, const DatasetHeader& header,
                              const fs::path& out_dir, int jobs = 1);

/// Parses and checks dataset.json only.
DatasetManifest read_manifest(const fs::path& dir);

struct LoadedDataset {
  DatasetManifest manifest;
  std::vector<CaseData> cases;
};

/// Reads and validates a dataset. All problems found (missing files, wrong
/// sizes, pixel values outside {0,255} / {0,1}) are reported together in one
/// ValidationError.
LoadedDataset read_dataset(const fs::path& dir);

/// Rebuilds the generation header from a manifest.
DatasetHeader header_from_manifest(const DatasetManifest& manifest);

struct PredictionSet {
  fs::path source_dir;
  std::map<std::string, BitMask> masks;
};

/// Loads `{case_id}.png` for every manifest case. Any nonzero sample is
/// foreground. Missing, unreadable and misshaped files are reported together.
PredictionSet import_predictions(const fs::path& dir, const DatasetManifest& manifest);

/// Writes `{case_id}.png` (values 0/1) for each mask, staged and renamed like
/// write_dataset.
void write_predictions(const fs::path& dir, const std::vector<std::pair<std::string, BitMask>>& masks,
                       int jobs = 1);

}  // namespace sbench::dataset
