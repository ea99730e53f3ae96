#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sbench/baselines/baselines.hpp"
#include "sbench/dataset/dataset.hpp"

namespace sbench::cli {

namespace fs = std::filesystem;

struct PipelineConfig {
  std::vector<dataset::Task> tasks{dataset::Task::kMaze, dataset::Task::kDots};
  std::vector<int> resolutions{16, 32, 64};
  int num_cases = 50;
  std::uint64_t master_seed = 42;
  scenes::MazeConfig maze;
  scenes::DotsConfig dots;
  slcs::Adjacency adjacency = slcs::Adjacency::kFour;
  fs::path out_dir = "sbench_out";
  std::vector<baselines::BaselineKind> baselines{{baselines::Kind::kOracle}};
  int jobs = 1;

  /// Throws ConfigError on empty or duplicate lists, resolutions not divisible
  /// by 16, num_cases < 1, jobs < 1 and invalid scene configs.
  void validate() const;

  dataset::TaskParams task_params(dataset::Task task) const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Sets one key (`num_cases`, `maze.tol`, `dots.shape`, ...). Lists are comma
/// separated. Throws ConfigError on unknown keys and unparsable values.
void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value);

/// `key = value` lines; blank lines and `#` comments are ignored.
void apply_config_text(PipelineConfig& cfg, const std::string& text);

/// Throws IoError when the file cannot be read.
void apply_config_file(PipelineConfig& cfg, const fs::path& path);

/// Every key with its current value, in a form apply_config_text accepts.
std::string config_to_text(const PipelineConfig& cfg);

/// `{out}/{task}_{R}px`.
fs::path run_dir(const PipelineConfig& cfg, dataset::Task task, int resolution);

}  // namespace sbench::cli
