#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "sbench/cli/config.hpp"
#include "sbench/core/errors.hpp"

namespace sbench::cli {

/// Collects per-run failures. The exit status is the code of the first
/// failure in run order, or kOk.
class RunLog {
 public:
  explicit RunLog(std::ostream& out) : out_(out) {}

  void info(const std::string& line);
  void fail(const std::string& what, const Error& e);

  ExitCode status() const noexcept { return status_; }
  int failures() const noexcept { return failures_; }

 private:
  std::ostream& out_;
  ExitCode status_ = ExitCode::kOk;
  int failures_ = 0;
};

/// Each stage walks tasks × resolutions (× baselines) in configuration order.
/// A failing run is logged and skipped; the others continue.
void run_generate(const PipelineConfig& cfg, RunLog& log);
void run_predict(const PipelineConfig& cfg, RunLog& log);
void run_evaluate(const PipelineConfig& cfg, RunLog& log);
void run_report(const PipelineConfig& cfg, RunLog& log);

/// generate → predict → evaluate per run, then one report per baseline.
/// Writes exactly what the four stages above write when run in sequence.
void run_pipeline(const PipelineConfig& cfg, RunLog& log);

/// Evaluates an external prediction directory against the dataset of the
/// single configured task and resolution, writing `eval_<name>`.
void run_evaluate_external(const PipelineConfig& cfg, const fs::path& pred_dir, const std::string& name,
                           RunLog& log);

struct GtRequest {
  fs::path spec;
  fs::path images;  // a dataset root (uses imagesTr/) or a flat image directory
  fs::path out;
  std::map<std::string, double> params;
  slcs::Adjacency adjacency = slcs::Adjacency::kFour;
  int jobs = 1;
};

/// Applies a spec file to every case found as `{id}_{cccc}.png` groups.
/// A single save writes `{out}/{id}.png`; several write `{out}/{save}/{id}.png`.
/// Values are 0/1, so the output can be evaluated as a prediction directory.
/// Returns the number of cases processed.
int run_gt(const GtRequest& req);

}  // namespace sbench::cli
