#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sbench/cli/config.hpp"
#include "sbench/cli/pipeline.hpp"
#include "sbench/core/errors.hpp"
#include "sbench/dataset/dataset.hpp"
#include "sbench/dataset/png_io.hpp"
#include "sbench/metrics/metrics.hpp"
#include "sbench/scenes/reference_specs.hpp"
#include "support/tree_hash.hpp"

using namespace sbench;
using namespace sbench::cli;
using support::TempDir;

namespace {

PipelineConfig small(const fs::path& out) {
  PipelineConfig c;
  c.resolutions = {16, 32};
  c.num_cases = 6;
  c.out_dir = out;
  c.baselines = {{baselines::Kind::kOracle}, {baselines::Kind::kFull}};
  return c;
}

}  // namespace

TEST_CASE("config defaults") {
  const PipelineConfig c;
  CHECK(c.tasks.size() == 2);
  CHECK(c.resolutions == std::vector<int>{16, 32, 64});
  CHECK(c.num_cases == 50);
  CHECK(c.master_seed == 42);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("config text: keys, comments and errors") {
  PipelineConfig c;
  apply_config_text(c,
                    "# comment\n"
                    "tasks = dots\n"
                    "resolutions = 16, 48  # trailing comment\n"
                    "\n"
                    "num_cases=3\n"
                    "seed = 18446744073709551615\n"
                    "label_mode = corridor\n"
                    "maze.tol = 2\n"
                    "dots.shape = disk\n"
                    "dots.margin = 0.125\n"
                    "dots.raster_guard = false\n"
                    "baselines = empty, copy_channel1\n"
                    "adjacency = 8\n");
  CHECK(c.tasks == std::vector<dataset::Task>{dataset::Task::kDots});
  CHECK(c.resolutions == std::vector<int>{16, 48});
  CHECK(c.num_cases == 3);
  CHECK(c.master_seed == 18446744073709551615ull);
  CHECK(c.maze.label_mode == scenes::LabelMode::kCorridor);
  CHECK(c.maze.tol == 2);
  CHECK(c.dots.shape == scenes::DotShape::kDisk);
  CHECK(c.dots.margin == 0.125);
  CHECK_FALSE(c.dots.raster_guard);
  CHECK(c.baselines.size() == 2);
  CHECK(c.baselines[1] == baselines::BaselineKind{baselines::Kind::kCopyChannel, 1});
  CHECK(c.adjacency == slcs::Adjacency::kEight);

  for (const char* bad : {"nokey = 1", "num_cases = x", "num_cases = 3.5", "tasks = cubes", "adjacency = 6",
                          "dots.require_mixed = maybe", "just words", "baselines = magic"}) {
    PipelineConfig d;
    CHECK_THROWS_AS(apply_config_text(d, bad), ConfigError);
  }
  PipelineConfig d;
  try {
    apply_config_text(d, "seed = 1\nbogus = 2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("config validation") {
  auto invalid = [](auto edit) {
    PipelineConfig c;
    edit(c);
    CHECK_THROWS_AS(c.validate(), ConfigError);
  };
  invalid([](PipelineConfig& c) { c.resolutions = {24}; });
  invalid([](PipelineConfig& c) { c.resolutions = {}; });
  invalid([](PipelineConfig& c) { c.resolutions = {16, 16}; });
  invalid([](PipelineConfig& c) { c.num_cases = 0; });
  invalid([](PipelineConfig& c) { c.tasks = {}; });
  invalid([](PipelineConfig& c) { c.jobs = 0; });
  invalid([](PipelineConfig& c) { c.maze.cells_x = 0; });
  invalid([](PipelineConfig& c) { c.baselines = {{baselines::Kind::kFull}, {baselines::Kind::kFull}}; });
}

TEST_CASE("config text round trip") {
  PipelineConfig c;
  apply_config_text(c, "tasks = dots, maze\nresolutions = 64\ndots.r_min = 0.0625\nmaze.cells_x = 5\nout = a b/c\n");
  PipelineConfig back;
  apply_config_text(back, config_to_text(c));
  CHECK(back == c);
  CHECK(back.out_dir == fs::path("a b/c"));
}

TEST_CASE("config file and run directories") {
  TempDir tmp("cfg");
  CHECK_THROWS_AS(
      [&] {
        PipelineConfig c;
        apply_config_file(c, tmp / "missing.cfg");
      }(),
      IoError);
  std::ofstream(tmp / "a.cfg") << "num_cases = 9\nout = runs\n";
  PipelineConfig c;
  apply_config_file(c, tmp / "a.cfg");
  CHECK(c.num_cases == 9);
  CHECK(run_dir(c, dataset::Task::kMaze, 32) == fs::path("runs/maze_32px"));
}

TEST_CASE("stages compose to the pipeline, byte for byte") {
  TempDir tmp("compose");
  auto a = small(tmp / "a");
  auto b = small(tmp / "b");
  std::ostringstream sink;
  RunLog la(sink);
  run_pipeline(a, la);
  CHECK(la.status() == ExitCode::kOk);
  RunLog lb(sink);
  run_generate(b, lb);
  run_predict(b, lb);
  run_evaluate(b, lb);
  run_report(b, lb);
  CHECK(lb.status() == ExitCode::kOk);
  CHECK(support::tree_hash(tmp / "a") == support::tree_hash(tmp / "b"));
  CHECK(support::count_files(tmp / "a") == support::count_files(tmp / "b"));
  CHECK(fs::exists(tmp / "a/report_full/sweep.csv"));
  CHECK(fs::exists(tmp / "a/maze_32px/eval_oracle/viz/maze_4x4_005_triptych.png"));

  // A second pipeline into the same tree refuses to touch existing datasets.
  RunLog again(sink);
  run_pipeline(a, again);
  CHECK(again.status() == ExitCode::kIo);
  CHECK(support::tree_hash(tmp / "a") == support::tree_hash(tmp / "b"));
}

TEST_CASE("partial failures continue other runs") {
  TempDir tmp("partial");
  auto c = small(tmp / "out");
  c.baselines = {{baselines::Kind::kEntryComponent}};
  std::ostringstream sink;
  RunLog log(sink);
  run_pipeline(c, log);
  CHECK(log.status() == ExitCode::kValidation);
  CHECK(fs::exists(tmp / "out/maze_16px/eval_entry_component/summary.json"));
  CHECK_FALSE(fs::exists(tmp / "out/dots_16px/preds_entry_component"));
  const auto rep = support::file_bytes(tmp / "out/report_entry_component/sweep.csv");
  CHECK(std::count(rep.begin(), rep.end(), '\n') == 3);

  auto g = small(tmp / "gen");
  g.dots.max_attempts = 1;
  RunLog glog(sink);
  run_pipeline(g, glog);
  CHECK(glog.status() == ExitCode::kGeneration);
  CHECK(fs::exists(tmp / "gen/maze_32px/eval_full/metrics.csv"));
  CHECK_FALSE(fs::exists(tmp / "gen/dots_16px"));
}

TEST_CASE("external predictions are evaluated through the same path") {
  TempDir tmp("ext");
  auto c = small(tmp / "out");
  c.tasks = {dataset::Task::kDots};
  c.resolutions = {32};
  std::ostringstream sink;
  RunLog log(sink);
  run_pipeline(c, log);
  run_evaluate_external(c, tmp / "out/dots_32px/preds_full", "copied_full", log);
  CHECK(log.status() == ExitCode::kOk);
  CHECK(support::file_bytes(tmp / "out/dots_32px/eval_copied_full/metrics.csv") ==
        support::file_bytes(tmp / "out/dots_32px/eval_full/metrics.csv"));
  auto two = c;
  two.resolutions = {16, 32};
  CHECK_THROWS_AS(run_evaluate_external(two, tmp / "x", "x", log), ConfigError);
}

TEST_CASE("gt applies a spec file to a dataset") {
  TempDir tmp("gt");
  auto c = small(tmp / "out");
  c.tasks = {dataset::Task::kMaze};
  c.resolutions = {32};
  std::ostringstream sink;
  RunLog log(sink);
  run_generate(c, log);
  const auto data = dataset::read_dataset(tmp / "out/maze_32px/dataset");

  GtRequest req;
  req.spec = fs::path(SBENCH_SOURCE_DIR) / "specs/maze_shortest.sls";
  req.images = tmp / "out/maze_32px/dataset";
  req.out = tmp / "gt";
  req.params = {{"tol", 0}};
  req.jobs = 3;
  CHECK(run_gt(req) == 6);
  const auto preds = dataset::import_predictions(tmp / "gt", data.manifest);
  for (const auto& cs : data.cases) CHECK(preds.masks.at(cs.record.case_id) == cs.label);

  // Several saves go to one subdirectory each.
  std::ofstream(tmp / "two.sls") << "let fs = !channel(0)\nsave \"free\" fs\nsave \"walls\" channel(0)\n";
  req.spec = tmp / "two.sls";
  req.out = tmp / "gt2";
  CHECK(run_gt(req) == 6);
  const auto walls = dataset::read_png_gray8(tmp / "gt2/walls/maze_4x4_000.png");
  CHECK(walls.width == 32);
  CHECK(fs::exists(tmp / "gt2/free/maze_4x4_005.png"));

  req.out = tmp / "gt";
  CHECK_THROWS_AS(run_gt(req), IoError);
  req.out = tmp / "gt3";
  req.params.clear();
  req.spec = fs::path(SBENCH_SOURCE_DIR) / "specs/maze_shortest.sls";
  CHECK_THROWS_AS(run_gt(req), Error);
  CHECK_FALSE(fs::exists(tmp / "gt3"));
  req.images = tmp / "nothing";
  CHECK_THROWS_AS(run_gt(req), IoError);
}
