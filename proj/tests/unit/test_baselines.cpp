#include "doctest.h"
#include "oracles/oracles.hpp"
#include "sbench/baselines/baselines.hpp"
#include "sbench/core/errors.hpp"
#include "sbench/metrics/metrics.hpp"

using namespace sbench;
using namespace sbench::baselines;
using dataset::Task;
using dataset::TaskParams;

namespace {

TaskParams maze_params() {
  TaskParams p;
  p.task = Task::kMaze;
  return p;
}

// Free space reachable from the entry channel, by BFS.
BitMask entry_reach(const std::vector<BitMask>& ch) {
  const auto d = oracle::bfs_distances(ch[0].complement(), ch[1]);
  BitMask out(ch[0].width(), ch[0].height());
  for (std::size_t i = 0; i < out.size(); ++i) out.set_at(i, d[i] >= 0);
  return out;
}

}  // namespace

TEST_CASE("parse and name baselines") {
  CHECK(parse_baseline("oracle") == BaselineKind{Kind::kOracle});
  CHECK(parse_baseline("copy_channel2") == BaselineKind{Kind::kCopyChannel, 2});
  CHECK(parse_baseline("copy_channel(1)") == BaselineKind{Kind::kCopyChannel, 1});
  for (const char* name : {"oracle", "empty", "full", "entry_component", "copy_channel0"}) {
    CHECK(to_string(parse_baseline(name)) == name);
  }
  for (const char* bad : {"", "Oracle", "copy_channel", "copy_channel(-1)", "copy_channelx", "copy_channel(1"}) {
    CHECK_THROWS_AS(parse_baseline(bad), ConfigError);
  }
}

TEST_CASE("applicability") {
  const TaskParams dots;
  CHECK_THROWS_AS(check_applicable({Kind::kEntryComponent}, dots), ConfigError);
  CHECK_THROWS_AS(check_applicable({Kind::kCopyChannel, 2}, dots), ConfigError);
  CHECK_NOTHROW(check_applicable({Kind::kCopyChannel, 1}, dots));
  CHECK_NOTHROW(check_applicable({Kind::kCopyChannel, 2}, maze_params()));
  CHECK_THROWS_AS(check_applicable({Kind::kCopyChannel, 3}, maze_params()), ConfigError);
  const auto c = dataset::generate_case(dots, 16, 1, 0);
  CHECK_THROWS_AS(predict({Kind::kEntryComponent}, c.channels, dots), ConfigError);
  CHECK_THROWS_AS(predict({Kind::kOracle}, {c.channels[0]}, dots), DimensionError);
}

TEST_CASE("oracle reproduces stored labels") {
  for (const auto& params : {TaskParams{}, maze_params()}) {
    for (int r : {16, 32, 64}) {
      const auto cases = dataset::generate_cases(params, r, 10, 42, 2);
      for (const auto& c : cases) {
        const auto p = predict({Kind::kOracle}, c.channels, params);
        CHECK(p == c.label);
        const auto row = metrics::score_case(c.record.case_id, p, c.label);
        CHECK(row.dice == 1.0);
        CHECK(row.iou == 1.0);
      }
    }
  }
}

TEST_CASE("constant and copy baselines") {
  const TaskParams params = maze_params();
  for (const auto& c : dataset::generate_cases(params, 32, 10, 7)) {
    const auto g = static_cast<std::int64_t>(c.label.popcount());
    const std::int64_t area = 32 * 32;
    const auto full = metrics::score_case("x", predict({Kind::kFull}, c.channels, params), c.label);
    CHECK(full.dice == doctest::Approx(2.0 * g / static_cast<double>(g + area)).epsilon(1e-15));
    const auto empty = metrics::score_case("x", predict({Kind::kEmpty}, c.channels, params), c.label);
    CHECK(empty.dice == (g == 0 ? 1.0 : 0.0));
    for (int i = 0; i < 3; ++i) CHECK(predict({Kind::kCopyChannel, i}, c.channels, params) == c.channels[i]);
  }
}

TEST_CASE("entry_component is the entry's free-space component and covers the label") {
  for (auto mode : {scenes::LabelMode::kShortest, scenes::LabelMode::kCorridor}) {
    TaskParams params = maze_params();
    params.maze.label_mode = mode;
    for (int r : {16, 32}) {
      for (const auto& c : dataset::generate_cases(params, r, 40, 11)) {
        const auto p = predict({Kind::kEntryComponent}, c.channels, params);
        CHECK(p == entry_reach(c.channels));
        CHECK(c.label.subset_of(p));
      }
    }
  }
}

TEST_CASE("predict_dataset is job-count independent") {
  dataset::LoadedDataset data;
  data.manifest.params = maze_params();
  data.cases = dataset::generate_cases(data.manifest.params, 16, 12, 5);
  const auto a = predict_dataset({Kind::kEntryComponent}, data, 1);
  const auto b = predict_dataset({Kind::kEntryComponent}, data, 8);
  REQUIRE(a.size() == 12);
  CHECK(a == b);
  CHECK(a[3].first == data.cases[3].record.case_id);
  data.manifest.params = TaskParams{};
  CHECK_THROWS_AS(predict_dataset({Kind::kEntryComponent}, data), ConfigError);
}
