#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sbench/core/bit_mask.hpp"
#include "sbench/dataset/dataset.hpp"
#include "sbench/dataset/png_io.hpp"

namespace sbench::metrics {

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

/// Throws DimensionError when the masks differ in size.
Confusion confusion(const BitMask& pred, const BitMask& gt);

/// Both return 1.0 when tp = fp = fn = 0.
double dice(std::int64_t tp, std::int64_t fp, std::int64_t fn);
double iou(std::int64_t tp, std::int64_t fp, std::int64_t fn);

struct Aggregate {
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1) estimator, 0 for n = 1
  int n = 0;
};

/// Throws ValidationError on an empty input.
Aggregate aggregate(std::span<const double> values);

struct MetricsRow {
  std::string case_id;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double iou = 0.0;
  double dice = 0.0;
  bool both_empty = false;  // scored 1.0 by convention

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

MetricsRow score_case(const std::string& case_id, const BitMask& pred, const BitMask& gt);

struct Summary {
  int n = 0;
  double mean_iou = 0.0;
  double std_iou = 0.0;
  double mean_dice = 0.0;
  double std_dice = 0.0;
  int both_empty_cases = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

/// Folds rows in the order given (the manifest's case order).
Summary summarize(const std::vector<MetricsRow>& rows);

/// Columns case_id,tp,fp,fn,iou,dice; reals in shortest round-trip form.
std::string metrics_csv(const std::vector<MetricsRow>& rows);

struct RunSummary {
  std::string task;
  int resolution = 0;
  std::string predictor;  // baseline kind or a label for imported predictions
  Summary summary;
  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

std::string summary_json(const RunSummary& s);
RunSummary parse_summary_json(const std::string& text);

struct SweepRow {
  std::string task;
  int resolution = 0;
  Summary summary;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // sorted by (task, resolution)

  /// task,resolution,n,mean_iou,std_iou,mean_dice,std_dice
  std::string to_csv() const;
  /// One table row per (task, resolution) with mean ± std to 4 decimals.
  std::string to_markdown() const;
  /// resolution followed by one mean-dice column per task.
  std::string dice_vs_resolution_csv() const;
};

/// Throws ValidationError on an empty input or a repeated (task, resolution).
SweepReport sweep_report(const std::vector<RunSummary>& runs);

/// Prediction | overlay | ground truth, separated by 2-pixel gray columns.
/// Overlay colours: TP green, FP red, FN blue. Width is 3R + 4.
dataset::Image render_triptych(const BitMask& pred, const BitMask& gt);

struct Evaluation {
  std::vector<MetricsRow> rows;
  RunSummary summary;
};

/// Scores every manifest case against its imported prediction.
Evaluation evaluate(const dataset::LoadedDataset& data, const dataset::PredictionSet& preds,
                    const std::string& predictor);

/// Writes metrics.csv, summary.json and viz/{case_id}_triptych.png into a
/// staged directory renamed onto `out_dir`.
void write_evaluation(const std::filesystem::path& out_dir, const Evaluation& eval,
                      const dataset::LoadedDataset& data, const dataset::PredictionSet& preds, int jobs = 1);

/// Writes sweep.csv, sweep.md and dice_vs_resolution.csv (staged).
void write_sweep(const std::filesystem::path& out_dir, const SweepReport& report);

}  // namespace sbench::metrics
