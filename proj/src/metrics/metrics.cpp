#include "sbench/metrics/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>

#include "sbench/core/errors.hpp"
#include "sbench/core/parallel.hpp"
#include "sbench/dataset/staging.hpp"

namespace sbench::metrics {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace

Confusion confusion(const BitMask& pred, const BitMask& gt) {
  if (!pred.same_shape(gt)) {
    throw DimensionError(fmt::format("prediction is {}x{}, ground truth {}x{}", pred.width(), pred.height(),
                                     gt.width(), gt.height()));
  }
  Confusion c;
  const auto p = pred.bits();
  const auto g = gt.bits();
  for (std::size_t i = 0; i < p.size(); ++i) {
    c.tp += p[i] & g[i];
    c.fp += p[i] & (g[i] ^ 1);
    c.fn += (p[i] ^ 1) & g[i];
  }
  return c;
}

double dice(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  if (tp == 0 && fp == 0 && fn == 0) return 1.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

double iou(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  if (tp == 0 && fp == 0 && fn == 0) return 1.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fp + fn);
}

Aggregate aggregate(std::span<const double> values) {
  if (values.empty()) throw ValidationError("aggregate needs at least one value");
  Aggregate a;
  a.n = static_cast<int>(values.size());
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    a.mean = values.front();
    return a;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / a.n;
  if (a.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.std = std::sqrt(ss / (a.n - 1));
  }
  return a;
}

MetricsRow score_case(const std::string& case_id, const BitMask& pred, const BitMask& gt) {
  const auto c = confusion(pred, gt);
  MetricsRow r;
  r.case_id = case_id;
  r.tp = c.tp;
  r.fp = c.fp;
  r.fn = c.fn;
  r.iou = iou(c.tp, c.fp, c.fn);
  r.dice = dice(c.tp, c.fp, c.fn);
  r.both_empty = c.tp == 0 && c.fp == 0 && c.fn == 0;
  return r;
}

Summary summarize(const std::vector<MetricsRow>& rows) {
  std::vector<double> ious;
  std::vector<double> dices;
  Summary s;
  for (const auto& r : rows) {
    ious.push_back(r.iou);
    dices.push_back(r.dice);
    s.both_empty_cases += r.both_empty ? 1 : 0;
  }
  const auto i = aggregate(ious);
  const auto d = aggregate(dices);
  s.n = i.n;
  s.mean_iou = i.mean;
  s.std_iou = i.std;
  s.mean_dice = d.mean;
  s.std_dice = d.std;
  return s;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::string out = "case_id,tp,fp,fn,iou,dice\n";
  for (const auto& r : rows) out += fmt::format("{},{},{},{},{},{}\n", r.case_id, r.tp, r.fp, r.fn, r.iou, r.dice);
  return out;
}

std::string summary_json(const RunSummary& s) {
  const json j = {{"task", s.task},
                  {"resolution", s.resolution},
                  {"predictor", s.predictor},
                  {"n", s.summary.n},
                  {"mean_iou", s.summary.mean_iou},
                  {"std_iou", s.summary.std_iou},
                  {"mean_dice", s.summary.mean_dice},
                  {"std_dice", s.summary.std_dice},
                  {"both_empty_cases", s.summary.both_empty_cases}};
  return j.dump(2) + "\n";
}

RunSummary parse_summary_json(const std::string& text) {
  try {
    const auto j = json::parse(text);
    RunSummary s;
    s.task = j.at("task").get<std::string>();
    s.resolution = j.at("resolution").get<int>();
    s.predictor = j.at("predictor").get<std::string>();
    s.summary.n = j.at("n").get<int>();
    s.summary.mean_iou = j.at("mean_iou").get<double>();
    s.summary.std_iou = j.at("std_iou").get<double>();
    s.summary.mean_dice = j.at("mean_dice").get<double>();
    s.summary.std_dice = j.at("std_dice").get<double>();
    s.summary.both_empty_cases = j.at("both_empty_cases").get<int>();
    return s;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("summary.json: ") + e.what());
  }
}

std::string SweepReport::to_csv() const {
  std::string out = "task,resolution,n,mean_iou,std_iou,mean_dice,std_dice\n";
  for (const auto& r : rows) {
    const auto& s = r.summary;
    out += fmt::format("{},{},{},{},{},{},{}\n", r.task, r.resolution, s.n, s.mean_iou, s.std_iou, s.mean_dice,
                       s.std_dice);
  }
  return out;
}

std::string SweepReport::to_markdown() const {
  std::string out =
      "| Task | Resolution | N | IoU (mean ± std) | Dice (mean ± std) |\n"
      "|------|-----------:|--:|------------------|-------------------|\n";
  for (const auto& r : rows) {
    const auto& s = r.summary;
    out += fmt::format("| {} | {}px | {} | {:.4f} ± {:.4f} | {:.4f} ± {:.4f} |\n", r.task, r.resolution, s.n,
                       s.mean_iou, s.std_iou, s.mean_dice, s.std_dice);
  }
  return out;
}

std::string SweepReport::dice_vs_resolution_csv() const {
  std::set<std::string> tasks;
  std::map<int, std::map<std::string, double>> table;
  for (const auto& r : rows) {
    tasks.insert(r.task);
    table[r.resolution][r.task] = r.summary.mean_dice;
  }
  std::string out = "resolution";
  for (const auto& t : tasks) out += "," + t;
  out += "\n";
  for (const auto& [res, by_task] : table) {
    out += std::to_string(res);
    for (const auto& t : tasks) {
      const auto it = by_task.find(t);
      out += it == by_task.end() ? "," : fmt::format(",{}", it->second);
    }
    out += "\n";
  }
  return out;
}

SweepReport sweep_report(const std::vector<RunSummary>& runs) {
  if (runs.empty()) throw ValidationError("sweep report needs at least one run");
  SweepReport rep;
  std::set<std::pair<std::string, int>> seen;
  for (const auto& r : runs) {
    if (!seen.insert({r.task, r.resolution}).second) {
      throw ValidationError(fmt::format("sweep report: {} at {}px appears twice", r.task, r.resolution));
    }
    rep.rows.push_back({r.task, r.resolution, r.summary});
  }
  std::sort(rep.rows.begin(), rep.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.task, a.resolution) < std::tie(b.task, b.resolution);
  });
  return rep;
}

dataset::Image render_triptych(const BitMask& pred, const BitMask& gt) {
  if (!pred.same_shape(gt)) throw DimensionError("triptych: prediction and ground truth differ in size");
  const int R = pred.width();
  const int H = pred.height();
  dataset::Image img;
  img.width = 3 * R + 4;
  img.height = H;
  img.channels = 3;
  img.samples.assign(static_cast<std::size_t>(img.width) * H * 3, 0);
  auto put = [&](int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const std::size_t o = (static_cast<std::size_t>(y) * img.width + x) * 3;
    img.samples[o] = r;
    img.samples[o + 1] = g;
    img.samples[o + 2] = b;
  };
  for (int y = 0; y < H; ++y) {
    for (int s : {R, R + 1, 2 * R + 2, 2 * R + 3}) put(s, y, 128, 128, 128);
    for (int x = 0; x < R; ++x) {
      const bool p = pred.get(x, y);
      const bool g = gt.get(x, y);
      if (p) put(x, y, 255, 255, 255);
      if (p && g) put(R + 2 + x, y, 0, 255, 0);
      if (p && !g) put(R + 2 + x, y, 255, 0, 0);
      if (!p && g) put(R + 2 + x, y, 0, 0, 255);
      if (g) put(2 * R + 4 + x, y, 255, 255, 255);
    }
  }
  return img;
}

Evaluation evaluate(const dataset::LoadedDataset& data, const dataset::PredictionSet& preds,
                    const std::string& predictor) {
  Evaluation ev;
  for (const auto& c : data.cases) {
    const auto it = preds.masks.find(c.record.case_id);
    if (it == preds.masks.end()) throw ValidationError("no prediction for case " + c.record.case_id);
    ev.rows.push_back(score_case(c.record.case_id, it->second, c.label));
  }
  ev.summary.task = std::string(dataset::to_string(data.manifest.task));
  ev.summary.resolution = data.manifest.resolution;
  ev.summary.predictor = predictor;
  ev.summary.summary = summarize(ev.rows);
  return ev;
}

void write_evaluation(const fs::path& out_dir, const Evaluation& eval, const dataset::LoadedDataset& data,
                      const dataset::PredictionSet& preds, int jobs) {
  dataset::StagedDirectory staged(out_dir);
  write_text(staged.path() / "metrics.csv", metrics_csv(eval.rows));
  write_text(staged.path() / "summary.json", summary_json(eval.summary));
  fs::create_directory(staged.path() / "viz");
  parallel_for(data.cases.size(), jobs, [&](std::size_t i) {
    const auto& c = data.cases[i];
    dataset::write_png(staged.path() / "viz" / (c.record.case_id + "_triptych.png"),
                       render_triptych(preds.masks.at(c.record.case_id), c.label));
  });
  staged.commit();
}

void write_sweep(const fs::path& out_dir, const SweepReport& report) {
  dataset::StagedDirectory staged(out_dir);
  write_text(staged.path() / "sweep.csv", report.to_csv());
  write_text(staged.path() / "sweep.md", report.to_markdown());
  write_text(staged.path() / "dice_vs_resolution.csv", report.dice_vs_resolution_csv());
  staged.commit();
}

}  // namespace sbench::metrics
