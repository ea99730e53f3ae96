#include "sbench/cli/pipeline.hpp"

#include <fmt/format.h>

#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include "sbench/baselines/baselines.hpp"
#include "sbench/core/parallel.hpp"
#include "sbench/dataset/png_io.hpp"
#include "sbench/dataset/staging.hpp"
#include "sbench/metrics/metrics.hpp"
#include "sbench/slcs/evaluator.hpp"
#include "sbench/slcs/parser.hpp"

namespace sbench::cli {

namespace {

using dataset::Task;

struct Run {
  Task task;
  int resolution;
  fs::path dir;
  std::string label;  // "maze 16px"
};

std::vector<Run> runs_of(const PipelineConfig& cfg) {
  std::vector<Run> out;
  for (Task t : cfg.tasks)
    for (int r : cfg.resolutions) {
      out.push_back({t, r, run_dir(cfg, t, r), fmt::format("{} {}px", dataset::to_string(t), r)});
    }
  return out;
}

fs::path preds_dir(const Run& run, const std::string& kind) { return run.dir / ("preds_" + kind); }
fs::path eval_dir(const Run& run, const std::string& kind) { return run.dir / ("eval_" + kind); }

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void generate_one(const PipelineConfig& cfg, const Run& run, RunLog& log) {
  const auto params = cfg.task_params(run.task);
  const auto cases = dataset::generate_cases(params, run.resolution, cfg.num_cases, cfg.master_seed, cfg.jobs);
  dataset::write_dataset(cases, {params, run.resolution, cfg.master_seed, std::nullopt}, run.dir / "dataset",
                         cfg.jobs);
  log.info(fmt::format("generate {}: {} cases", run.label, cases.size()));
}

// Returns false after logging when the run must stop.
bool predict_one(const PipelineConfig& cfg, const Run& run, const dataset::LoadedDataset& data,
                 const baselines::BaselineKind& kind, RunLog& log) {
  const auto name = baselines::to_string(kind);
  try {
    const auto preds = baselines::predict_dataset(kind, data, cfg.jobs);
    dataset::write_predictions(preds_dir(run, name), preds, cfg.jobs);
    log.info(fmt::format("predict {} {}: {} masks", run.label, name, preds.size()));
    return true;
  } catch (const Error& e) {
    log.fail(fmt::format("predict {} {}", run.label, name), e);
    return false;
  }
}

void evaluate_into(const PipelineConfig& cfg, const Run& run, const dataset::LoadedDataset& data,
                   const fs::path& pred_dir, const std::string& name, RunLog& log) {
  const auto preds = dataset::import_predictions(pred_dir, data.manifest);
  const auto ev = metrics::evaluate(data, preds, name);
  metrics::write_evaluation(eval_dir(run, name), ev, data, preds, cfg.jobs);
  log.info(fmt::format("evaluate {} {}: mean dice {:.4f}, mean iou {:.4f}", run.label, name,
                       ev.summary.summary.mean_dice, ev.summary.summary.mean_iou));
}

bool evaluate_one(const PipelineConfig& cfg, const Run& run, const dataset::LoadedDataset& data,
                  const std::string& name, RunLog& log) {
  try {
    evaluate_into(cfg, run, data, preds_dir(run, name), name, log);
    return true;
  } catch (const Error& e) {
    log.fail(fmt::format("evaluate {} {}", run.label, name), e);
    return false;
  }
}

std::optional<dataset::LoadedDataset> load(const Run& run, const std::string& stage, RunLog& log) {
  try {
    return dataset::read_dataset(run.dir / "dataset");
  } catch (const Error& e) {
    log.fail(fmt::format("{} {}", stage, run.label), e);
    return std::nullopt;
  }
}

void report_one(const PipelineConfig& cfg, const baselines::BaselineKind& kind, RunLog& log) {
  const auto name = baselines::to_string(kind);
  std::vector<metrics::RunSummary> summaries;
  for (const auto& run : runs_of(cfg)) {
    const auto path = eval_dir(run, name) / "summary.json";
    try {
      auto s = metrics::parse_summary_json(read_text(path));
      if (s.task != dataset::to_string(run.task) || s.resolution != run.resolution || s.predictor != name) {
        throw ValidationError(path.string() + " does not describe " + run.label + " " + name);
      }
      summaries.push_back(std::move(s));
    } catch (const Error& e) {
      log.fail(fmt::format("report {} {}", name, run.label), e);
    }
  }
  if (summaries.empty()) return;
  try {
    metrics::write_sweep(cfg.out_dir / ("report_" + name), metrics::sweep_report(summaries));
    log.info(fmt::format("report {}: {} rows", name, summaries.size()));
  } catch (const Error& e) {
    log.fail("report " + name, e);
  }
}

}  // namespace

void RunLog::info(const std::string& line) { out_ << line << '\n'; }

void RunLog::fail(const std::string& what, const Error& e) {
  out_ << "error: " << what << ": " << e.what() << '\n';
  if (status_ == ExitCode::kOk) status_ = e.code();
  ++failures_;
}

void run_generate(const PipelineConfig& cfg, RunLog& log) {
  for (const auto& run : runs_of(cfg)) {
    try {
      generate_one(cfg, run, log);
    } catch (const Error& e) {
      log.fail("generate " + run.label, e);
    }
  }
}

void run_predict(const PipelineConfig& cfg, RunLog& log) {
  for (const auto& run : runs_of(cfg)) {
    const auto data = load(run, "predict", log);
    if (!data) continue;
    for (const auto& kind : cfg.baselines) predict_one(cfg, run, *data, kind, log);
  }
}

void run_evaluate(const PipelineConfig& cfg, RunLog& log) {
  for (const auto& run : runs_of(cfg)) {
    const auto data = load(run, "evaluate", log);
    if (!data) continue;
    for (const auto& kind : cfg.baselines) evaluate_one(cfg, run, *data, baselines::to_string(kind), log);
  }
}

void run_report(const PipelineConfig& cfg, RunLog& log) {
  for (const auto& kind : cfg.baselines) report_one(cfg, kind, log);
}

void run_pipeline(const PipelineConfig& cfg, RunLog& log) {
  for (const auto& run : runs_of(cfg)) {
    try {
      generate_one(cfg, run, log);
    } catch (const Error& e) {
      log.fail("generate " + run.label, e);
      continue;
    }
    const auto data = load(run, "read", log);
    if (!data) continue;
    for (const auto& kind : cfg.baselines) {
      if (predict_one(cfg, run, *data, kind, log)) evaluate_one(cfg, run, *data, baselines::to_string(kind), log);
    }
  }
  run_report(cfg, log);
}

void run_evaluate_external(const PipelineConfig& cfg, const fs::path& pred_dir, const std::string& name,
                           RunLog& log) {
  const auto runs = runs_of(cfg);
  if (runs.size() != 1) throw ConfigError("--pred-dir needs exactly one task and one resolution");
  const auto data = load(runs.front(), "evaluate", log);
  if (!data) return;
  try {
    evaluate_into(cfg, runs.front(), *data, pred_dir, name, log);
  } catch (const Error& e) {
    log.fail(fmt::format("evaluate {} {}", runs.front().label, name), e);
  }
}

int run_gt(const GtRequest& req) {
  const auto program = slcs::parse_source(read_text(req.spec));
  if (program.saves.empty()) throw ValidationError(req.spec.string() + " has no save directive");
  fs::path images = req.images;
  if (fs::is_directory(images / "imagesTr")) images /= "imagesTr";
  if (!fs::is_directory(images)) throw IoError("image directory " + images.string() + " does not exist");

  static const std::regex kChannelFile(R"((.+)_(\d{4})\.png)");
  std::map<std::string, std::map<int, fs::path>> groups;
  for (const auto& entry : fs::directory_iterator(images)) {
    std::smatch m;
    const auto fname = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(fname, m, kChannelFile)) {
      groups[m[1].str()][std::stoi(m[2].str())] = entry.path();
    }
  }
  if (groups.empty()) throw ValidationError("no {id}_{cccc}.png files in " + images.string());
  std::vector<std::pair<std::string, std::map<int, fs::path>>> cases(groups.begin(), groups.end());
  for (const auto& [id, files] : cases) {
    int expect = 0;
    for (const auto& [c, p] : files) {
      if (c != expect++) throw ValidationError(fmt::format("case {}: channel {:04d} is missing", id, expect - 1));
    }
  }

  dataset::StagedDirectory staged(req.out);
  const bool flat = program.saves.size() == 1;
  if (!flat) {
    for (const auto& s : program.saves) fs::create_directory(staged.path() / s.output);
  }
  parallel_for(cases.size(), req.jobs, [&](std::size_t i) {
    const auto& [id, files] = cases[i];
    slcs::EvalContext ctx;
    ctx.params = req.params;
    ctx.adjacency = req.adjacency;
    for (const auto& [c, path] : files) {
      const auto img = dataset::read_png_foreground(path);
      ctx.channels.push_back(BitMask::from_bits(img.width, img.height, img.samples));
    }
    for (const auto& [name, mask] : slcs::evaluate(program, ctx)) {
      dataset::Image out{mask.width(), mask.height(), 1, {mask.bits().begin(), mask.bits().end()}};
      dataset::write_png(flat ? staged.path() / (id + ".png") : staged.path() / name / (id + ".png"), out);
    }
  });
  staged.commit();
  return static_cast<int>(cases.size());
}

}  // namespace sbench::cli
