#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbench/cli/config.hpp"
#include "sbench/cli/pipeline.hpp"
#include "sbench/core/errors.hpp"
#include "sbench/core/version.hpp"

namespace {

using sbench::ExitCode;
using sbench::cli::PipelineConfig;

// Config flags shared by generate, predict, evaluate, report and pipeline.
struct ConfigFlags {
  std::string config_file;
  std::vector<std::string> tasks;
  std::vector<std::string> resolutions;
  std::vector<std::string> baselines;
  std::vector<std::string> sets;
  std::optional<std::string> num_cases, seed, out, jobs, label_mode, adjacency;

  void add_to(CLI::App* app) {
    app->add_option("--config", config_file, "key = value configuration file");
    app->add_option("--task,--tasks", tasks, "maze, dots (comma separated or repeated)")->delimiter(',');
    app->add_option("--resolution,--resolutions", resolutions, "multiples of 16")->delimiter(',');
    app->add_option("--baseline", baselines, "oracle, empty, full, copy_channel<i>, entry_component")
        ->delimiter(',');
    app->add_option("--num-cases", num_cases, "cases per dataset");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--out", out, "output root");
    app->add_option("--jobs", jobs, "worker threads");
    app->add_option("--label-mode", label_mode, "maze label: shortest or corridor");
    app->add_option("--adjacency", adjacency, "4 or 8");
    app->add_option("--set", sets, "override any configuration key (key=value)");
  }

  PipelineConfig resolve() const {
    PipelineConfig cfg;
    if (!config_file.empty()) sbench::cli::apply_config_file(cfg, config_file);
    auto list = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
      return s;
    };
    if (!tasks.empty()) apply_setting(cfg, "tasks", list(tasks));
    if (!resolutions.empty()) apply_setting(cfg, "resolutions", list(resolutions));
    if (!baselines.empty()) apply_setting(cfg, "baselines", list(baselines));
    const std::pair<const char*, const std::optional<std::string>*> scalars[] = {
        {"num_cases", &num_cases}, {"seed", &seed},           {"out", &out},
        {"jobs", &jobs},           {"label_mode", &label_mode}, {"adjacency", &adjacency}};
    for (const auto& [key, value] : scalars) {
      if (*value) apply_setting(cfg, key, **value);
    }
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw sbench::ConfigError("--set expects key=value, got '" + kv + "'");
      apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
  }
};

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& kv : items) {
    const auto eq = kv.find('=');
    std::size_t used = 0;
    double value = 0.0;
    try {
      if (eq == std::string::npos) throw std::invalid_argument(kv);
      value = std::stod(kv.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw sbench::ConfigError("--param expects name=number, got '" + kv + "'");
    }
    if (used != kv.size() - eq - 1) throw sbench::ConfigError("--param expects name=number, got '" + kv + "'");
    out[kv.substr(0, eq)] = value;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Spatial-logic segmentation benchmark: generate, predict, evaluate, report."};
  app.set_version_flag("--version", std::string(sbench::kGeneratorVersion));
  app.require_subcommand(1);

  ConfigFlags flags;
  std::string pred_dir;
  std::string pred_name = "external";
  bool print_config = false;

  auto* generate = app.add_subcommand("generate", "Generate {out}/{task}_{R}px/dataset");
  auto* predict = app.add_subcommand("predict", "Run baselines into {out}/{task}_{R}px/preds_<kind>");
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions into {out}/{task}_{R}px/eval_<kind>");
  auto* report = app.add_subcommand("report", "Collect evaluations into {out}/report_<kind>");
  auto* pipeline = app.add_subcommand("pipeline", "generate, predict, evaluate and report in one go");
  for (auto* sub : {generate, predict, evaluate, report, pipeline}) flags.add_to(sub);
  pipeline->add_flag("--print-config", print_config, "print the resolved configuration and exit");
  evaluate->add_option("--pred-dir", pred_dir, "external prediction directory ({case_id}.png)");
  evaluate->add_option("--name", pred_name, "predictor name for --pred-dir results");

  sbench::cli::GtRequest gt;
  std::vector<std::string> gt_params;
  int gt_adjacency = 4;
  auto* gt_cmd = app.add_subcommand("gt", "Apply a spec file to a directory of channel images");
  gt_cmd->add_option("--spec", gt.spec, "spec file (.sls)")->required();
  gt_cmd->add_option("--images", gt.images, "dataset root or directory of {id}_{cccc}.png")->required();
  gt_cmd->add_option("--out", gt.out, "output directory (must be absent or empty)")->required();
  gt_cmd->add_option("--param", gt_params, "spec parameter name=value");
  gt_cmd->add_option("--adjacency", gt_adjacency, "4 or 8");
  gt_cmd->add_option("--jobs", gt.jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kValidation);
  }

  if (gt_cmd->parsed()) {
    gt.params = parse_params(gt_params);
    gt.adjacency = sbench::slcs::adjacency_from_int(gt_adjacency);
    const int n = sbench::cli::run_gt(gt);
    std::cout << fmt::format("gt: {} cases -> {}\n", n, gt.out.string());
    return 0;
  }

  const PipelineConfig cfg = flags.resolve();
  sbench::cli::RunLog log(std::cout);
  if (generate->parsed()) {
    sbench::cli::run_generate(cfg, log);
  } else if (predict->parsed()) {
    sbench::cli::run_predict(cfg, log);
  } else if (evaluate->parsed()) {
    if (pred_dir.empty()) {
      sbench::cli::run_evaluate(cfg, log);
    } else {
      sbench::cli::run_evaluate_external(cfg, pred_dir, pred_name, log);
    }
  } else if (report->parsed()) {
    sbench::cli::run_report(cfg, log);
  } else if (pipeline->parsed()) {
    if (print_config) {
      std::cout << sbench::cli::config_to_text(cfg);
      return 0;
    }
    sbench::cli::run_pipeline(cfg, log);
  }
  if (log.failures() > 0) std::cout << fmt::format("{} failure(s)\n", log.failures());
  return static_cast<int>(log.status());
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sbench::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kIo);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kValidation);
  }
}
