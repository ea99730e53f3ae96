#include "sbench/cli/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sbench/core/errors.hpp"

namespace sbench::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || end != value.data() + value.size()) {
    throw ConfigError(fmt::format("{}: cannot parse '{}' as a number", key, value));
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, value));
}

using Setter = std::function<void(PipelineConfig&, const std::string&, const std::string&)>;

template <typename T>
Setter number(T PipelineConfig::*field) {
  return [field](PipelineConfig& c, const std::string& k, const std::string& v) { c.*field = parse_number<T>(k, v); };
}

template <typename T>
Setter maze_number(T scenes::MazeConfig::*field) {
  return [field](PipelineConfig& c, const std::string& k, const std::string& v) {
    c.maze.*field = parse_number<T>(k, v);
  };
}

template <typename T>
Setter dots_number(T scenes::DotsConfig::*field) {
  return [field](PipelineConfig& c, const std::string& k, const std::string& v) {
    c.dots.*field = parse_number<T>(k, v);
  };
}

Setter dots_bool(bool scenes::DotsConfig::*field) {
  return [field](PipelineConfig& c, const std::string& k, const std::string& v) { c.dots.*field = parse_bool(k, v); };
}

// Rethrows library parse failures as ConfigError naming the key.
template <typename Fn>
auto keyed(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("{}: {}", key, e.what()));
  }
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"tasks",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.tasks.clear();
         for (const auto& t : split_list(v)) c.tasks.push_back(keyed(k, [&] { return dataset::task_from_string(t); }));
       }},
      {"resolutions",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.resolutions.clear();
         for (const auto& r : split_list(v)) c.resolutions.push_back(parse_number<int>(k, r));
       }},
      {"num_cases", number(&PipelineConfig::num_cases)},
      {"seed", number(&PipelineConfig::master_seed)},
      {"jobs", number(&PipelineConfig::jobs)},
      {"out", [](PipelineConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
      {"baselines",
       [](PipelineConfig& c, const std::string&, const std::string& v) {
         c.baselines.clear();
         for (const auto& b : split_list(v)) c.baselines.push_back(baselines::parse_baseline(b));
       }},
      {"adjacency",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.adjacency = keyed(k, [&] { return slcs::adjacency_from_int(parse_number<int>(k, v)); });
       }},
      {"maze.cells_x", maze_number(&scenes::MazeConfig::cells_x)},
      {"maze.cells_y", maze_number(&scenes::MazeConfig::cells_y)},
      {"maze.connection_probability", maze_number(&scenes::MazeConfig::connection_probability)},
      {"maze.label_mode",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.maze.label_mode = keyed(k, [&] { return scenes::label_mode_from_string(v); });
       }},
      {"maze.tol", maze_number(&scenes::MazeConfig::tol)},
      {"maze.max_attempts", maze_number(&scenes::MazeConfig::max_attempts)},
      {"dots.n_min", dots_number(&scenes::DotsConfig::n_min)},
      {"dots.n_max", dots_number(&scenes::DotsConfig::n_max)},
      {"dots.r_min", dots_number(&scenes::DotsConfig::r_min)},
      {"dots.r_max", dots_number(&scenes::DotsConfig::r_max)},
      {"dots.ref_half_side", dots_number(&scenes::DotsConfig::ref_half_side)},
      {"dots.threshold", dots_number(&scenes::DotsConfig::threshold)},
      {"dots.margin", dots_number(&scenes::DotsConfig::margin)},
      {"dots.min_separation", dots_number(&scenes::DotsConfig::min_separation)},
      {"dots.shape",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.dots.shape = keyed(k, [&] { return scenes::dot_shape_from_string(v); });
       }},
      {"dots.min_resolution", dots_number(&scenes::DotsConfig::min_resolution)},
      {"dots.max_attempts", dots_number(&scenes::DotsConfig::max_attempts)},
      {"dots.require_mixed", dots_bool(&scenes::DotsConfig::require_mixed)},
      {"dots.raster_guard", dots_bool(&scenes::DotsConfig::raster_guard)},
  };
  return table;
}

template <typename T, typename Fn>
std::string join(const std::vector<T>& items, Fn&& fn) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ",") + std::string(fn(item));
  return out;
}

}  // namespace

void PipelineConfig::validate() const {
  if (tasks.empty()) throw ConfigError("no tasks selected");
  if (std::set<dataset::Task>(tasks.begin(), tasks.end()).size() != tasks.size()) {
    throw ConfigError("tasks contain duplicates");
  }
  if (resolutions.empty()) throw ConfigError("no resolutions selected");
  if (std::set<int>(resolutions.begin(), resolutions.end()).size() != resolutions.size()) {
    throw ConfigError("resolutions contain duplicates");
  }
  for (int r : resolutions) {
    if (r < 16 || r % 16 != 0) throw ConfigError(fmt::format("resolution {} is not a positive multiple of 16", r));
  }
  if (num_cases < 1) throw ConfigError("num_cases must be at least 1");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  std::set<std::string> names;
  for (const auto& b : baselines) {
    if (!names.insert(baselines::to_string(b)).second) throw ConfigError("baselines contain duplicates");
  }
  maze.validate();
  dots.validate();
}

dataset::TaskParams PipelineConfig::task_params(dataset::Task task) const {
  dataset::TaskParams p;
  p.task = task;
  p.maze = maze;
  p.dots = dots;
  p.adjacency = adjacency;
  return p;
}

void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(key == "label_mode" ? "maze.label_mode" : key);
  if (it == table.end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second(cfg, key, value);
}

void apply_config_text(PipelineConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected key = value", lineno));
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("line {}: {}", lineno, e.what()));
    }
  }
}

void apply_config_file(PipelineConfig& cfg, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    apply_config_text(cfg, ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string config_to_text(const PipelineConfig& c) {
  std::string out;
  auto line = [&](std::string_view k, const auto& v) { out += fmt::format("{} = {}\n", k, v); };
  line("tasks", join(c.tasks, [](dataset::Task t) { return dataset::to_string(t); }));
  line("resolutions", join(c.resolutions, [](int r) { return std::to_string(r); }));
  line("num_cases", c.num_cases);
  line("seed", c.master_seed);
  line("jobs", c.jobs);
  line("out", c.out_dir.string());
  line("baselines", join(c.baselines, [](const baselines::BaselineKind& b) { return baselines::to_string(b); }));
  line("adjacency", static_cast<int>(c.adjacency));
  line("maze.cells_x", c.maze.cells_x);
  line("maze.cells_y", c.maze.cells_y);
  line("maze.connection_probability", c.maze.connection_probability);
  line("maze.label_mode", scenes::to_string(c.maze.label_mode));
  line("maze.tol", c.maze.tol);
  line("maze.max_attempts", c.maze.max_attempts);
  line("dots.n_min", c.dots.n_min);
  line("dots.n_max", c.dots.n_max);
  line("dots.r_min", c.dots.r_min);
  line("dots.r_max", c.dots.r_max);
  line("dots.ref_half_side", c.dots.ref_half_side);
  line("dots.threshold", c.dots.threshold);
  line("dots.margin", c.dots.margin);
  line("dots.min_separation", c.dots.min_separation);
  line("dots.shape", scenes::to_string(c.dots.shape));
  line("dots.min_resolution", c.dots.min_resolution);
  line("dots.max_attempts", c.dots.max_attempts);
  line("dots.require_mixed", c.dots.require_mixed);
  line("dots.raster_guard", c.dots.raster_guard);
  return out;
}

fs::path run_dir(const PipelineConfig& cfg, dataset::Task task, int resolution) {
  return cfg.out_dir / fmt::format("{}_{}px", dataset::to_string(task), resolution);
}

}  // namespace sbench::cli
