#include "sbench/dataset/dataset.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "sbench/core/errors.hpp"
#include "sbench/core/parallel.hpp"
#include "sbench/core/rng.hpp"
#include "sbench/core/version.hpp"
#include "sbench/dataset/png_io.hpp"
#include "sbench/dataset/staging.hpp"

namespace sbench::dataset {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kManifestName = "dataset.json";

Image mask_to_image(const BitMask& m, std::uint8_t on) {
  Image img;
  img.width = m.width();
  img.height = m.height();
  img.samples.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) img.samples[i] = m.at(i) ? on : 0;
  return img;
}

BitMask image_to_mask(const Image& img) {
  BitMask m(img.width, img.height);
  for (std::size_t i = 0; i < m.size(); ++i) m.set_at(i, img.samples[i] != 0);
  return m;
}

std::string channel_file(const std::string& id, int c) { return fmt::format("imagesTr/{}_{:04d}.png", id, c); }
std::string label_file(const std::string& id) { return fmt::format("labelsTr/{}.png", id); }

// ---------------------------------------------------------------- JSON

json maze_to_json(const scenes::MazeConfig& c) {
  return {{"cells_x", c.cells_x},
          {"cells_y", c.cells_y},
          {"connection_probability", c.connection_probability},
          {"label_mode", scenes::to_string(c.label_mode)},
          {"tol", c.tol},
          {"max_attempts", c.max_attempts}};
}

json dots_to_json(const scenes::DotsConfig& c) {
  return {{"n_min", c.n_min},
          {"n_max", c.n_max},
          {"r_min", c.r_min},
          {"r_max", c.r_max},
          {"ref_half_side", c.ref_half_side},
          {"threshold", c.threshold},
          {"margin", c.margin},
          {"min_separation", c.min_separation},
          {"shape", scenes::to_string(c.shape)},
          {"min_resolution", c.min_resolution},
          {"max_attempts", c.max_attempts},
          {"require_mixed", c.require_mixed},
          {"raster_guard", c.raster_guard}};
}

scenes::MazeConfig maze_from_json(const json& j) {
  scenes::MazeConfig c;
  c.cells_x = j.at("cells_x").get<int>();
  c.cells_y = j.at("cells_y").get<int>();
  c.connection_probability = j.at("connection_probability").get<double>();
  c.label_mode = scenes::label_mode_from_string(j.at("label_mode").get<std::string>());
  c.tol = j.at("tol").get<int>();
  c.max_attempts = j.at("max_attempts").get<int>();
  return c;
}

scenes::DotsConfig dots_from_json(const json& j) {
  scenes::DotsConfig c;
  c.n_min = j.at("n_min").get<int>();
  c.n_max = j.at("n_max").get<int>();
  c.r_min = j.at("r_min").get<double>();
  c.r_max = j.at("r_max").get<double>();
  c.ref_half_side = j.at("ref_half_side").get<double>();
  c.threshold = j.at("threshold").get<double>();
  c.margin = j.at("margin").get<double>();
  c.min_separation = j.at("min_separation").get<double>();
  c.shape = scenes::dot_shape_from_string(j.at("shape").get<std::string>());
  c.min_resolution = j.at("min_resolution").get<int>();
  c.max_attempts = j.at("max_attempts").get<int>();
  c.require_mixed = j.at("require_mixed").get<bool>();
  c.raster_guard = j.at("raster_guard").get<bool>();
  return c;
}

json manifest_to_json(const DatasetManifest& m) {
  json params = {{"adjacency", static_cast<int>(m.params.adjacency)}};
  if (m.task == Task::kMaze) {
    params["maze"] = maze_to_json(m.params.maze);
  } else {
    params["dots"] = dots_to_json(m.params.dots);
  }
  json channels = json::array();
  for (const auto& c : m.channels) channels.push_back({{"index", c.index}, {"name", c.name}});
  json cases = json::array();
  for (const auto& r : m.cases) {
    json meta = json::object();
    for (const auto& [k, v] : r.meta) meta[k] = v;
    cases.push_back({{"case_id", r.case_id},
                     {"index", r.index},
                     {"seed", r.seed},
                     {"channel_files", r.channel_files},
                     {"label_file", r.label_file},
                     {"meta", meta}});
  }
  return {{"schema_version", m.schema_version},
          {"generator_version", m.generator_version},
          {"task", to_string(m.task)},
          {"resolution", m.resolution},
          {"num_cases", m.num_cases},
          {"master_seed", m.master_seed},
          {"params", params},
          {"channels", channels},
          {"folds", m.folds ? json(*m.folds) : json(nullptr)},
          {"cases", cases}};
}

DatasetManifest manifest_from_json(const json& j) {
  DatasetManifest m;
  m.schema_version = j.at("schema_version").get<int>();
  if (m.schema_version != kSchemaVersion) {
    throw ValidationError(fmt::format("unsupported schema_version {} (expected {})", m.schema_version,
                                      kSchemaVersion));
  }
  m.generator_version = j.at("generator_version").get<std::string>();
  m.task = task_from_string(j.at("task").get<std::string>());
  m.resolution = j.at("resolution").get<int>();
  m.num_cases = j.at("num_cases").get<int>();
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  const auto& params = j.at("params");
  m.params.task = m.task;
  m.params.adjacency = slcs::adjacency_from_int(params.at("adjacency").get<int>());
  if (m.task == Task::kMaze) {
    m.params.maze = maze_from_json(params.at("maze"));
  } else {
    m.params.dots = dots_from_json(params.at("dots"));
  }
  for (const auto& c : j.at("channels")) {
    m.channels.push_back({c.at("index").get<int>(), c.at("name").get<std::string>()});
  }
  const auto& folds = j.at("folds");
  if (!folds.is_null()) m.folds = folds.get<int>();
  for (const auto& c : j.at("cases")) {
    CaseRecord r;
    r.case_id = c.at("case_id").get<std::string>();
    r.index = c.at("index").get<int>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.channel_files = c.at("channel_files").get<std::vector<std::string>>();
    r.label_file = c.at("label_file").get<std::string>();
    for (const auto& [k, v] : c.at("meta").items()) r.meta[k] = v.get<std::int64_t>();
    m.cases.push_back(std::move(r));
  }
  return m;
}

// Structural checks that need no files.
void check_manifest(const DatasetManifest& m, std::vector<std::string>& problems) {
  if (m.resolution < 1) problems.push_back(fmt::format("resolution {} is not positive", m.resolution));
  if (m.num_cases != static_cast<int>(m.cases.size())) {
    problems.push_back(fmt::format("num_cases is {} but {} cases are listed", m.num_cases, m.cases.size()));
  }
  const auto names = m.params.channel_names();
  if (m.channels.size() != names.size()) {
    problems.push_back(fmt::format("task {} has {} channels, manifest lists {}", to_string(m.task),
                                   names.size(), m.channels.size()));
  }
  std::set<std::string> seen;
  for (const auto& r : m.cases) {
    if (!seen.insert(r.case_id).second) problems.push_back("duplicate case_id " + r.case_id);
    if (r.case_id != case_id(m.params, r.index)) {
      problems.push_back(fmt::format("case_id {} does not match index {}", r.case_id, r.index));
    }
    if (r.channel_files.size() != names.size()) {
      problems.push_back(fmt::format("case {}: {} channel files, expected {}", r.case_id,
                                     r.channel_files.size(), names.size()));
    }
  }
}

[[noreturn]] void fail(const std::string& what, const std::vector<std::string>& problems) {
  std::string msg = what;
  for (const auto& p : problems) msg += "\n  - " + p;
  throw ValidationError(msg);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

// Loads one mask for read_dataset; records a problem instead of throwing.
std::optional<BitMask> load_checked(const fs::path& root, const std::string& rel, const std::string& id,
                                    int resolution, std::uint8_t on_value, std::vector<std::string>& problems) {
  const fs::path path = root / rel;
  if (!fs::exists(path)) {
    problems.push_back(fmt::format("case {}: missing {}", id, rel));
    return std::nullopt;
  }
  Image img;
  try {
    img = read_png_gray8(path);
  } catch (const Error& e) {
    problems.push_back(fmt::format("case {}: {}", id, e.what()));
    return std::nullopt;
  }
  if (img.width != resolution || img.height != resolution) {
    problems.push_back(fmt::format("case {}: {} is {}x{}, expected {}x{}", id, rel, img.width, img.height,
                                   resolution, resolution));
    return std::nullopt;
  }
  for (std::uint8_t v : img.samples) {
    if (v != 0 && v != on_value) {
      problems.push_back(fmt::format("case {}: {} holds value {}, allowed {{0, {}}}", id, rel, v, on_value));
      return std::nullopt;
    }
  }
  return image_to_mask(img);
}

}  // namespace

std::string_view to_string(Task t) noexcept { return t == Task::kMaze ? "maze" : "dots"; }

Task task_from_string(std::string_view s) {
  if (s == "maze") return Task::kMaze;
  if (s == "dots") return Task::kDots;
  throw ConfigError("task must be 'maze' or 'dots', got '" + std::string(s) + "'");
}

std::vector<std::string> TaskParams::channel_names() const {
  if (task == Task::kMaze) return {"maze", "entry", "exit"};
  return {"dots", "reference"};
}

std::string case_id(const TaskParams& params, int index) {
  if (params.task == Task::kMaze) {
    return fmt::format("maze_{}x{}_{:03d}", params.maze.cells_x, params.maze.cells_y, index);
  }
  return fmt::format("dots_{:03d}", index);
}

CaseData generate_case(const TaskParams& params, int resolution, std::uint64_t master_seed, int index) {
  CaseData c;
  c.record.case_id = case_id(params, index);
  c.record.index = index;
  c.record.seed = derive_case_seed(master_seed, to_string(params.task), resolution, index);
  auto& meta = c.record.meta;
  if (params.task == Task::kMaze) {
    const auto scene = scenes::sample_maze_scene(c.record.seed, params.maze);
    c.channels = scenes::rasterize_maze(scene, resolution);
    c.label = scenes::maze_ground_truth(c.channels, params.maze, params.adjacency);
    const auto from_entry = slcs::op_gdt(c.channels[0].complement(), c.channels[1], params.adjacency);
    double steps = kInfinity;
    for (std::size_t i = 0; i < from_entry.size(); ++i)
      if (c.channels[2].at(i)) steps = std::min(steps, from_entry.at(i));
    meta["path_length"] = static_cast<std::int64_t>(steps);
    meta["open_walls"] = scene.open_count();
    meta["entry_x"] = scene.entry.x;
    meta["entry_y"] = scene.entry.y;
    meta["exit_x"] = scene.exit.x;
    meta["exit_y"] = scene.exit.y;
  } else {
    if (resolution < params.dots.min_resolution) {
      throw ConfigError(fmt::format("dots resolution {} is below min_resolution {}", resolution,
                                    params.dots.min_resolution));
    }
    const auto scene = scenes::sample_dots_scene(c.record.seed, params.dots);
    c.channels = scenes::rasterize_dots(scene, resolution);
    c.label = scenes::dots_ground_truth(c.channels, params.dots, params.adjacency);
    meta["num_dots"] = static_cast<std::int64_t>(scene.dots.size());
    meta["num_selected"] = static_cast<std::int64_t>(scene.selected.size());
  }
  meta["label_pixels"] = static_cast<std::int64_t>(c.label.popcount());
  return c;
}

std::vector<CaseData> generate_cases(const TaskParams& params, int resolution, int num_cases,
                                     std::uint64_t master_seed, int jobs) {
  if (num_cases < 1) throw ConfigError("num_cases must be >= 1");
  std::vector<std::optional<CaseData>> slots(static_cast<std::size_t>(num_cases));
  parallel_for(slots.size(), jobs, [&](std::size_t i) {
    slots[i] = generate_case(params, resolution, master_seed, static_cast<int>(i));
  });
  std::vector<CaseData> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

DatasetManifest write_dataset(const std::vector<CaseData>& cases, const DatasetHeader& header,
                              const fs::path& out_dir, int jobs) {
  DatasetManifest m;
  m.task = header.params.task;
  m.resolution = header.resolution;
  m.num_cases = static_cast<int>(cases.size());
  m.master_seed = header.master_seed;
  m.params = header.params;
  m.generator_version = std::string(kGeneratorVersion);
  m.folds = header.folds;
  const auto names = m.params.channel_names();
  for (std::size_t c = 0; c < names.size(); ++c) m.channels.push_back({static_cast<int>(c), names[c]});

  std::set<std::string> seen;
  for (const auto& c : cases) {
    if (!seen.insert(c.record.case_id).second) throw ValidationError("duplicate case_id " + c.record.case_id);
    if (c.channels.size() != names.size()) {
      throw ValidationError(fmt::format("case {} has {} channels, expected {}", c.record.case_id,
                                        c.channels.size(), names.size()));
    }
    for (const auto& ch : c.channels)
      if (ch.width() != m.resolution || ch.height() != m.resolution)
        throw DimensionError("case " + c.record.case_id + " does not match the dataset resolution");
    CaseRecord r = c.record;
    r.channel_files.clear();
    for (std::size_t ch = 0; ch < names.size(); ++ch)
      r.channel_files.push_back(channel_file(r.case_id, static_cast<int>(ch)));
    r.label_file = label_file(r.case_id);
    m.cases.push_back(std::move(r));
  }

  StagedDirectory staged(out_dir);
  fs::create_directory(staged.path() / "imagesTr");
  fs::create_directory(staged.path() / "labelsTr");
  parallel_for(cases.size(), jobs, [&](std::size_t i) {
    const auto& rec = m.cases[i];
    for (std::size_t ch = 0; ch < cases[i].channels.size(); ++ch)
      write_png(staged.path() / rec.channel_files[ch], mask_to_image(cases[i].channels[ch], 255));
    write_png(staged.path() / rec.label_file, mask_to_image(cases[i].label, 1));
  });
  write_text(staged.path() / kManifestName, manifest_to_json(m).dump(2) + "\n");
  staged.commit();
  return m;
}

DatasetManifest read_manifest(const fs::path& dir) {
  const fs::path path = dir / kManifestName;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  DatasetManifest m;
  try {
    m = manifest_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  std::vector<std::string> problems;
  check_manifest(m, problems);
  if (!problems.empty()) fail(path.string() + " is inconsistent:", problems);
  return m;
}

LoadedDataset read_dataset(const fs::path& dir) {
  LoadedDataset out;
  out.manifest = read_manifest(dir);
  const auto& m = out.manifest;
  std::vector<std::string> problems;
  for (const auto& r : m.cases) {
    CaseData c;
    c.record = r;
    bool ok = true;
    for (const auto& f : r.channel_files) {
      auto mask = load_checked(dir, f, r.case_id, m.resolution, 255, problems);
      if (mask) {
        c.channels.push_back(std::move(*mask));
      } else {
        ok = false;
      }
    }
    auto label = load_checked(dir, r.label_file, r.case_id, m.resolution, 1, problems);
    if (label) {
      c.label = std::move(*label);
    } else {
      ok = false;
    }
    if (ok) out.cases.push_back(std::move(c));
  }
  if (!problems.empty()) fail("dataset " + dir.string() + " failed validation:", problems);
  return out;
}

DatasetHeader header_from_manifest(const DatasetManifest& manifest) {
  return {manifest.params, manifest.resolution, manifest.master_seed, manifest.folds};
}

PredictionSet import_predictions(const fs::path& dir, const DatasetManifest& manifest) {
  if (!fs::is_directory(dir)) throw IoError("prediction directory not found: " + dir.string());
  PredictionSet set;
  set.source_dir = dir;
  std::vector<std::string> problems;
  for (const auto& r : manifest.cases) {
    const fs::path path = dir / (r.case_id + ".png");
    if (!fs::exists(path)) {
      problems.push_back(fmt::format("case {}: missing {}", r.case_id, path.filename().string()));
      continue;
    }
    Image img;
    try {
      img = read_png_foreground(path);
    } catch (const Error& e) {
      problems.push_back(fmt::format("case {}: {}", r.case_id, e.what()));
      continue;
    }
    if (img.width != manifest.resolution || img.height != manifest.resolution) {
      problems.push_back(fmt::format("case {}: prediction is {}x{}, expected {}x{}", r.case_id, img.width,
                                     img.height, manifest.resolution, manifest.resolution));
      continue;
    }
    set.masks.emplace(r.case_id, image_to_mask(img));
  }
  if (!problems.empty()) fail("predictions in " + dir.string() + " are invalid:", problems);
  return set;
}

void write_predictions(const fs::path& dir, const std::vector<std::pair<std::string, BitMask>>& masks,
                       int jobs) {
  std::set<std::string> seen;
  for (const auto& [id, mask] : masks)
    if (!seen.insert(id).second) throw ValidationError("duplicate prediction for " + id);
  StagedDirectory staged(dir);
  parallel_for(masks.size(), jobs, [&](std::size_t i) {
    write_png(staged.path() / (masks[i].first + ".png"), mask_to_image(masks[i].second, 1));
  });
  staged.commit();
}

}  // namespace sbench::dataset
