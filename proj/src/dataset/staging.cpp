#include "sbench/dataset/staging.hpp"

#include <unistd.h>

#include <atomic>
#include <string>
#include <system_error>

#include "sbench/core/errors.hpp"

namespace sbench::dataset {

namespace fs = std::filesystem;

namespace {

std::atomic<unsigned> g_counter{0};

}  // namespace

bool is_absent_or_empty(const fs::path& dir) {
  std::error_code ec;
  if (!fs::exists(dir, ec)) return true;
  return fs::is_directory(dir, ec) && fs::is_empty(dir, ec);
}

StagedDirectory::StagedDirectory(fs::path target) : target_(std::move(target)) {
  if (target_.filename().empty()) target_ = target_.parent_path();
  if (!is_absent_or_empty(target_)) {
    throw IoError("refusing to write into non-empty " + target_.string());
  }
  std::error_code ec;
  const fs::path parent = target_.has_parent_path() ? target_.parent_path() : fs::path(".");
  fs::create_directories(parent, ec);
  if (ec) throw IoError("cannot create " + parent.string() + ": " + ec.message());
  staging_ = parent / ("." + target_.filename().string() + ".staging-" + std::to_string(::getpid()) + "-" +
                       std::to_string(g_counter++));
  fs::remove_all(staging_, ec);
  if (!fs::create_directory(staging_, ec) || ec) {
    throw IoError("cannot create " + staging_.string() + ": " + ec.message());
  }
}

StagedDirectory::~StagedDirectory() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

void StagedDirectory::commit() {
  std::error_code ec;
  if (fs::exists(target_, ec)) {
    if (!is_absent_or_empty(target_)) throw IoError("target became non-empty: " + target_.string());
    fs::remove(target_, ec);
  }
  fs::rename(staging_, target_, ec);
  if (ec) throw IoError("cannot rename " + staging_.string() + " to " + target_.string() + ": " + ec.message());
  committed_ = true;
}

}  // namespace sbench::dataset
