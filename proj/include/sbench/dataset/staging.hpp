#pragma once

#include <filesystem>

namespace sbench::dataset {

/// A sibling directory that is renamed onto `target` on commit and deleted
/// otherwise, so readers never see a half-written tree. The target must be
/// absent or an empty directory (IoError otherwise).
class StagedDirectory {
 public:
  explicit StagedDirectory(std::filesystem::path target);
  StagedDirectory(const StagedDirectory&) = delete;
  StagedDirectory& operator=(const StagedDirectory&) = delete;
  ~StagedDirectory();

  const std::filesystem::path& path() const noexcept { return staging_; }
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  bool committed_ = false;
};

/// True when `dir` does not exist or is an empty directory.
bool is_absent_or_empty(const std::filesystem::path& dir);

}  // namespace sbench::dataset
