#pragma once

#include <stdexcept>
#include <string>

namespace sbench {

// Exit status reported by the command-line front end for each error family.
enum class ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kGeneration = 2,
  kIo = 3,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code = ExitCode::kValidation)
      : std::runtime_error(what), code_(code) {}

  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what, ExitCode::kValidation) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what, ExitCode::kValidation) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what, ExitCode::kValidation) {}
};

/// Raised when a rejection sampler exhausts its attempt budget.
class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& what) : Error(what, ExitCode::kGeneration) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what, ExitCode::kIo) {}
};

}  // namespace sbench
