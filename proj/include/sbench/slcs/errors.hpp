#pragma once

#include <string>

#include "sbench/core/errors.hpp"

namespace sbench::slcs {

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Base for every diagnostic that can point into a spec file.
class PositionedError : public ValidationError {
 public:
  PositionedError(SourcePos pos, const std::string& message)
      : ValidationError(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                        message),
        pos_(pos),
        message_(message) {}

  SourcePos pos() const noexcept { return pos_; }
  int line() const noexcept { return pos_.line; }
  int column() const noexcept { return pos_.column; }
  const std::string& message() const noexcept { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

class LexError : public PositionedError {
 public:
  using PositionedError::PositionedError;
};

class ParseError : public PositionedError {
 public:
  ParseError(SourcePos pos, std::string expected, std::string found)
      : PositionedError(pos, "expected " + expected + ", found " + found),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::string expected_;
  std::string found_;
};

class SortError : public PositionedError {
 public:
  SortError(SourcePos pos, std::string expected, std::string found, const std::string& context)
      : PositionedError(pos, context + ": expected " + expected + ", found " + found),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::string expected_;
  std::string found_;
};

class EvalError : public PositionedError {
 public:
  using PositionedError::PositionedError;
};

}  // namespace sbench::slcs
