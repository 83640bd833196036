#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moralnet {

/// Bad configuration or missing inputs. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed data encountered while processing a stage. Maps to exit code 3.
class DataError : public std::runtime_error {
 public:
  DataError(std::string stage, std::string source, std::size_t line, const std::string& what);

  const std::string& stage() const { return stage_; }
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string stage_;
  std::string source_;
  std::size_t line_;
};

}  // namespace moralnet
