#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

#include "moralnet/io.hpp"

namespace testing {

inline std::string source_path(const std::string& rel) { return std::string(MORALNET_SOURCE_DIR) + "/" + rel; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("moralnet_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& contents) const {
    moralnet::io::write_file(path_ / name, contents);
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
