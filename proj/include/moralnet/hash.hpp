#pragma once

#include <string>
#include <string_view>

namespace moralnet {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Incremental variant for hashing several fields without concatenating them.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  void update(std::string_view data);
  /// Length-prefixed field so that ("ab","c") and ("a","bc") differ.
  void field(std::string_view data);
  std::string hex_digest();

 private:
  void* ctx_;
};

}  // namespace moralnet
