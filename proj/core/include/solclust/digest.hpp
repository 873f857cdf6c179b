#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace solclust {

/// Incremental SHA-256, hex-encoded.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(const void* data, std::size_t size);
  Sha256& update(std::string_view s) { return update(s.data(), s.size()); }
  std::string hex();

 private:
  void* ctx_;
};

std::string sha256_hex(std::string_view data);

/// Throws IoError when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace solclust
