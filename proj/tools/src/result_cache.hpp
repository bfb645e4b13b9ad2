#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace wdist::cli {

std::string sha256_hex(const std::string& data);

/// One file per result: a "sha256:<hex>" line followed by the JSON body.
/// Entries whose checksum does not match are deleted on load.
class ResultCache {
 public:
  static constexpr const char* kArtifactVersion = "wdist-results-1";

  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& key) const;

  enum class Status { Hit, Miss, Invalidated };
  struct Lookup {
    Status status = Status::Miss;
    std::string body;
  };

  Lookup load(const std::string& key) const;
  /// Atomic write under an exclusive lock on the cache directory.
  void store(const std::string& key, const std::string& body) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace wdist::cli
