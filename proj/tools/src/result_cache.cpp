#include "result_cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <array>
#include <fstream>
#include <sstream>
#include <system_error>

#include <openssl/evp.h>

namespace wdist::cli {

namespace {

constexpr std::string_view kPrefix = "sha256:";

class DirLock {
 public:
  explicit DirLock(const std::filesystem::path& dir) {
    fd_ = ::open((dir / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
  static constexpr char digits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(digits[md[i] >> 4]);
    hex.push_back(digits[md[i] & 15]);
  }
  return hex;
}

std::filesystem::path ResultCache::path_for(const std::string& key) const {
  return dir_ / (sha256_hex(key).substr(0, 32) + ".json");
}

ResultCache::Lookup ResultCache::load(const std::string& key) const {
  const auto path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::string header;
  std::getline(in, header);
  std::ostringstream rest;
  rest << in.rdbuf();
  std::string body = rest.str();
  in.close();
  if (header.rfind(kPrefix, 0) == 0 && header.substr(kPrefix.size()) == sha256_hex(body)) {
    return {Status::Hit, std::move(body)};
  }
  std::error_code ec;
  std::filesystem::remove(path, ec);
  return {Status::Invalidated, {}};
}

void ResultCache::store(const std::string& key, const std::string& body) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  DirLock lock(dir_);
  const auto path = path_for(key);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << kPrefix << sha256_hex(body) << '\n' << body;
    if (!out) return;
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace wdist::cli
