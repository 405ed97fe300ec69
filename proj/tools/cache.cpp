#include "cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "macpoly/errors.hpp"

namespace macpoly::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::Internal, "sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

ResultCache::ResultCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {
  if (!dir_) return;
  std::error_code ec;
  fs::create_directories(*dir_, ec);
  if (ec) fail(ErrorKind::InvalidInput, "cannot create cache directory " + dir_->string() + ": " + ec.message());
}

fs::path ResultCache::path_for(const std::string& key_text) const { return *dir_ / (sha256_hex(key_text) + ".json"); }

std::optional<std::string> ResultCache::load(const nlohmann::json& key) {
  if (!dir_) return std::nullopt;
  const std::string key_text = key.dump();
  std::ifstream in(path_for(key_text));
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  const auto doc = nlohmann::json::parse(ss.str(), nullptr, false);
  // a damaged or colliding entry is treated as absent
  if (doc.is_discarded() || !doc.contains("key") || doc["key"] != key || !doc.contains("payload") ||
      !doc["payload"].is_string())
    return std::nullopt;
  return doc["payload"].get<std::string>();
}

void ResultCache::save(const nlohmann::json& key, const std::string& payload) {
  if (!dir_) return;
  const std::string key_text = key.dump();
  const fs::path target = path_for(key_text);
  std::lock_guard lock(write_mu_);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(ErrorKind::InvalidInput, "cache directory is not writable: " + dir_->string());
    out << nlohmann::json{{"key", key}, {"payload", payload}}.dump();
  }
  fs::rename(tmp, target);
}

std::string ResultCache::get_or_compute(const nlohmann::json& key, const std::function<std::string()>& compute) {
  if (auto hit = load(key)) {
    ++stats_.hits;
    return *hit;
  }
  ++stats_.misses;
  std::string payload = compute();
  ++stats_.computed;
  save(key, payload);
  return payload;
}

}  // namespace macpoly::cli
