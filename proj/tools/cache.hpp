#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace macpoly::cli {

struct CacheStats {
  std::atomic<long> hits{0};
  std::atomic<long> misses{0};
  std::atomic<long> computed{0};
  nlohmann::json to_json() const { return {{"cache_hits", hits.load()}, {"cache_misses", misses.load()}, {"computed", computed.load()}}; }
};

std::string sha256_hex(const std::string& data);

// Content-addressed JSON store: <dir>/<sha256(key)>.json holds {"key", "payload"}.
// Without a directory every lookup is a miss and nothing is written.
class ResultCache {
 public:
  explicit ResultCache(std::optional<std::filesystem::path> dir);

  bool enabled() const { return dir_.has_value(); }
  std::optional<std::string> load(const nlohmann::json& key);
  void save(const nlohmann::json& key, const std::string& payload);
  // Returns the cached payload text or computes, stores and returns it.
  std::string get_or_compute(const nlohmann::json& key, const std::function<std::string()>& compute);

  CacheStats& stats() { return stats_; }

 private:
  std::filesystem::path path_for(const std::string& key_text) const;

  std::optional<std::filesystem::path> dir_;
  std::mutex write_mu_;
  CacheStats stats_;
};

}  // namespace macpoly::cli
