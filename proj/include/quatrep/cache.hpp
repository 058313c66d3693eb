#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "quatrep/certify.hpp"

namespace quatrep {

/// Environment variable overriding the cache directory.
inline constexpr const char* kCacheEnv = "QUATREP_CACHE_DIR";

/// Check reports on disk, one JSON file per content key.
class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// $QUATREP_CACHE_DIR, else $XDG_CACHE_HOME/quatrep, else $HOME/.cache/quatrep.
  static std::filesystem::path default_dir();
  /// SHA-256 of the canonical (check id, params, artifact and schema version) serialization.
  static std::string key(const std::string& check_id, const CheckParams& p);

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<nlohmann::json> get(const std::string& key) const;
  /// Write to a temporary file in the same directory, then rename over the target.
  void put(const std::string& key, const nlohmann::json& report) const;
  std::vector<std::pair<std::string, nlohmann::json>> list() const;
  std::size_t clear() const;

 private:
  std::filesystem::path dir_;
};

CheckReport report_from_json(const nlohmann::json& j);

}  // namespace quatrep
