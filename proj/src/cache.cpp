#include "quatrep/cache.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>

#include "quatrep/errors.hpp"

namespace fs = std::filesystem;

namespace quatrep {

fs::path ReportCache::default_dir() {
  if (const char* e = std::getenv(kCacheEnv); e && *e) return e;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "quatrep";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "quatrep";
  return fs::current_path() / ".quatrep-cache";
}

std::string ReportCache::key(const std::string& check_id, const CheckParams& p) {
  nlohmann::json j{{"check", find_check(check_id).id},
                   {"params", to_json(p)},
                   {"artifact_version", kArtifactVersion},
                   {"schema_version", kSchemaVersion}};
  return sha256_hex(j.dump());
}

std::optional<nlohmann::json> ReportCache::get(const std::string& key) const {
  std::ifstream in(dir_ / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // a torn or foreign file is a miss
  }
}

void ReportCache::put(const std::string& key, const nlohmann::json& report) const {
  fs::create_directories(dir_);
  std::random_device rd;
  auto tmp = dir_ / (".tmp-" + key + "-" + std::to_string(::getpid()) + "-" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    out << report.dump(1) << '\n';
    if (!out.flush()) throw std::runtime_error("cache: short write to " + tmp.string());
  }
  fs::rename(tmp, dir_ / (key + ".json"));
}

std::vector<std::pair<std::string, nlohmann::json>> ReportCache::list() const {
  std::vector<std::pair<std::string, nlohmann::json>> out;
  if (!fs::exists(dir_)) return out;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (e.path().extension() != ".json") continue;
    auto key = e.path().stem().string();
    if (auto j = get(key)) out.emplace_back(key, *j);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::size_t ReportCache::clear() const {
  std::size_t n = 0;
  if (!fs::exists(dir_)) return 0;
  for (const auto& e : fs::directory_iterator(dir_)) {
    const auto name = e.path().filename().string();
    if (e.path().extension() == ".json" || name.rfind(".tmp-", 0) == 0) n += fs::remove(e.path());
  }
  return n;
}

CheckReport report_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.id = j.at("id").get<std::string>();
  r.check = j.at("check").get<std::string>();
  r.params = params_from_json(j.at("params"));
  r.verdict = j.at("verdict").get<std::string>();
  r.witness = j.at("witness");
  if (j.contains("timing_ms")) r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

}  // namespace quatrep
