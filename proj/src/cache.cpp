#include "bei/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "bei/error.hpp"

namespace bei {

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Cache::Cache(std::string dir) : dir_(std::move(dir)) {
  if (dir_.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) fail(ErrorKind::InvalidInput, "cannot create cache directory " + dir_);
}

Cache Cache::from_env() {
  const char* v = std::getenv("BEI_CACHE");
  if (!v || !*v) return Cache{};
  return Cache{std::string(v)};
}

std::string Cache::path_for(const std::string& key) const {
  std::ostringstream os;
  os << dir_ << '/' << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(key)
     << ".json";
  return os.str();
}

std::optional<std::string> Cache::get(const std::string& key) {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(key));
  if (!in) {
    ++stats_.misses;
    return std::nullopt;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    ++stats_.misses;
    return std::nullopt;
  }
  if (!j.is_object() || !j.contains("key") || !j.contains("value") ||
      j["key"].get<std::string>() != key) {
    ++stats_.misses;
    return std::nullopt;
  }
  ++stats_.hits;
  return j["value"].get<std::string>();
}

void Cache::put(const std::string& key, const std::string& value) {
  if (!enabled()) return;
  nlohmann::json j;
  j["key"] = key;
  j["value"] = value;
  std::string path = path_for(key);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump() << '\n';
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (!ec) ++stats_.writes;
}

std::string oracle_cache_key(const std::string& kind, const std::string& graph_canonical,
                             int m, long characteristic, const std::string& order) {
  std::ostringstream os;
  os << kind << '|' << graph_canonical << '|' << m << '|' << characteristic << '|' << order;
  return os.str();
}

} // namespace bei
