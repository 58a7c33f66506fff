#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bei {

uint64_t fnv1a64(const std::string& s);

struct CacheStats {
  long hits = 0;
  long misses = 0;
  long writes = 0;
  long audits = 0;
};

// On-disk string store addressed by the FNV-1a hash of the lookup key. Each
// entry is a JSON file recording both key and value; the key is verified on
// read, so a hash collision degrades to a miss instead of a wrong answer.
class Cache {
 public:
  Cache() = default;                // disabled
  explicit Cache(std::string dir);  // enabled when dir nonempty; created if missing
  static Cache from_env();          // directory from BEI_CACHE, else disabled

  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }
  std::optional<std::string> get(const std::string& key);
  void put(const std::string& key, const std::string& value);
  CacheStats& stats() { return stats_; }

 private:
  std::string path_for(const std::string& key) const;

  std::string dir_;
  CacheStats stats_;
};

std::string oracle_cache_key(const std::string& kind, const std::string& graph_canonical,
                             int m, long characteristic, const std::string& order);

} // namespace bei
