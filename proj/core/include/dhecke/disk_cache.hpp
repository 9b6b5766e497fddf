#pragma once

// On-disk cache of finished rows, one small text file per (disc, p, q).
//
// Each file carries a format version and an FNV-1a checksum of its body.
// The cheap columns are recomputed on load and compared, so a stale or
// edited file is rejected instead of trusted.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace dhecke {

struct CachedRow {
  std::int64_t disc = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::uint64_t merel_log = 0;
  std::uint64_t stark_log = 0;
  std::optional<std::uint64_t> eta;  // unset when the Mazur gate fails
};

std::uint64_t fnv1a(std::string_view bytes);

class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(std::int64_t disc, std::int64_t p, std::int64_t q) const;

  /// nullopt when absent; throws CacheCorrupt when present but unreadable,
  /// mismatched in checksum or key, or disagreeing with recomputed columns.
  std::optional<CachedRow> load(std::int64_t disc, std::int64_t p, std::int64_t q) const;

  /// Writes atomically through a temporary file.
  void store(const CachedRow& row) const;

  static constexpr std::string_view kMagic = "dhecke-row v1";

 private:
  std::filesystem::path dir_;
};

std::string serialize(const CachedRow& row);
CachedRow parse_cached_row(std::string_view text);

}  // namespace dhecke
