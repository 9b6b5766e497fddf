#include "dhecke/disk_cache.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "dhecke/error.hpp"
#include "dhecke/merel.hpp"
#include "dhecke/stark.hpp"

namespace dhecke {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    out.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

template <class T>
T parse_field(std::string_view line, std::string_view key, int base = 10) {
  if (line.substr(0, key.size()) != key || line.size() <= key.size() + 1 || line[key.size()] != ' ') {
    throw Error(ErrorCode::CacheCorrupt, "expected field '" + std::string(key) + "'");
  }
  const std::string_view value = line.substr(key.size() + 1);
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out, base);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::CacheCorrupt, "bad value for '" + std::string(key) + "'");
  }
  return out;
}

std::string body(const CachedRow& row) {
  std::ostringstream out;
  out << DiskCache::kMagic << '\n'
      << "disc " << row.disc << '\n'
      << "p " << row.p << '\n'
      << "q " << row.q << '\n'
      << "merel_log " << row.merel_log << '\n'
      << "stark_log " << row.stark_log << '\n'
      << "eta " << (row.eta ? std::to_string(*row.eta) : "-") << '\n';
  return out.str();
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string serialize(const CachedRow& row) {
  const std::string b = body(row);
  char sum[17];
  std::snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(fnv1a(b)));
  return b + "checksum " + sum + '\n';
}

CachedRow parse_cached_row(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() != 8 || lines[0] != DiskCache::kMagic) {
    throw Error(ErrorCode::CacheCorrupt, "unknown cache format");
  }
  const auto sum_at = text.rfind("checksum ");
  if (sum_at == std::string_view::npos) throw Error(ErrorCode::CacheCorrupt, "missing checksum");
  if (parse_field<std::uint64_t>(lines[7], "checksum", 16) != fnv1a(text.substr(0, sum_at))) {
    throw Error(ErrorCode::CacheCorrupt, "checksum mismatch");
  }
  CachedRow row;
  row.disc = parse_field<std::int64_t>(lines[1], "disc");
  row.p = parse_field<std::int64_t>(lines[2], "p");
  row.q = parse_field<std::int64_t>(lines[3], "q");
  row.merel_log = parse_field<std::uint64_t>(lines[4], "merel_log");
  row.stark_log = parse_field<std::uint64_t>(lines[5], "stark_log");
  if (lines[6] != "eta -") row.eta = parse_field<std::uint64_t>(lines[6], "eta");
  return row;
}

DiskCache::DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::CacheCorrupt, "cannot create " + dir_.string() + ": " + ec.message());
}

std::filesystem::path DiskCache::file_for(std::int64_t disc, std::int64_t p, std::int64_t q) const {
  return dir_ / ("row_" + std::to_string(-disc) + "_" + std::to_string(p) + "_" + std::to_string(q) + ".txt");
}

std::optional<CachedRow> DiskCache::load(std::int64_t disc, std::int64_t p, std::int64_t q) const {
  const auto path = file_for(disc, p, q);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  const CachedRow row = parse_cached_row(buf.str());
  if (row.disc != disc || row.p != p || row.q != q) {
    throw Error(ErrorCode::CacheCorrupt, path.string() + " holds a different row");
  }
  const auto merel = merel_class(q, p);
  const auto stark = stark_class(cubic_poly(disc), q, p, merel.generator);
  if (row.merel_log != static_cast<std::uint64_t>(merel.exponent) ||
      row.stark_log != static_cast<std::uint64_t>(stark.exponent) || row.eta.has_value() != !merel.is_zero() ||
      (row.eta && *row.eta >= static_cast<std::uint64_t>(p))) {
    throw Error(ErrorCode::CacheCorrupt, path.string() + " disagrees with recomputed columns");
  }
  return row;
}

void DiskCache::store(const CachedRow& row) const {
  const auto path = file_for(row.disc, row.p, row.q);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << serialize(row);
    if (!out) throw Error(ErrorCode::CacheCorrupt, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::CacheCorrupt, "cannot rename into " + path.string() + ": " + ec.message());
}

}  // namespace dhecke
