#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dhecke/disk_cache.hpp"
#include "dhecke/error.hpp"
#include "dhecke/render.hpp"
#include "dhecke/rows.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace dhecke;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dhecke_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

RowResult infinite_row() { return compute_row({-23, 17, 103}); }

}  // namespace

TEST_CASE("validate examples") {
  const auto ok = validate({-23, 5, 11});
  CHECK(admissible(ok));
  for (const auto& c : ok) CHECK(c.passed);

  const auto gated = validate({-23, 17, 103});
  CHECK(admissible(gated));
  for (const auto& c : gated) CHECK(c.passed == (c.name != "mazur_nonvanishing"));

  const auto composite = validate({-23, 5, 12});
  CHECK_FALSE(admissible(composite));
  for (const auto& c : composite) {
    if (c.name == "q_prime") CHECK_FALSE(c.passed);
  }
  // 59 splits or is inert in the cubic field; the Frobenius is not a transposition.
  const auto split = validate({-23, 29, 59});
  for (const auto& c : split) {
    if (c.name == "frobenius_transposition") CHECK_FALSE(c.passed);
  }
}

TEST_CASE("compute_row examples") {
  const auto a = compute_row({-23, 5, 11});
  CHECK(a.status == RowStatus::Ok);
  CHECK(a.log_ratio == std::optional<std::uint64_t>(3));
  CHECK(a.eta == std::optional<std::uint64_t>(4));
  CHECK(a.table_ratio() == std::optional<std::uint64_t>(2));

  const auto b = compute_row({-31, 13, 53});
  CHECK(b.status == RowStatus::Ok);
  CHECK(b.log_ratio == std::optional<std::uint64_t>(2));
  CHECK(b.eta == std::optional<std::uint64_t>(1));
  CHECK(b.table_ratio() == std::optional<std::uint64_t>(7));

  const auto c = compute_row({-23, 53, 107});
  CHECK(c.log_ratio == std::optional<std::uint64_t>(30));
  CHECK(c.eta == std::optional<std::uint64_t>(13));
  CHECK(c.table_ratio() == std::optional<std::uint64_t>(39));
}

TEST_CASE("gated and invalid rows") {
  const auto inf = infinite_row();
  CHECK(inf.status == RowStatus::Infinite);
  CHECK(inf.log_ratio_infinite());
  CHECK_FALSE(inf.eta.has_value());
  CHECK(compute_row({-23, 5, 12}).status == RowStatus::Invalid);
  const auto bad = compute_row({-47, 5, 11});
  CHECK(bad.status == RowStatus::Invalid);
  CHECK(bad.error_code == std::optional<ErrorCode>(ErrorCode::UnsupportedDiscriminant));
}

TEST_CASE("expected ratio constants") {
  for (std::int64_t p : {5, 7, 11, 13, 17, 37, 41, 53}) {
    CHECK(expected_ratio(-23, p) * 72 % static_cast<std::uint64_t>(p) == static_cast<std::uint64_t>(p - 1));
    CHECK(expected_ratio(-31, p) == 72u % static_cast<std::uint64_t>(p));
  }
  CHECK(caption_orientation(-23) == RatioOrientation::LogOverEta);
  CHECK(caption_orientation(-31) == RatioOrientation::EtaOverLog);
}

TEST_CASE("enumerate_rows") {
  CHECK(enumerate_rows(-23, 5, 10).empty());
  const auto rows = enumerate_rows(-23, 100, 150);
  CHECK(rows.size() == 13);
  for (const auto& r : rows) {
    CHECK(oracle::prime(r.q));
    CHECK(r.q % r.p == 1);
    CHECK(admissible(validate(r)));
  }
  CHECK(enumerate_rows(-31, 100, 150).size() == 12);
}

TEST_CASE("eta is undefined exactly when the Mazur gate fails") {
  for (const auto& r : batch(-31, 13, 130, {{}, 4, {}})) {
    CHECK(r.eta.has_value() == r.check("mazur_nonvanishing"));
  }
}

TEST_CASE("batch is ordered and deterministic") {
  BatchOptions one;
  BatchOptions many;
  many.jobs = 4;
  std::size_t seen = 0;
  many.on_row = [&](const RowResult&) { ++seen; };
  const auto a = batch(-23, 13, 90, one);
  const auto b = batch(-23, 13, 90, many);
  CHECK(seen == b.size());
  CHECK(render_csv(a) == render_csv(b));
  for (std::size_t i = 1; i < b.size(); ++i) {
    const auto& x = b[i - 1].request;
    const auto& y = b[i].request;
    CHECK(std::pair(x.p, x.q) < std::pair(y.p, y.q));
  }
}

TEST_CASE("render csv") {
  CHECK(render_csv({}) == "disc,p,q,stark_log,merel_log,log_ratio,eta,ratio,status\n");
  const auto csv = render_csv({compute_row({-23, 5, 11}), infinite_row()});
  std::istringstream in(csv);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  CHECK(first.rfind("-23,5,11,", 0) == 0);
  CHECK(first.find(",3,4,2,ok") != std::string::npos);
  CHECK(second.find(",inf,,,infinite") != std::string::npos);
}

TEST_CASE("render markdown marks infinity") {
  const auto md = render_markdown({infinite_row()});
  CHECK(md.find("∞") != std::string::npos);
  CHECK(md.find("| - | - |") != std::string::npos);
}

TEST_CASE("render json round trips") {
  const std::vector<RowResult> rows = {compute_row({-23, 5, 11}), infinite_row(), compute_row({-23, 5, 12})};
  const auto text = render_json(rows);
  const auto doc = nlohmann::json::parse(text);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["eta"] == 4);
  CHECK(doc[0]["ratio"] == 2);
  CHECK(doc[0]["checks"]["mazur_nonvanishing"] == true);
  CHECK(doc[1]["log_ratio"] == "inf");
  CHECK(doc[1]["eta"].is_null());
  CHECK(doc[2]["status"] == "invalid");
  CHECK(nlohmann::json::parse(doc.dump()) == doc);
}

TEST_CASE("parse_format") {
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("md") == Format::Markdown);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("disk cache round trip") {
  const auto dir = scratch_dir("roundtrip");
  const DiskCache cache(dir);
  CHECK_FALSE(cache.load(-23, 5, 11).has_value());
  RowOptions options;
  options.disk = &cache;
  const auto first = compute_row({-23, 5, 11}, options);
  CHECK_FALSE(first.from_cache);
  const auto second = compute_row({-23, 5, 11}, options);
  CHECK(second.from_cache);
  CHECK(second.eta == first.eta);
  CHECK(render_csv({first}) == render_csv({second}));
  const auto text = serialize(*cache.load(-23, 5, 11));
  CHECK(parse_cached_row(text).eta == first.eta);
  std::filesystem::remove_all(dir);
}

TEST_CASE("disk cache detects corruption") {
  const auto dir = scratch_dir("corrupt");
  const DiskCache cache(dir);
  cache.store({-23, 5, 11, 3, 4, 4});
  const auto path = cache.file_for(-23, 5, 11);
  auto code_after = [&](const std::string& text) {
    std::ofstream(path) << text;
    try {
      cache.load(-23, 5, 11);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  std::string good;
  {
    std::ifstream in(path);
    good.assign(std::istreambuf_iterator<char>(in), {});
  }
  // A flipped eta digit breaks the checksum.
  auto flipped = good;
  flipped.replace(flipped.find("eta 4"), 5, "eta 1");
  CHECK(code_after(flipped) == ErrorCode::CacheCorrupt);
  // A consistent checksum over a wrong Merel log is caught by recomputation.
  auto wrong = good.substr(0, good.find("checksum"));
  wrong.replace(wrong.find("merel_log 3"), 11, "merel_log 2");
  char sum[32];
  std::snprintf(sum, sizeof sum, "checksum %016llx\n", static_cast<unsigned long long>(fnv1a(wrong)));
  CHECK(code_after(wrong + sum) == ErrorCode::CacheCorrupt);
  CHECK(code_after("garbage") == ErrorCode::CacheCorrupt);

  // A corrupt entry is recomputed and replaced.
  RowOptions options;
  options.disk = &cache;
  const auto row = compute_row({-23, 5, 11}, options);
  CHECK_FALSE(row.from_cache);
  CHECK(row.eta == std::optional<std::uint64_t>(4));
  CHECK(cache.load(-23, 5, 11).has_value());
  std::filesystem::remove_all(dir);
}
