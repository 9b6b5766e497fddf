// dhecke: verification rows and tables for the weight-one forms of
// discriminant -23 and -31.
//
// Exit codes: 0 success, 1 validation failure (an inadmissible request or a
// ratio that misses the expected constant), 2 internal inconsistency.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "dhecke/disk_cache.hpp"
#include "dhecke/error.hpp"
#include "dhecke/render.hpp"
#include "dhecke/rows.hpp"
#include "dhecke/selftest.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kInternal = 2;

int exit_code(const std::vector<dhecke::RowResult>& rows) {
  int code = kOk;
  for (const auto& r : rows) {
    if (r.status == dhecke::RowStatus::Failed) return kInternal;
    if (r.status == dhecke::RowStatus::Invalid || r.status == dhecke::RowStatus::Mismatch) code = kValidation;
  }
  return code;
}

std::string show(const std::optional<std::uint64_t>& v, const char* none = "-") {
  return v ? std::to_string(*v) : std::string(none);
}

void print_row(const dhecke::RowResult& r, bool verbose) {
  std::cout << "disc " << r.request.disc << "  p " << r.request.p << "  q " << r.request.q << "  status "
            << dhecke::to_string(r.status) << '\n';
  if (r.merel_log) {
    std::cout << "  stark_log " << show(r.stark_log) << "  merel_log " << show(r.merel_log) << "  log_ratio "
              << (r.log_ratio_infinite() ? "inf" : show(r.log_ratio)) << "  eta " << show(r.eta) << "  ratio "
              << show(r.table_ratio()) << '\n';
  }
  if (verbose) {
    for (const auto& c : r.checks) std::cout << "  check " << c.name << ": " << (c.passed ? "pass" : "fail") << '\n';
    if (r.ratio_log_over_eta || r.ratio_eta_over_log) {
      std::cout << "  log/eta " << show(r.ratio_log_over_eta) << "  eta/log " << show(r.ratio_eta_over_log)
                << "  expected " << dhecke::expected_ratio(r.request.disc, r.request.p) << '\n';
    }
    if (!r.aux_primes.empty()) {
      std::cout << "  auxiliary primes";
      for (auto l : r.aux_primes) std::cout << ' ' << l;
      std::cout << '\n';
    }
    if (r.from_cache) std::cout << "  eta read from cache\n";
  }
  if (!r.error.empty()) std::cout << "  error " << r.error << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eisenstein-component verification rows for cubic weight-one forms"};
  app.require_subcommand(1);
  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir, "Directory for cached rows");

  dhecke::RowRequest req;
  bool verbose = false;
  auto* row = app.add_subcommand("row", "Compute one (disc, p, q) row");
  row->add_option("--disc", req.disc, "Discriminant, -23 or -31")->required();
  row->add_option("--p", req.p, "Prime p >= 5")->required();
  row->add_option("--q", req.q, "Prime q = 1 mod p")->required();
  row->add_flag("--verbose", verbose, "Print every gate and intermediate");
  row->add_option("--cache-dir", cache_dir, "Directory for cached rows");

  std::int64_t disc = 0, pmax = 100, qmax = 150;
  std::string format = "csv", out_path;
  unsigned jobs = 1;
  auto* table = app.add_subcommand("table", "Compute every admissible row below the bounds");
  table->add_option("--disc", disc, "Discriminant, -23 or -31")->required();
  table->add_option("--pmax", pmax, "Largest p")->capture_default_str();
  table->add_option("--qmax", qmax, "Largest q")->capture_default_str();
  table->add_option("--format", format, "csv, json or md")->check(CLI::IsMember({"csv", "json", "md"}))->capture_default_str();
  table->add_option("--out", out_path, "Output file (default stdout)");
  table->add_option("--jobs", jobs, "Rows computed concurrently")->check(CLI::PositiveNumber)->capture_default_str();
  table->add_option("--cache-dir", cache_dir, "Directory for cached rows");

  auto* selftest = app.add_subcommand("selftest", "Run the algebraic invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors count as validation failures; --help exits cleanly.
    return app.exit(e) == 0 ? kOk : kValidation;
  }

  try {
    std::unique_ptr<dhecke::DiskCache> disk;
    if (!cache_dir.empty()) disk = std::make_unique<dhecke::DiskCache>(cache_dir);
    dhecke::RowOptions options;
    options.disk = disk.get();

    if (*row) {
      const auto result = dhecke::compute_row(req, options);
      print_row(result, verbose);
      return exit_code({result});
    }

    if (*table) {
      if (disc != -23 && disc != -31) {
        std::cerr << "unsupported discriminant " << disc << '\n';
        return kValidation;
      }
      dhecke::BatchOptions bo;
      bo.row = options;
      bo.jobs = jobs;
      const auto start = std::chrono::steady_clock::now();
      bo.on_row = [&](const dhecke::RowResult& r) {
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cerr << "[" << s << "s] p " << r.request.p << " q " << r.request.q << ": " << dhecke::to_string(r.status)
                  << (r.error.empty() ? "" : "  " + r.error) << '\n';
      };
      const auto rows = dhecke::batch(disc, pmax, qmax, bo);
      const std::string text = dhecke::render(rows, dhecke::parse_format(format));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) {
          std::cerr << "cannot write " << out_path << '\n';
          return kInternal;
        }
      }
      return exit_code(rows);
    }

    if (*selftest) {
      bool ok = true;
      dhecke::run_selftest([&](const dhecke::SuiteResult& r) {
        ok = ok && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.seconds << "s): " << r.detail << '\n';
      });
      return ok ? kOk : kInternal;
    }
  } catch (const dhecke::Error& e) {
    std::cerr << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
