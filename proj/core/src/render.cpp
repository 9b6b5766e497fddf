#include "dhecke/render.hpp"

#include <sstream>

#include <json.hpp>

#include "dhecke/error.hpp"

namespace dhecke {

namespace {

constexpr std::string_view kCsvHeader = "disc,p,q,stark_log,merel_log,log_ratio,eta,ratio,status";

std::string value_or(const std::optional<std::uint64_t>& v, std::string_view none) {
  return v ? std::to_string(*v) : std::string(none);
}

std::string log_ratio_text(const RowResult& r, std::string_view infinity) {
  if (r.log_ratio) return std::to_string(*r.log_ratio);
  return r.log_ratio_infinite() ? std::string(infinity) : std::string();
}

nlohmann::json optional_json(const std::optional<std::uint64_t>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "md") return Format::Markdown;
  throw Error(ErrorCode::BadIndex, "unknown format '" + std::string(name) + "'");
}

std::string render_csv(const std::vector<RowResult>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.request.disc << ',' << r.request.p << ',' << r.request.q << ',' << value_or(r.stark_log, "") << ','
        << value_or(r.merel_log, "") << ',' << log_ratio_text(r, "inf") << ',' << value_or(r.eta, "") << ','
        << value_or(r.table_ratio(), "") << ',' << to_string(r.status) << '\n';
  }
  return out.str();
}

std::string render_json(const std::vector<RowResult>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["disc"] = r.request.disc;
    row["p"] = r.request.p;
    row["q"] = r.request.q;
    row["stark_log"] = optional_json(r.stark_log);
    row["merel_log"] = optional_json(r.merel_log);
    row["log_ratio"] = r.log_ratio_infinite() ? nlohmann::json("inf") : optional_json(r.log_ratio);
    row["eta"] = optional_json(r.eta);
    row["ratio"] = optional_json(r.table_ratio());
    row["ratio_log_over_eta"] = optional_json(r.ratio_log_over_eta);
    row["ratio_eta_over_log"] = optional_json(r.ratio_eta_over_log);
    row["status"] = std::string(to_string(r.status));
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& c : r.checks) checks[c.name] = c.passed;
    row["checks"] = std::move(checks);
    if (!r.error.empty()) row["error"] = r.error;
    out.push_back(std::move(row));
  }
  return out.dump(2) + '\n';
}

std::string render_markdown(const std::vector<RowResult>& rows) {
  std::ostringstream out;
  const bool log_over_eta = rows.empty() || caption_orientation(rows.front().request.disc) == RatioOrientation::LogOverEta;
  out << "| p | q | " << (log_over_eta ? "log(u)/log(w_Merel)" : "log(u/w_Merel)") << " | eta | ratio |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    const std::string mod = " (" + std::to_string(r.request.p) + ")";
    auto cell = [&](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) + mod : std::string("-"); };
    std::string log = r.log_ratio_infinite() ? "∞" : cell(r.log_ratio);
    out << "| " << r.request.p << " | " << r.request.q << " | " << log << " | " << cell(r.eta) << " | "
        << cell(r.table_ratio()) << " |\n";
  }
  return out.str();
}

std::string render(const std::vector<RowResult>& rows, Format format) {
  switch (format) {
    case Format::Csv: return render_csv(rows);
    case Format::Json: return render_json(rows);
    case Format::Markdown: return render_markdown(rows);
  }
  return {};
}

}  // namespace dhecke
