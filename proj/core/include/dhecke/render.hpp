#pragma once

// Text renderings of row results: csv, json and a markdown table laid out
// like the printed tables.

#include <string>
#include <string_view>
#include <vector>

#include "dhecke/rows.hpp"

namespace dhecke {

enum class Format { Csv, Json, Markdown };

/// "csv", "json" or "md"; throws BadIndex otherwise.
Format parse_format(std::string_view name);

std::string render_csv(const std::vector<RowResult>& rows);
std::string render_json(const std::vector<RowResult>& rows);
std::string render_markdown(const std::vector<RowResult>& rows);
std::string render(const std::vector<RowResult>& rows, Format format);

}  // namespace dhecke
