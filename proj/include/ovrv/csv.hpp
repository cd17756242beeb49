#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ovrv::csv {

/// Shortest decimal text that parses back to the same double; "nan" for NaN.
std::string format(double value);

/// Numeric CSV with a required header row. Columns are stored column-major.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws FormatError if the column is missing.
  const std::vector<double>& column(std::string_view name) const;
};

/// Parses a numeric CSV. When `required` is non-empty every listed column
/// must appear in the header. Throws FormatError on malformed input.
Table read(std::istream& in, const std::vector<std::string>& required = {});
Table read_file(const std::filesystem::path& path, const std::vector<std::string>& required = {});

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace ovrv::csv
