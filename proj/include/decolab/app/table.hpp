#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace decolab::app {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Appends a row; non-finite numbers are stored as empty cells.
  void add(std::vector<Cell> row);
};

enum class Format { csv, json };

Format parse_format(const std::string& name);

/// Round-trip text for a double ("%.17g"); zero prints as "0".
std::string format_number(double x);

std::string to_csv(const Table& t);

/// {"tables": {name: {"columns": [...], "rows": [[...], ...]}}} with stable key order.
std::string to_json(const std::vector<Table>& tables);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes every table as <dir>/<name>.csv, or all of them as <dir>/<stem>.json.
/// Returns the paths written, in order.
std::vector<std::filesystem::path> write_tables(const std::filesystem::path& dir, const std::string& stem,
                                                const std::vector<Table>& tables, Format format);

}  // namespace decolab::app
