#include "decolab/app/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <unistd.h>

namespace decolab::app {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  }
  // Cells without a finite value (the log of an exact zero, an undefined margin) stay empty.
  for (auto& c : row) {
    if (const auto* d = std::get_if<double>(&c); d && !std::isfinite(*d)) c = std::string();
  }
  rows.push_back(std::move(row));
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format: " + name);
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(cell_text(row[i]));
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<Table>& tables) {
  // Numbers are emitted through format_number so both formats carry identical digits.
  std::string out = "{\n  \"tables\": {";
  for (std::size_t ti = 0; ti < tables.size(); ++ti) {
    const Table& t = tables[ti];
    out += ti ? ",\n" : "\n";
    out += "    " + nlohmann::json(t.name).dump() + ": {\n      \"columns\": " + nlohmann::json(t.columns).dump() +
           ",\n      \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      out += r ? ",\n        [" : "\n        [";
      const auto& row = t.rows[r];
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ", ";
        if (const auto* d = std::get_if<double>(&row[i])) {
          out += std::isfinite(*d) ? format_number(*d) : nlohmann::json(format_number(*d)).dump();
        } else if (const auto* s = std::get_if<std::string>(&row[i])) {
          out += nlohmann::json(*s).dump();
        } else {
          out += cell_text(row[i]);
        }
      }
      out += "]";
    }
    out += t.rows.empty() ? "]\n    }" : "\n      ]\n    }";
  }
  out += "\n  }\n}\n";
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::vector<std::filesystem::path> write_tables(const std::filesystem::path& dir, const std::string& stem,
                                                const std::vector<Table>& tables, Format format) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  if (format == Format::json) {
    written.push_back(dir / (stem + ".json"));
    write_atomic(written.back(), to_json(tables));
    return written;
  }
  for (const auto& t : tables) {
    written.push_back(dir / (t.name + ".csv"));
    write_atomic(written.back(), to_csv(t));
  }
  return written;
}

}  // namespace decolab::app
