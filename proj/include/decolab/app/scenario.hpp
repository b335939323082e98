#pragma once

#include <cstdint>
#include <initializer_list>
#include <json.hpp>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decolab/bath.hpp"
#include "decolab/types.hpp"

namespace decolab::app {

/// Scenario file violates the schema. `line` is 1-based, 0 when unknown.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string origin, int line, const std::string& message);

  const std::string& origin() const { return origin_; }
  int line() const { return line_; }

 private:
  std::string origin_;
  int line_;
};

/// Line of every key and array element in a JSON text, by JSON pointer ("/a/b/0").
/// Tolerant of malformed input: scanning stops at the first syntax error.
std::map<std::string, int> index_lines(const std::string& text);

class ScenarioDoc;

/// Read-only view of one JSON value inside a scenario document.
class Node {
 public:
  Node(const ScenarioDoc* doc, const nlohmann::json* value, std::string pointer)
      : doc_(doc), value_(value), pointer_(std::move(pointer)) {}

  const std::string& pointer() const { return pointer_; }
  int line() const;
  const nlohmann::json& raw() const { return *value_; }

  bool is_object() const { return value_->is_object(); }
  bool is_array() const { return value_->is_array(); }
  bool is_string() const { return value_->is_string(); }
  bool has(const std::string& key) const;
  Node at(const std::string& key) const;
  std::optional<Node> get(const std::string& key) const;
  std::size_t size() const;
  Node element(std::size_t i) const;

  /// Rejects keys outside `allowed`.
  void only(std::initializer_list<const char*> allowed) const;

  double number() const;
  double positive() const;
  double nonnegative() const;
  /// Integral value >= min_value; accepts 1e5 style literals.
  std::size_t count(std::size_t min_value = 1) const;
  std::uint64_t u64() const;
  std::string str() const;
  bool boolean() const;
  /// Number or [re, im].
  cplx complex() const;
  std::vector<double> numbers() const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  const ScenarioDoc* doc_;
  const nlohmann::json* value_;
  std::string pointer_;
};

class ScenarioDoc {
 public:
  /// Parses a JSON file; syntax errors become SchemaError anchored at the offending line.
  static ScenarioDoc load(const std::string& path);
  static ScenarioDoc parse(const std::string& text, const std::string& origin);

  Node root() const { return {this, &json_, ""}; }
  const std::string& origin() const { return origin_; }
  int line_of(const std::string& pointer) const;

 private:
  std::string origin_;
  nlohmann::json json_;
  std::map<std::string, int> lines_;
};

/// {"law": "fixed", "value": g} | {"law": "uniform", "min", "max"} | {"law": "log-uniform", "min", "max"}
CouplingLaw parse_coupling(const Node& node);

}  // namespace decolab::app
