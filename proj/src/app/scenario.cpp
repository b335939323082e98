#include "decolab/app/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace decolab::app {

SchemaError::SchemaError(std::string origin, int line, const std::string& message)
    : std::runtime_error(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      origin_(std::move(origin)),
      line_(line) {}

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

class LineScanner {
 public:
  explicit LineScanner(const std::string& text) : s_(text) {}

  std::map<std::string, int> run() {
    try {
      skip_ws();
      lines_[""] = line_;
      value("");
    } catch (const std::runtime_error&) {
      // partial index is still useful for anchoring
    }
    return std::move(lines_);
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\n') ++line_;
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') ++pos_;
      else break;
    }
  }

  char peek() const {
    if (pos_ >= s_.size()) throw std::runtime_error("eof");
    return s_[pos_];
  }

  std::string string_token() {
    if (peek() != '"') throw std::runtime_error("expected string");
    ++pos_;
    std::string out;
    while (true) {
      const char c = peek();
      ++pos_;
      if (c == '"') break;
      if (c == '\\') {
        const char e = peek();
        ++pos_;
        if (e == 'u') {
          pos_ += 4;
          out += '?';
        } else {
          out += e;
        }
        continue;
      }
      if (c == '\n') ++line_;
      out += c;
    }
    return out;
  }

  void value(const std::string& ptr) {
    skip_ws();
    const char c = peek();
    if (c == '{') {
      ++pos_;
      skip_ws();
      if (peek() == '}') {
        ++pos_;
        return;
      }
      while (true) {
        skip_ws();
        const int key_line = line_;
        const std::string key = string_token();
        const std::string child = ptr + "/" + escape_token(key);
        lines_.emplace(child, key_line);
        skip_ws();
        if (peek() != ':') throw std::runtime_error("expected colon");
        ++pos_;
        value(child);
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == '}') {
          ++pos_;
          return;
        }
        throw std::runtime_error("expected , or }");
      }
    }
    if (c == '[') {
      ++pos_;
      skip_ws();
      if (peek() == ']') {
        ++pos_;
        return;
      }
      for (std::size_t i = 0;; ++i) {
        skip_ws();
        const std::string child = ptr + "/" + std::to_string(i);
        lines_.emplace(child, line_);
        value(child);
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ']') {
          ++pos_;
          return;
        }
        throw std::runtime_error("expected , or ]");
      }
    }
    if (c == '"') {
      string_token();
      return;
    }
    while (pos_ < s_.size()) {
      const char d = s_[pos_];
      if (d == ',' || d == '}' || d == ']' || d == ' ' || d == '\n' || d == '\t' || d == '\r') break;
      ++pos_;
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

int line_at_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  const std::size_t end = std::min(offset, text.size());
  for (std::size_t i = 0; i < end; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

const char* type_name(const nlohmann::json& j) { return j.type_name(); }

}  // namespace

std::map<std::string, int> index_lines(const std::string& text) { return LineScanner(text).run(); }

ScenarioDoc ScenarioDoc::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

ScenarioDoc ScenarioDoc::parse(const std::string& text, const std::string& origin) {
  ScenarioDoc doc;
  doc.origin_ = origin;
  try {
    doc.json_ = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and points just past the offending character
    const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    throw SchemaError(origin, line_at_offset(text, off), "invalid JSON");
  }
  if (!doc.json_.is_object()) throw SchemaError(origin, 1, "scenario must be a JSON object");
  doc.lines_ = index_lines(text);
  return doc;
}

int ScenarioDoc::line_of(const std::string& pointer) const {
  std::string p = pointer;
  while (true) {
    const auto it = lines_.find(p);
    if (it != lines_.end()) return it->second;
    if (p.empty()) return 0;
    p.erase(p.rfind('/'));
  }
}

int Node::line() const { return doc_->line_of(pointer_); }

void Node::fail(const std::string& message) const {
  const std::string where = pointer_.empty() ? "scenario" : pointer_;
  throw SchemaError(doc_->origin(), line(), where + ": " + message);
}

bool Node::has(const std::string& key) const { return value_->is_object() && value_->contains(key); }

Node Node::at(const std::string& key) const {
  if (!value_->is_object()) fail("expected an object");
  const auto it = value_->find(key);
  if (it == value_->end()) fail("missing required key \"" + key + "\"");
  return {doc_, &*it, pointer_ + "/" + escape_token(key)};
}

std::optional<Node> Node::get(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

std::size_t Node::size() const {
  if (!value_->is_array()) fail(std::string("expected an array, got ") + type_name(*value_));
  return value_->size();
}

Node Node::element(std::size_t i) const {
  if (i >= size()) fail("index out of range");
  return {doc_, &(*value_)[i], pointer_ + "/" + std::to_string(i)};
}

void Node::only(std::initializer_list<const char*> allowed) const {
  if (!value_->is_object()) fail(std::string("expected an object, got ") + type_name(*value_));
  for (const auto& [key, val] : value_->items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) Node(doc_, &val, pointer_ + "/" + escape_token(key)).fail("unknown key");
  }
}

double Node::number() const {
  if (!value_->is_number()) fail(std::string("expected a number, got ") + type_name(*value_));
  const double x = value_->get<double>();
  if (!std::isfinite(x)) fail("number must be finite");
  return x;
}

double Node::positive() const {
  const double x = number();
  if (!(x > 0.0)) fail("must be > 0");
  return x;
}

double Node::nonnegative() const {
  const double x = number();
  if (!(x >= 0.0)) fail("must be >= 0");
  return x;
}

std::size_t Node::count(std::size_t min_value) const {
  const double x = number();
  if (x != std::floor(x)) fail("must be an integer");
  if (x < static_cast<double>(min_value)) fail("must be >= " + std::to_string(min_value));
  if (x > 1e15) fail("too large");
  return static_cast<std::size_t>(x);
}

std::uint64_t Node::u64() const {
  if (value_->is_number_unsigned()) return value_->get<std::uint64_t>();
  if (value_->is_number_integer()) {
    if (value_->get<std::int64_t>() < 0) fail("must be >= 0");
    return static_cast<std::uint64_t>(value_->get<std::int64_t>());
  }
  fail(std::string("expected an unsigned integer, got ") + type_name(*value_));
}

std::string Node::str() const {
  if (!value_->is_string()) fail(std::string("expected a string, got ") + type_name(*value_));
  return value_->get<std::string>();
}

bool Node::boolean() const {
  if (!value_->is_boolean()) fail(std::string("expected true or false, got ") + type_name(*value_));
  return value_->get<bool>();
}

cplx Node::complex() const {
  if (value_->is_number()) return {number(), 0.0};
  if (value_->is_array() && value_->size() == 2) return {element(0).number(), element(1).number()};
  fail("expected a number or a [re, im] pair");
}

std::vector<double> Node::numbers() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = element(i).number();
  return out;
}

CouplingLaw parse_coupling(const Node& node) {
  const std::string law = node.at("law").str();
  if (law == "fixed") {
    node.only({"law", "value"});
    return FixedCoupling{node.at("value").nonnegative()};
  }
  if (law == "uniform" || law == "log-uniform") {
    node.only({"law", "min", "max"});
    const double lo = node.at("min").positive();
    const double hi = node.at("max").positive();
    if (!(lo <= hi)) node.at("max").fail("must be >= min");
    if (law == "uniform") return UniformCoupling{lo, hi};
    return LogUniformCoupling{lo, hi};
  }
  node.at("law").fail("unknown coupling law \"" + law + "\" (fixed, uniform, log-uniform)");
}

}  // namespace decolab::app
