#include "dhs/config.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "dhs/io.hpp"

namespace dhs::config {

namespace {

using nlohmann::json;

class Parser {
public:
  Parser(std::string_view line, int number) : s_(line), line_(number) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string key() {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == '"') return quoted();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-'))
      ++pos_;
    if (start == pos_) fail("expected a key");
    return std::string(s_.substr(start, pos_ - start));
  }

  json value() {
    skip_space();
    if (pos_ >= s_.size()) fail("missing value");
    const char c = s_[pos_];
    if (c == '"') return quoted();
    if (c == '[') return array();
    if (s_.substr(pos_).starts_with("true")) {
      pos_ += 4;
      return true;
    }
    if (s_.substr(pos_).starts_with("false")) {
      pos_ += 5;
      return false;
    }
    return number();
  }

private:
  std::string quoted() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("dangling escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      out += c;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  json array() {
    ++pos_;
    json out = json::array();
    if (consume(']')) return out;
    do {
      out.push_back(value());
    } while (consume(','));
    if (!consume(']')) fail("expected ']' (arrays must fit on one line)");
    return out;
  }

  json number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || std::string_view("+-._").find(s_[pos_]) != std::string_view::npos))
      ++pos_;
    std::string token;
    for (char c : s_.substr(start, pos_ - start))
      if (c != '_') token += c;
    if (token.empty()) fail("expected a value");
    const bool integral = token.find_first_of(".eEna") == std::string::npos;
    const char* first = token.data() + (token[0] == '+' ? 1 : 0);
    const char* last = token.data() + token.size();
    if (integral) {
      long long v = 0;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) fail("bad integer '" + token + "'");
      return v;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail("bad number '" + token + "'");
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

json* walk(json& root, const std::vector<std::string>& path, const Parser& p) {
  json* node = &root;
  for (const auto& part : path) {
    json& child = (*node)[part];
    if (child.is_null()) child = json::object();
    if (!child.is_object()) p.fail("'" + part + "' is both a value and a table");
    node = &child;
  }
  return node;
}

std::vector<std::string> split_dotted(const std::string& dotted) {
  std::vector<std::string> parts;
  std::stringstream in(dotted);
  for (std::string part; std::getline(in, part, '.');) parts.push_back(part);
  return parts;
}

}  // namespace

nlohmann::json parse_toml(std::string_view text) {
  json root = json::object();
  json* table = &root;
  int number = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    Parser p(line, number);
    if (p.at_end()) continue;
    if (p.consume('[')) {
      std::vector<std::string> path{p.key()};
      while (p.consume('.')) path.push_back(p.key());
      if (!p.consume(']')) p.fail("expected ']'");
      if (!p.at_end()) p.fail("trailing characters after table header");
      table = walk(root, path, p);
      continue;
    }
    std::vector<std::string> path{p.key()};
    while (p.consume('.')) path.push_back(p.key());
    if (!p.consume('=')) p.fail("expected '='");
    json v = p.value();
    if (!p.at_end()) p.fail("trailing characters after value");
    const std::string leaf = path.back();
    path.pop_back();
    json* target = walk(*table, path, p);
    if (target->contains(leaf)) p.fail("duplicate key '" + leaf + "'");
    (*target)[leaf] = std::move(v);
  }
  return root;
}

nlohmann::json load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string());
  const std::string text = io::read_text(path);
  if (path.extension() == ".json") {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
  return parse_toml(text);
}

bool has(const nlohmann::json& doc, const std::string& dotted) {
  const json* node = &doc;
  for (const auto& part : split_dotted(dotted)) {
    if (!node->is_object() || !node->contains(part)) return false;
    node = &(*node)[part];
  }
  return true;
}

const nlohmann::json& require(const nlohmann::json& doc, const std::string& dotted) {
  const json* node = &doc;
  for (const auto& part : split_dotted(dotted)) {
    if (!node->is_object() || !node->contains(part)) throw ConfigError("missing config key '" + dotted + "'");
    node = &(*node)[part];
  }
  return *node;
}

double require_real(const nlohmann::json& doc, const std::string& dotted) {
  const json& v = require(doc, dotted);
  if (!v.is_number()) throw ConfigError("config key '" + dotted + "' must be a number");
  return v.get<double>();
}

long long require_integer(const nlohmann::json& doc, const std::string& dotted) {
  const json& v = require(doc, dotted);
  if (!v.is_number_integer()) throw ConfigError("config key '" + dotted + "' must be an integer");
  return v.get<long long>();
}

std::string require_string(const nlohmann::json& doc, const std::string& dotted) {
  const json& v = require(doc, dotted);
  if (!v.is_string()) throw ConfigError("config key '" + dotted + "' must be a string");
  return v.get<std::string>();
}

}  // namespace dhs::config
