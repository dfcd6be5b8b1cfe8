#include "toml_lite.hpp"

#include <cctype>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fractosc::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

bool is_bare_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

class LineError {
 public:
  LineError(std::string origin, int line) : origin_(std::move(origin)), line_(line) {}
  [[noreturn]] void fail(const std::string& msg) const {
    throw SpecError(origin_ + ":" + std::to_string(line_) + ": " + msg);
  }

 private:
  std::string origin_;
  int line_;
};

double parse_number(const std::string& tok, const LineError& err) {
  std::string t = tok;
  t.erase(std::remove(t.begin(), t.end(), '_'), t.end());
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end || t.empty()) err.fail("invalid number '" + tok + "'");
  return v;
}

std::string parse_string(const std::string& tok, const LineError& err) {
  if (tok.size() < 2 || tok.front() != '"' || tok.back() != '"') err.fail("invalid string " + tok);
  const std::string body = tok.substr(1, tok.size() - 2);
  if (body.find('"') != std::string::npos || body.find('\\') != std::string::npos) {
    err.fail("escapes are not supported in strings");
  }
  return body;
}

std::vector<std::string> split_items(const std::string& body, const LineError& err) {
  std::vector<std::string> items;
  std::string cur;
  bool in_str = false;
  for (char c : body) {
    if (c == '"') in_str = !in_str;
    if (c == ',' && !in_str) {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (in_str) err.fail("unterminated string in array");
  const std::string last = trim(cur);
  if (!last.empty()) items.push_back(last);
  for (const auto& it : items) {
    if (it.empty()) err.fail("empty array element");
  }
  return items;
}

Value parse_value(const std::string& raw, const LineError& err) {
  const std::string v = trim(raw);
  if (v.empty()) err.fail("missing value");
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '"') return parse_string(v, err);
  if (v.front() == '[') {
    if (v.back() != ']') err.fail("arrays must close on the same line");
    const auto items = split_items(v.substr(1, v.size() - 2), err);
    if (!items.empty() && items.front().front() == '"') {
      std::vector<std::string> out;
      for (const auto& it : items) out.push_back(parse_string(it, err));
      return out;
    }
    std::vector<double> out;
    for (const auto& it : items) {
      if (it.front() == '[') err.fail("nested arrays are not supported");
      out.push_back(parse_number(it, err));
    }
    return out;
  }
  return parse_number(v, err);
}

}  // namespace

Document parse_toml(const std::string& text, const std::string& origin) {
  Document doc;
  std::string current;
  doc.sections[current];
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const LineError err(origin, lineno);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') err.fail("malformed section header");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (!is_bare_key(name)) err.fail("invalid section name '" + name + "'");
      if (doc.section_lines.count(name)) err.fail("duplicate section [" + name + "]");
      doc.section_lines[name] = lineno;
      doc.sections[name];
      current = name;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) err.fail("expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (!is_bare_key(key)) err.fail("invalid key '" + key + "'");
    Section& sec = doc.sections[current];
    if (sec.count(key)) err.fail("duplicate key '" + key + "'");
    sec[key] = Entry{parse_value(s.substr(eq + 1), err), lineno};
  }
  return doc;
}

Document parse_toml_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot open spec file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_toml(ss.str(), path);
}

}  // namespace fractosc::cli
