#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fractosc::cli {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Values supported by the spec format: numbers, strings, booleans and flat
/// arrays of numbers or strings.
using Value = std::variant<double, std::string, bool, std::vector<double>, std::vector<std::string>>;

struct Entry {
  Value value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

/// Section name -> keys. Keys before any header go to the "" section.
struct Document {
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
};

/// Parses the line-oriented subset: [section] headers, key = value pairs,
/// '#' comments, single-line arrays. Duplicate keys and sections are errors.
Document parse_toml(const std::string& text, const std::string& origin = "<spec>");

Document parse_toml_file(const std::string& path);

}  // namespace fractosc::cli
