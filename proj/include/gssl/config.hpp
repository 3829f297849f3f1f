#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gssl {

// Flat key-value configuration. File format: one `key = value` pair per line,
// `#` starts a comment, blank lines ignored. Keys keep insertion order so
// parse -> serialize -> parse is a fixed point.
class Config {
 public:
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");
  static Config parse_file(const std::string& path);

  std::string serialize() const;
  void save(const std::string& path) const;

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
  void set_num(const std::string& key, double value);
  void set_int(const std::string& key, int64_t value);

  // Throw ConfigError when the key is missing; the _or variants fall back.
  std::string get_str(const std::string& key) const;
  std::string get_str_or(const std::string& key, const std::string& fallback) const;
  double get_num(const std::string& key) const;
  double get_num_or(const std::string& key, double fallback) const;
  int64_t get_int(const std::string& key) const;
  int64_t get_int_or(const std::string& key, int64_t fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;       // comma separated
  std::vector<std::string> get_list_or(const std::string& key) const;    // empty if missing

  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

  // Rejects keys not matched by any pattern. A single `*` segment in a
  // pattern matches exactly one key segment (e.g. "domain.*.hue").
  void validate_keys(const std::vector<std::string>& patterns) const;

 private:
  const std::string* find(const std::string& key) const;
  std::vector<std::pair<std::string, std::string>> items_;
};

std::string format_double(double v);  // shortest round-trip decimal form

}  // namespace gssl
