#include "gssl/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gssl/errors.hpp"

namespace gssl {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool pattern_matches(const std::string& pattern, const std::string& key) {
  const std::vector<std::string> ps = split(pattern, '.');
  const std::vector<std::string> ks = split(key, '.');
  if (ps.size() != ks.size()) return false;
  for (size_t i = 0; i < ps.size(); ++i)
    if (ps[i] != "*" && ps[i] != ks[i]) return false;
  return true;
}

}  // namespace

std::string format_double(double v) {
  // Shortest decimal form that round-trips to the same double.
  for (int prec = 1; prec <= 17; ++prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::stod(buf) == v) return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected `key = value`, got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.has(key)) throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key " + key);
    cfg.items_.emplace_back(key, value);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_string(ss.str(), path);
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [k, v] : items_) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

void Config::save(const std::string& path) const {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot write config file: " + path);
  f << serialize();
}

const std::string* Config::find(const std::string& key) const {
  for (const auto& [k, v] : items_)
    if (k == key) return &v;
  return nullptr;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

void Config::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : items_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  items_.emplace_back(key, value);
}

void Config::set_num(const std::string& key, double value) { set(key, format_double(value)); }
void Config::set_int(const std::string& key, int64_t value) { set(key, std::to_string(value)); }

std::string Config::get_str(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw ConfigError("missing config key: " + key);
  return *v;
}

std::string Config::get_str_or(const std::string& key, const std::string& fallback) const {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

double Config::get_num(const std::string& key) const {
  const std::string v = get_str(key);
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not a number: " + v);
  }
}

double Config::get_num_or(const std::string& key, double fallback) const {
  return has(key) ? get_num(key) : fallback;
}

int64_t Config::get_int(const std::string& key) const {
  const std::string v = get_str(key);
  try {
    size_t pos = 0;
    const int64_t i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not an integer: " + v);
  }
}

int64_t Config::get_int_or(const std::string& key, int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_str(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key " + key + ": not a boolean: " + v);
}

std::vector<std::string> Config::get_list(const std::string& key) const {
  std::vector<std::string> out;
  for (const std::string& part : split(get_str(key), ','))
    if (!trim(part).empty()) out.push_back(trim(part));
  return out;
}

std::vector<std::string> Config::get_list_or(const std::string& key) const {
  if (!has(key)) return {};
  return get_list(key);
}

void Config::validate_keys(const std::vector<std::string>& patterns) const {
  for (const auto& [k, v] : items_) {
    bool ok = false;
    for (const std::string& p : patterns) {
      if (pattern_matches(p, k)) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError("unknown config key: " + k);
  }
}

}  // namespace gssl
