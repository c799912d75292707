#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "polybarrier/error.hpp"
#include "polybarrier/format.hpp"

namespace polybarrier::cli {

namespace {

std::string where(int line, int column) {
  if (line <= 0) return "";
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": ";
  return os.str();
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::size_t skip_ws(const std::string& s, std::size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

std::string rtrim(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  return s;
}

}  // namespace

ConfigError::ConfigError(const std::string& msg, int line, int column)
    : std::runtime_error(where(line, column) + msg), line_(line), column_(column) {}

Config::Section& Config::section(const std::string& name, int line) {
  for (auto& s : sections_)
    if (s.name == name) return s;
  sections_.push_back({name, line, {}});
  return sections_.back();
}

Config Config::parse(const std::string& text, const std::vector<std::string>& repeatable) {
  Config cfg;
  std::string current;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = rtrim(raw);
    std::size_t i = skip_ws(line, 0);
    if (i == line.size() || line[i] == '#' || line[i] == ';') continue;
    const int col = static_cast<int>(i) + 1;
    if (line[i] == '[') {
      std::size_t j = skip_ws(line, i + 1);
      if (j >= line.size() || !ident_start(line[j]))
        throw ConfigError("expected section name after '['", lineno, static_cast<int>(j) + 1);
      std::size_t k = j;
      while (k < line.size() && ident_char(line[k])) ++k;
      const std::string name = line.substr(j, k - j);
      k = skip_ws(line, k);
      if (k >= line.size() || line[k] != ']')
        throw ConfigError("expected ']' to close section header", lineno, static_cast<int>(k) + 1);
      k = skip_ws(line, k + 1);
      if (k != line.size() && line[k] != '#' && line[k] != ';')
        throw ConfigError("unexpected text after section header", lineno, static_cast<int>(k) + 1);
      for (const auto& s : cfg.sections_)
        if (s.name == name)
          throw ConfigError("duplicate section [" + name + "] (first at line " +
                                std::to_string(s.line) + ")",
                            lineno, col);
      cfg.section(name, lineno);
      current = name;
      continue;
    }
    if (!ident_start(line[i])) throw ConfigError("expected a key or a [section] header", lineno, col);
    std::size_t k = i;
    while (k < line.size() && ident_char(line[k])) ++k;
    const std::string key = line.substr(i, k - i);
    k = skip_ws(line, k);
    if (k >= line.size() || line[k] != '=')
      throw ConfigError("expected '=' after key '" + key + "'", lineno, static_cast<int>(k) + 1);
    if (current.empty()) throw ConfigError("key '" + key + "' appears before any [section]", lineno, col);
    std::size_t v = skip_ws(line, k + 1);
    std::string value = line.substr(v);
    // Trailing comments start at a '#' preceded by whitespace.
    for (std::size_t p = 0; p < value.size(); ++p) {
      if (value[p] == '#' && (p == 0 || value[p - 1] == ' ' || value[p - 1] == '\t')) {
        value = rtrim(value.substr(0, p));
        break;
      }
    }
    if (value.empty()) throw ConfigError("empty value for key '" + key + "'", lineno, static_cast<int>(v) + 1);
    Section& sec = cfg.section(current, lineno);
    const bool rep = std::find(repeatable.begin(), repeatable.end(), key) != repeatable.end();
    if (!rep) {
      for (const auto& e : sec.entries)
        if (e.key == key)
          throw ConfigError("duplicate key '" + key + "' in [" + current + "] (first at line " +
                                std::to_string(e.value.line) + ")",
                            lineno, col);
    }
    sec.entries.push_back({key, {value, lineno, static_cast<int>(v) + 1}});
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void Config::set(const std::string& assignment) {
  const auto dot = assignment.find('.');
  const auto eq = assignment.find('=');
  if (dot == std::string::npos || eq == std::string::npos || dot > eq)
    throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  const std::string sec = assignment.substr(0, dot);
  const std::string key = assignment.substr(dot + 1, eq - dot - 1);
  const std::string value = assignment.substr(eq + 1);
  if (sec.empty() || key.empty() || value.empty())
    throw ConfigError("override '" + assignment + "' has an empty section, key or value");
  Section& s = section(sec, 0);
  std::erase_if(s.entries, [&](const Entry& e) { return e.key == key; });
  s.entries.push_back({key, {value, 0, 0}});
}

const ConfigValue* Config::find(const std::string& section, const std::string& key) const {
  for (const auto& s : sections_) {
    if (s.name != section) continue;
    for (const auto& e : s.entries)
      if (e.key == key) return &e.value;
  }
  return nullptr;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::vector<ConfigValue> Config::all(const std::string& section, const std::string& key) const {
  std::vector<ConfigValue> out;
  for (const auto& s : sections_) {
    if (s.name != section) continue;
    for (const auto& e : s.entries)
      if (e.key == key) out.push_back(e.value);
  }
  return out;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               std::optional<std::string> fallback) const {
  if (const auto* v = find(section, key)) return v->text;
  if (fallback) return *fallback;
  throw ConfigError("missing required key '" + key + "' in [" + section + "]");
}

double Config::get_double(const std::string& section, const std::string& key,
                          std::optional<double> fallback) const {
  if (const auto* v = find(section, key)) return parse_number(*v);
  if (fallback) return *fallback;
  throw ConfigError("missing required key '" + key + "' in [" + section + "]");
}

long long Config::get_int(const std::string& section, const std::string& key,
                          std::optional<long long> fallback) const {
  if (const auto* v = find(section, key)) {
    const double d = parse_number(*v);
    if (d != std::floor(d) || std::abs(d) > 9.0e15)
      throw ConfigError("expected an integer for '" + key + "'", v->line, v->column);
    return static_cast<long long>(d);
  }
  if (fallback) return *fallback;
  throw ConfigError("missing required key '" + key + "' in [" + section + "]");
}

std::vector<double> Config::get_doubles(const std::string& section, const std::string& key) const {
  const auto* v = find(section, key);
  if (!v) throw ConfigError("missing required key '" + key + "' in [" + section + "]");
  return parse_numbers(*v);
}

void Config::check_known(const std::map<std::string, std::vector<std::string>>& allowed) const {
  for (const auto& s : sections_) {
    const auto it = allowed.find(s.name);
    if (it == allowed.end()) throw ConfigError("unknown section [" + s.name + "]", s.line, 1);
    for (const auto& e : s.entries)
      if (std::find(it->second.begin(), it->second.end(), e.key) == it->second.end())
        throw ConfigError("unknown key '" + e.key + "' in [" + s.name + "]", e.value.line,
                          e.value.column > 0 ? 1 : 0);
  }
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::vector<double> parse_numbers(const ConfigValue& v) {
  std::vector<double> out;
  std::size_t i = 0;
  const std::string& s = v.text;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    if (i == s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    try {
      out.push_back(parse_double(std::string_view(s).substr(i, j - i)));
    } catch (const DomainError&) {
      throw ConfigError("'" + s.substr(i, j - i) + "' is not a number", v.line,
                        v.column > 0 ? v.column + static_cast<int>(i) : 0);
    }
    i = j;
  }
  if (out.empty()) throw ConfigError("expected a number", v.line, v.column);
  return out;
}

double parse_number(const ConfigValue& v) {
  const auto xs = parse_numbers(v);
  if (xs.size() != 1) throw ConfigError("expected a single number, got '" + v.text + "'", v.line, v.column);
  return xs.front();
}

}  // namespace polybarrier::cli
