#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polybarrier::cli {

/// Configuration problem located at (line, column); both are 1-based, 0 when
/// the problem has no source position (e.g. a missing key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ConfigValue {
  std::string text;
  int line = 0;
  int column = 0;  // column of the first value character
};

/// Flat `key = value` pairs grouped under `[section]` headers. Keys listed in
/// `repeatable` may appear more than once per section.
class Config {
 public:
  static Config parse(const std::string& text, const std::vector<std::string>& repeatable = {"row"});
  static Config load(const std::string& path);

  /// Applies `section.key=value`; replaces existing values.
  void set(const std::string& assignment);

  bool has(const std::string& section, const std::string& key) const;
  const ConfigValue* find(const std::string& section, const std::string& key) const;
  std::vector<ConfigValue> all(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key,
                         std::optional<std::string> fallback = std::nullopt) const;
  double get_double(const std::string& section, const std::string& key,
                    std::optional<double> fallback = std::nullopt) const;
  long long get_int(const std::string& section, const std::string& key,
                    std::optional<long long> fallback = std::nullopt) const;
  std::vector<double> get_doubles(const std::string& section, const std::string& key) const;

  /// Throws ConfigError at the first section or key not in `allowed`
  /// (map from section name to its key names).
  void check_known(const std::map<std::string, std::vector<std::string>>& allowed) const;

 private:
  struct Entry {
    std::string key;
    ConfigValue value;
  };
  struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
  };
  std::vector<Section> sections_;
  Section& section(const std::string& name, int line);
};

/// Whitespace-separated numbers; throws ConfigError pointing into `v`.
std::vector<double> parse_numbers(const ConfigValue& v);
double parse_number(const ConfigValue& v);
std::vector<std::string> split_words(const std::string& s);

}  // namespace polybarrier::cli
