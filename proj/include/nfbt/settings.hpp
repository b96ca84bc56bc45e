#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nfbt/config.hpp"
#include "nfbt/experiment.hpp"

namespace nfbt {

// Flat `key = value [unit]` settings. Lines starting with `#` are comments, except
// `# @key = value` header lines written by the CLI: when a file contains any of those,
// only they are read, so an output file can be fed back as its own config.

enum class Unit { None, Frequency, Power, Length, Any };

/// Number with an optional unit suffix converted to SI (Hz, W, m). Throws std::invalid_argument.
double parse_quantity(std::string_view text, Unit unit);
/// Comma-separated numbers sharing one optional trailing unit.
std::vector<double> parse_quantity_list(std::string_view text, Unit unit);
/// Comma-separated integers; `a:b:c` expands to a, a+b, ... <= c.
std::vector<int> parse_index_list(std::string_view text);
bool parse_bool(std::string_view text);

enum class ValueKind { Text, Integer, Number, NumberList, IndexList, Bool };

struct SettingsKey {
  std::string name;
  std::string group;  // system, channel, run, benchmarks, experiment, pattern, rainbow
  ValueKind kind = ValueKind::Text;
  Unit unit = Unit::None;
  std::string default_value;
  std::string help;
};

const std::vector<SettingsKey>& settings_registry();
const SettingsKey& settings_key(std::string_view name);  // throws for unknown keys

class Settings {
 public:
  /// Throws std::invalid_argument on malformed lines or unknown keys.
  static Settings parse(std::istream& in, std::string_view source = "<input>");
  static Settings parse_file(const std::filesystem::path& path);

  void set(std::string_view key, std::string_view value);
  /// `key=value` command-line override.
  void set_assignment(std::string_view assignment);

  bool has(std::string_view key) const;
  /// Explicit value or the registry default.
  std::string get(std::string_view key) const;

  double number(std::string_view key, Unit unit = Unit::None) const;
  int integer(std::string_view key) const;
  std::vector<double> numbers(std::string_view key, Unit unit = Unit::None) const;
  bool boolean(std::string_view key) const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

// Builders from settings. Each throws std::invalid_argument (or ConfigError) on bad input.
SystemConfig system_config_from(const Settings& s);
ExperimentSpec experiment_spec_from(const Settings& s, const ValidatedConfig& cfg);
BenchmarkParams benchmark_params_from(const Settings& s);

/// Canonical `# @key = value` lines for every key of the given groups (registry order).
/// Numbers are written in SI base units with round-trip precision.
void write_settings_header(std::ostream& os, const Settings& s, const std::vector<std::string>& groups);

}  // namespace nfbt
