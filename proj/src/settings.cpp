#include "nfbt/settings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace nfbt {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct UnitEntry {
  std::string_view name;
  Unit family;
};

constexpr UnitEntry kUnits[] = {
    {"Hz", Unit::Frequency}, {"kHz", Unit::Frequency}, {"MHz", Unit::Frequency}, {"GHz", Unit::Frequency},
    {"W", Unit::Power},      {"mW", Unit::Power},      {"dBm", Unit::Power},     {"dBW", Unit::Power},
    {"m", Unit::Length},     {"cm", Unit::Length},     {"mm", Unit::Length},     {"km", Unit::Length},
};

double to_si(double v, std::string_view unit) {
  if (unit == "Hz" || unit == "W" || unit == "m") return v;
  if (unit == "kHz" || unit == "km") return v * 1e3;
  if (unit == "MHz") return v * 1e6;
  if (unit == "GHz") return v * 1e9;
  if (unit == "mW" || unit == "mm") return v * 1e-3;
  if (unit == "cm") return v * 1e-2;
  if (unit == "dBm") return dbm_to_watts(v);
  if (unit == "dBW") return std::pow(10.0, v / 10.0);
  return v;
}

void check_unit(std::string_view unit, Unit expected, std::string_view text) {
  if (unit.empty()) return;
  const auto it = std::find_if(std::begin(kUnits), std::end(kUnits), [&](const UnitEntry& u) { return u.name == unit; });
  if (it == std::end(kUnits)) throw std::invalid_argument(fmt::format("unknown unit '{}' in '{}'", unit, text));
  if (expected != Unit::Any && it->family != expected)
    throw std::invalid_argument(fmt::format("unit '{}' not allowed in '{}'", unit, text));
}

double parse_number(std::string_view text, std::string_view context) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument(fmt::format("not a number: '{}'", context));
  return v;
}

// Splits "12.5 GHz" into ("12.5", "GHz"); the unit is the trailing alphabetic token.
std::pair<std::string_view, std::string_view> split_unit(std::string_view text) {
  text = trim(text);
  std::size_t i = text.size();
  while (i > 0 && std::isalpha(static_cast<unsigned char>(text[i - 1]))) --i;
  // Exponent markers like "1e9" stay with the number.
  if (i < text.size() && i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
      (text.substr(i) == "e" || text.substr(i) == "E"))
    i = text.size();
  return {trim(text.substr(0, i)), trim(text.substr(i))};
}

std::string format_number(double v) { return fmt::format("{}", v); }

std::vector<SettingsKey> build_registry() {
  using K = ValueKind;
  return {
      {"num_antennas_total", "system", K::Integer, Unit::None, "513", "N, odd"},
      {"subarray_antennas", "system", K::Integer, Unit::None, "129", "Q, odd"},
      {"activation_interval", "system", K::Integer, Unit::None, "8", "U, divides Q-1"},
      {"carrier_freq", "system", K::Number, Unit::Frequency, "60 GHz", "f_c"},
      {"bandwidth", "system", K::Number, Unit::Frequency, "3 GHz", "B"},
      {"num_subcarriers", "system", K::Integer, Unit::None, "1024", "M"},
      {"transmit_power", "system", K::Number, Unit::Power, "30 dBm", "P_t"},
      {"noise_power", "system", K::Number, Unit::Power, "-80 dBm", "sigma^2"},
      {"range_bounds", "system", K::NumberList, Unit::Length, "10, 50 m", "r_min, r_max"},
      {"array_channel", "channel", K::Text, Unit::None, "exact", "full-array path model: exact|fresnel"},
      {"subarray_channel", "channel", K::Text, Unit::None, "planar", "subarray path model: planar|exact|fresnel"},
      {"seed", "run", K::Integer, Unit::None, "1", "master seed"},
      {"user_range", "run", K::Number, Unit::Length, "30 m", "user range r_0"},
      {"user_angle", "run", K::Number, Unit::None, "0.2", "user spatial angle theta_0"},
      {"polar_rings", "benchmarks", K::Integer, Unit::None, "6", "V"},
      {"polar_alpha", "benchmarks", K::Text, Unit::None, "auto", "alpha_Delta in m; auto = r_max"},
      {"two_phase_k", "benchmarks", K::Integer, Unit::None, "3", "K middle angles"},
      {"axis", "experiment", K::Text, Unit::None, "transmit_power", "transmit_power|user_range"},
      {"axis_values", "experiment", K::NumberList, Unit::Any, "0, 10, 20, 30 dBm", "sweep points"},
      {"schemes", "experiment", K::Text, Unit::None, "proposed, perfect-csi, exhaustive, nf-rainbow, two-phase",
       "schemes to run"},
      {"trials", "experiment", K::Integer, Unit::None, "200", "trials per axis point"},
      {"user_distribution", "experiment", K::Text, Unit::None, "uniform", "uniform|fixed"},
      {"user_angle_range", "experiment", K::NumberList, Unit::None, "-0.5, 0.5", "uniform angle sector"},
      {"common_random_numbers", "experiment", K::Bool, Unit::None, "true", "share draws across axis points"},
      {"threads", "experiment", K::Integer, Unit::None, "0", "OpenMP threads, 0 = default"},
      {"pattern_geometry", "pattern", K::Text, Unit::None, "sparse", "full|dense|sparse"},
      {"pattern_td_angle", "pattern", K::NumberList, Unit::None, "0", "TD angle, one table per value"},
      {"pattern_td_curvature", "pattern", K::Number, Unit::None, "0", "TD curvature (1/m)"},
      {"pattern_ps_angle", "pattern", K::Number, Unit::None, "0", "PS angle"},
      {"pattern_ps_curvature", "pattern", K::Number, Unit::None, "0", "PS curvature (1/m)"},
      {"pattern_subcarriers", "pattern", K::IndexList, Unit::None, "1024", "subcarrier indices, list or a:b:c"},
      {"pattern_axis", "pattern", K::Text, Unit::None, "angle", "angle|range"},
      {"pattern_from", "pattern", K::Number, Unit::None, "-1", "sweep start"},
      {"pattern_to", "pattern", K::Number, Unit::None, "1", "sweep end"},
      {"pattern_points", "pattern", K::Integer, Unit::None, "2001", "samples"},
      {"pattern_fixed_range", "pattern", K::Number, Unit::Length, "30 m", "range for angle sweeps (full array)"},
      {"pattern_fixed_angle", "pattern", K::Number, Unit::None, "0", "angle for range sweeps"},
      {"rainbow_td_angle", "rainbow", K::Text, Unit::None, "auto", "sparse TD angle; auto = coverage solver"},
  };
}

std::string canonical(const SettingsKey& key, std::string_view value) {
  switch (key.kind) {
    case ValueKind::Text: return std::string(trim(value));
    case ValueKind::Integer: {
      const auto t = trim(value);
      long long v = 0;
      const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
      if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
        throw std::invalid_argument(fmt::format("{}: expected an integer, got '{}'", key.name, t));
      return fmt::format("{}", v);
    }
    case ValueKind::Number: return format_number(parse_quantity(value, key.unit));
    case ValueKind::NumberList: {
      const auto v = parse_quantity_list(value, key.unit);
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
      return out;
    }
    case ValueKind::IndexList: {
      const auto v = parse_index_list(value);
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
      return out;
    }
    case ValueKind::Bool: return parse_bool(value) ? "true" : "false";
  }
  return std::string(value);
}

std::vector<std::string> split_names(std::string_view text) {
  std::vector<std::string> out;
  for (auto p : split(text, ','))
    if (!p.empty()) out.emplace_back(p);
  return out;
}

}  // namespace

double parse_quantity(std::string_view text, Unit unit) {
  const auto [num, suffix] = split_unit(text);
  check_unit(suffix, unit, text);
  return to_si(parse_number(num, text), suffix);
}

std::vector<double> parse_quantity_list(std::string_view text, Unit unit) {
  const auto [body, suffix] = split_unit(text);
  check_unit(suffix, unit, text);
  std::vector<double> out;
  for (auto part : split(body, ',')) {
    if (part.empty()) throw std::invalid_argument(fmt::format("empty list element in '{}'", text));
    out.push_back(to_si(parse_number(part, text), suffix));
  }
  return out;
}

std::vector<int> parse_index_list(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) {
    if (part.empty()) throw std::invalid_argument(fmt::format("empty list element in '{}'", text));
    const auto r = split(part, ':');
    auto as_int = [&](std::string_view t) {
      const double v = parse_number(t, text);
      if (v != std::floor(v)) throw std::invalid_argument(fmt::format("not an integer in '{}'", text));
      return static_cast<int>(v);
    };
    if (r.size() == 1) {
      out.push_back(as_int(r[0]));
    } else if (r.size() == 3) {
      const int a = as_int(r[0]), step = as_int(r[1]), b = as_int(r[2]);
      if (step <= 0) throw std::invalid_argument(fmt::format("range step must be positive in '{}'", text));
      for (int v = a; v <= b; v += step) out.push_back(v);
    } else {
      throw std::invalid_argument(fmt::format("expected a or a:step:b in '{}'", text));
    }
  }
  return out;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "yes" || text == "1" || text == "on") return true;
  if (text == "false" || text == "no" || text == "0" || text == "off") return false;
  throw std::invalid_argument(fmt::format("not a boolean: '{}'", text));
}

const std::vector<SettingsKey>& settings_registry() {
  static const std::vector<SettingsKey> reg = build_registry();
  return reg;
}

const SettingsKey& settings_key(std::string_view name) {
  for (const auto& k : settings_registry())
    if (k.name == name) return k;
  throw std::invalid_argument(fmt::format("unknown key '{}'", name));
}

Settings Settings::parse(std::istream& in, std::string_view source) {
  std::vector<std::pair<int, std::string>> plain, header;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("# @", 0) == 0) header.emplace_back(lineno, std::string(t.substr(3)));
    else if (t.front() != '#') plain.emplace_back(lineno, std::string(t));
  }
  Settings s;
  for (const auto& [n, text] : header.empty() ? plain : header) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(fmt::format("{}:{}: expected key = value", source, n));
    // Trailing comments on value lines.
    auto value = std::string_view(text).substr(eq + 1);
    if (const auto hash = value.find('#'); hash != std::string_view::npos) value = value.substr(0, hash);
    try {
      s.set(trim(std::string_view(text).substr(0, eq)), value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(fmt::format("{}:{}: {}", source, n, e.what()));
    }
  }
  return s;
}

Settings Settings::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(fmt::format("cannot open config '{}'", path.string()));
  return parse(in, path.string());
}

void Settings::set(std::string_view key, std::string_view value) {
  const auto& k = settings_key(trim(key));
  // Validate eagerly so errors point at the offending line.
  canonical(k, value);
  values_[k.name] = std::string(trim(value));
}

void Settings::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw std::invalid_argument(fmt::format("expected key=value, got '{}'", assignment));
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

bool Settings::has(std::string_view key) const { return values_.find(key) != values_.end(); }

std::string Settings::get(std::string_view key) const {
  const auto it = values_.find(key);
  return it != values_.end() ? it->second : settings_key(key).default_value;
}

double Settings::number(std::string_view key, Unit unit) const {
  const auto& k = settings_key(key);
  return parse_quantity(get(key), unit == Unit::None ? k.unit : unit);
}

int Settings::integer(std::string_view key) const {
  const long long v = std::stoll(canonical(settings_key(key), get(key)));
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw std::invalid_argument(fmt::format("{}: value out of range", key));
  return static_cast<int>(v);
}

std::vector<double> Settings::numbers(std::string_view key, Unit unit) const {
  const auto& k = settings_key(key);
  return parse_quantity_list(get(key), unit == Unit::None ? k.unit : unit);
}

bool Settings::boolean(std::string_view key) const { return parse_bool(get(key)); }

SystemConfig system_config_from(const Settings& s) {
  SystemConfig c;
  c.num_antennas_total = s.integer("num_antennas_total");
  c.subarray_antennas = s.integer("subarray_antennas");
  c.activation_interval = s.integer("activation_interval");
  c.carrier_freq = s.number("carrier_freq");
  c.bandwidth = s.number("bandwidth");
  c.num_subcarriers = s.integer("num_subcarriers");
  c.transmit_power = s.number("transmit_power");
  c.noise_power = s.number("noise_power");
  const auto rb = s.numbers("range_bounds");
  if (rb.size() != 2) throw std::invalid_argument("range_bounds: expected two values 'r_min, r_max'");
  c.range_min = rb[0];
  c.range_max = rb[1];
  return c;
}

BenchmarkParams benchmark_params_from(const Settings& s) {
  BenchmarkParams p;
  p.rings = s.integer("polar_rings");
  const auto alpha = s.get("polar_alpha");
  p.alpha = alpha == "auto" ? 0.0 : parse_quantity(alpha, Unit::Length);
  if (alpha != "auto" && !(p.alpha > 0.0)) throw std::invalid_argument("polar_alpha must be positive or auto");
  p.two_phase_k = s.integer("two_phase_k");
  return p;
}

ExperimentSpec experiment_spec_from(const Settings& s, const ValidatedConfig& cfg) {
  ExperimentSpec e;
  e.cfg = cfg;
  e.axis = parse_sweep_axis(s.get("axis"));
  e.axis_values =
      s.numbers("axis_values", e.axis == SweepAxis::TransmitPower ? Unit::Power : Unit::Length);
  for (const auto& name : split_names(s.get("schemes"))) e.schemes.push_back(parse_scheme(name));
  e.trials = s.integer("trials");
  e.seed = static_cast<std::uint64_t>(std::stoll(canonical(settings_key("seed"), s.get("seed"))));
  const auto dist = s.get("user_distribution");
  if (dist != "uniform" && dist != "fixed")
    throw std::invalid_argument("user_distribution must be uniform or fixed");
  e.users.fixed = dist == "fixed";
  e.users.angle = s.number("user_angle");
  e.users.range = s.number("user_range");
  const auto ar = s.numbers("user_angle_range");
  if (ar.size() != 2) throw std::invalid_argument("user_angle_range: expected two values 'lo, hi'");
  e.users.angle_lo = ar[0];
  e.users.angle_hi = ar[1];
  e.bench = benchmark_params_from(s);
  e.array_model = parse_path_model(s.get("array_channel"));
  e.subarray_model = parse_path_model(s.get("subarray_channel"));
  e.common_random_numbers = s.boolean("common_random_numbers");
  e.threads = s.integer("threads");
  validate_spec(e);
  return e;
}

void write_settings_header(std::ostream& os, const Settings& s, const std::vector<std::string>& groups) {
  for (const auto& k : settings_registry()) {
    if (std::find(groups.begin(), groups.end(), k.group) == groups.end()) continue;
    os << "# @" << k.name << " = " << canonical(k, s.get(k.name)) << '\n';
  }
}

}  // namespace nfbt
