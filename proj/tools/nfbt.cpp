// nfbt: command-line driver for the wideband near-field beam training simulator.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nfbt/experiment.hpp"
#include "nfbt/report.hpp"
#include "nfbt/settings.hpp"
#include "nfbt/training.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationError = 1;
constexpr int kRuntimeError = 2;

struct CommonArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string output = "-";
  long long seed = 0;
  bool seed_given = false;
};

nfbt::Settings load_settings(const CommonArgs& args) {
  nfbt::Settings s;
  std::string path = args.config;
  if (path.empty())
    if (const char* env = std::getenv("NFBT_CONFIG")) path = env;
  if (!path.empty()) s = nfbt::Settings::parse_file(path);
  for (const auto& o : args.overrides) s.set_assignment(o);
  if (args.seed_given) s.set("seed", std::to_string(args.seed));
  return s;
}

void emit(const CommonArgs& args, const std::string& text) {
  if (args.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(args.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + args.output + "'");
  out << text;
}

void header(std::ostream& os, const std::string& command, const nfbt::Settings& s,
            const std::vector<std::string>& groups) {
  os << "# nfbt " << command << '\n';
  nfbt::write_settings_header(os, s, groups);
}

nfbt::ValidatedConfig config_of(const nfbt::Settings& s) { return nfbt::validate_config(nfbt::system_config_from(s)); }

int cmd_validate(const CommonArgs& a) {
  const auto s = load_settings(a);
  const auto cfg = config_of(s);
  std::ostringstream os;
  header(os, "validate", s, {"system"});
  nfbt::write_validation_report(os, cfg);
  emit(a, os.str());
  return kOk;
}

int cmd_beam_pattern(const CommonArgs& a) {
  const auto s = load_settings(a);
  const auto cfg = config_of(s);
  const auto spec = nfbt::pattern_spec_from(s);
  std::ostringstream os;
  header(os, "beam-pattern", s, {"system", "pattern"});
  nfbt::write_beam_pattern(os, nfbt::compute_beam_pattern(spec, cfg, nfbt::Execution::Parallel));
  emit(a, os.str());
  return kOk;
}

int cmd_rainbow(const CommonArgs& a) {
  const auto s = load_settings(a);
  const auto cfg = config_of(s);
  const auto grid = nfbt::make_frequency_grid(cfg);
  const auto td_text = s.get("rainbow_td_angle");
  const double td = td_text == "auto" ? nfbt::solve_sweep_td_parameter(cfg.U(), grid)
                                      : nfbt::parse_quantity(td_text, nfbt::Unit::None);
  std::ostringstream os;
  header(os, "rainbow", s, {"system", "rainbow"});
  nfbt::write_rainbow_table(os, td, cfg.U(), grid);
  emit(a, os.str());
  return kOk;
}

int cmd_train(const CommonArgs& a) {
  const auto s = load_settings(a);
  const auto cfg = config_of(s);
  const auto setup = nfbt::make_training_setup(cfg, nfbt::parse_path_model(s.get("array_channel")),
                                               nfbt::parse_path_model(s.get("subarray_channel")),
                                               nfbt::Execution::Parallel);
  const auto user = nfbt::PolarPoint::from_range_angle(s.number("user_range"), s.number("user_angle"));
  const auto channels = nfbt::make_training_channels(setup, user);
  const auto seed = static_cast<std::uint64_t>(std::stoll(s.get("seed")));
  const auto outcome = nfbt::run_full_training(setup, channels, seed);
  std::ostringstream os;
  header(os, "train", s, {"system", "channel", "run"});
  nfbt::write_training_trace(os, outcome, user);
  emit(a, os.str());
  return kOk;
}

int cmd_experiment(const CommonArgs& a, bool serial) {
  const auto s = load_settings(a);
  const auto cfg = config_of(s);
  const auto spec = nfbt::experiment_spec_from(s, cfg);
  const auto table = nfbt::run_experiment(spec, serial ? nfbt::Execution::Serial : nfbt::Execution::Parallel);
  std::ostringstream os;
  header(os, "experiment", s, {"system", "channel", "run", "benchmarks", "experiment"});
  nfbt::write_metric_csv(os, table);
  emit(a, os.str());
  return kOk;
}

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("-c,--config", args.config, "settings file (default: $NFBT_CONFIG)");
  sub->add_option("-s,--set", args.overrides, "override, key=value (repeatable)");
  sub->add_option("-o,--output", args.output, "output file, - for stdout");
  sub->add_option_function<long long>(
      "--seed",
      [&args](const long long& v) {
        args.seed = v;
        args.seed_given = true;
      },
      "master seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wideband near-field beam training simulator"};
  app.require_subcommand(1);
  CommonArgs args;
  bool serial = false;

  auto* validate = app.add_subcommand("validate", "check a configuration and print derived quantities");
  auto* pattern = app.add_subcommand("beam-pattern", "gain-versus-angle or -range tables");
  auto* rainbow = app.add_subcommand("rainbow", "rainbow-block beam table of the sparse subarray");
  auto* train = app.add_subcommand("train", "run the three-stage training for one user");
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo NMSE and rate sweep");
  for (auto* sub : {validate, pattern, rainbow, train, experiment}) add_common(sub, args);
  experiment->add_flag("--serial", serial, "run trials on one thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (*validate) return cmd_validate(args);
    if (*pattern) return cmd_beam_pattern(args);
    if (*rainbow) return cmd_rainbow(args);
    if (*train) return cmd_train(args);
    if (*experiment) return cmd_experiment(args, serial);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}
