#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "nfbt/benchmarks.hpp"
#include "nfbt/training.hpp"

namespace nfbt {

/// sum |est - truth|^2 / sum |truth|^2; throws std::domain_error when every truth is 0.
double nmse(std::span<const double> estimates, std::span<const double> truths);

/// Q~ P_t beta_m / (r_0^2 sigma^2) in dB, evaluated literally; only used as an axis label.
double reference_snr_db(const ValidatedConfig& cfg, double range, double freq);

/// (1/M) sum_m log2(1 + P_t |h_m^H w_m|^2 / sigma^2); responses are h_m^H w_m.
double achievable_rate(std::span<const cdouble> responses, double tx_power, double noise_power);

enum class SweepAxis { TransmitPower, UserRange };

std::string_view to_string(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view name);

struct UserDistribution {
  bool fixed = false;
  double angle = 0.0;  // fixed user
  double range = 30.0;
  double angle_lo = -0.5;  // uniform sector
  double angle_hi = 0.5;
  double range_lo = 0.0;  // <= 0: configured bounds
  double range_hi = 0.0;
};

struct ExperimentSpec {
  ValidatedConfig cfg;
  SweepAxis axis = SweepAxis::TransmitPower;
  std::vector<double> axis_values;  // watts or meters
  UserDistribution users;
  int trials = 200;
  std::uint64_t seed = 1;
  std::vector<Scheme> schemes;
  BenchmarkParams bench;
  PathModel array_model = PathModel::Exact;
  PathModel subarray_model = PathModel::Planar;
  bool common_random_numbers = true;
  int threads = 0;  // 0: OpenMP default
};

/// Throws std::invalid_argument describing the first problem found.
void validate_spec(const ExperimentSpec& spec);

struct MetricRow {
  Scheme scheme = Scheme::Proposed;
  double axis = 0.0;  // dBm for the power axis, meters for the range axis
  double snr_db = 0.0;
  double nmse_angle = 0.0;
  double nmse_range = 0.0;
  double rate = 0.0;
  int trials = 0;    // successful trials
  int failures = 0;  // trials excluded after a hard error
  int overhead = 0;
};

struct MetricTable {
  std::vector<MetricRow> rows;  // scheme-major, then axis order
};

/// Deterministic for a fixed spec: trials may run in any order, results merge by index.
MetricTable run_experiment(const ExperimentSpec& spec, Execution ex = Execution::Parallel);

void write_metric_csv(std::ostream& os, const MetricTable& table);

}  // namespace nfbt
