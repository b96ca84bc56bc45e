#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nfbt/rainbow.hpp"
#include "nfbt/settings.hpp"
#include "nfbt/training.hpp"

namespace nfbt {

enum class PatternAxis { Angle, Range };

// Gain scan of a TD-PS beamformer: one table per TD angle, one curve per subcarrier.
struct PatternSpec {
  ArrayKind geometry = ArrayKind::SparseSubarray;
  std::vector<double> td_angles{0.0};
  double td_curvature = 0.0;
  double ps_angle = 0.0;
  double ps_curvature = 0.0;
  std::vector<int> subcarriers;
  PatternAxis axis = PatternAxis::Angle;
  double from = -1.0;
  double to = 1.0;
  int points = 2001;
  double fixed_range = 30.0;
  double fixed_angle = 0.0;
};

PatternSpec pattern_spec_from(const Settings& s);

struct PatternSample {
  int table = 0;
  int subcarrier = 0;
  double freq = 0.0;
  double x = 0.0;
  double gain = 0.0;
};

/// Subarrays use far-field steering (angle axis only); the full array uses exact near-field steering.
std::vector<PatternSample> compute_beam_pattern(const PatternSpec& spec, const ValidatedConfig& cfg,
                                                Execution ex = Execution::Serial);

void write_beam_pattern(std::ostream& os, const std::vector<PatternSample>& rows);
void write_rainbow_table(std::ostream& os, double td_angle, int interval, const FrequencyGrid& grid);
void write_training_trace(std::ostream& os, const TrainingOutcome& outcome, const PolarPoint& user);
void write_validation_report(std::ostream& os, const ValidatedConfig& cfg);

}  // namespace nfbt
