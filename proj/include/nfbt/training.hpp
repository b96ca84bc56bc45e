#pragma once

#include <cstdint>
#include <vector>

#include "nfbt/beamforming.hpp"
#include "nfbt/channel.hpp"
#include "nfbt/config.hpp"
#include "nfbt/frequency_grid.hpp"
#include "nfbt/geometry.hpp"
#include "nfbt/rainbow.hpp"

namespace nfbt {

// Everything the three stages share for one configuration.
struct TrainingSetup {
  ValidatedConfig cfg;
  FrequencyGrid grid;
  AntennaIndexSet full;
  AntennaIndexSet dense;
  AntennaIndexSet sparse;
  PathModel array_model = PathModel::Exact;
  PathModel subarray_model = PathModel::Planar;
  double sweep_td_angle = 0.0;  // stage-1 TD angle from the coverage solver
  Execution ex = Execution::Serial;

  double tx_power() const { return cfg.params.transmit_power; }
  double noise_power() const { return cfg.params.noise_power; }
};

TrainingSetup make_training_setup(const ValidatedConfig& cfg, PathModel array_model = PathModel::Exact,
                                  PathModel subarray_model = PathModel::Planar,
                                  Execution ex = Execution::Serial);

// Channels seen by the three array configurations for one user.
struct TrainingChannels {
  LosChannel sparse;
  LosChannel dense;
  LosChannel full;
};

TrainingChannels make_training_channels(const TrainingSetup& setup, const PolarPoint& user);

/// y_m = sqrt(P_t) h_m^H w_m + n_m with n_m ~ CN(0, sigma^2); pilot symbol 1.
CVector simulate_pilot(const LosChannel& ch, const ComplexMatrix& beams, double tx_power, double noise_power,
                       std::uint64_t noise_seed, Execution ex = Execution::Serial);

/// |f_m y_m|^2
std::vector<double> calibrated_powers(std::span<const double> freqs, std::span<const cdouble> y);
/// First index of the maximum (ties resolve to the lower index).
std::size_t argmax_first(std::span<const double> v);

struct StageOneReport {
  double td_angle = 0.0;
  std::vector<double> calibrated_powers;
  int best_subcarrier = 0;  // 1-based
  double best_freq = 0.0;
  std::vector<BeamAngle> candidates;
  int k_first = 0;
};

/// Candidate list for a given winning subcarrier (no measurement).
StageOneReport stage1_report_for_subcarrier(double td_angle, int interval, const FrequencyGrid& grid,
                                            int subcarrier);
StageOneReport stage1_angle_sweep(const TrainingSetup& setup, const LosChannel& sparse_channel,
                                  std::uint64_t seed);
StageOneReport stage1_angle_sweep(const TrainingSetup& setup, const PolarPoint& user, std::uint64_t seed);

struct StageTwoParameter {
  double td_angle = 0.0;  // theta'_CS
  int p = 0;
};

StageTwoParameter stage2_td_parameter(double first_candidate, double best_freq, const FrequencyGrid& grid);

struct SelectedSubcarrier {
  int candidate = 0;         // 1-based position in the stage-1 list
  double candidate_angle = 0.0;
  int seed_subcarrier = 0;   // uniform-spacing initial guess
  int subcarrier = 0;        // calibrated choice, 1-based
  double freq = 0.0;
  double steered_angle = 0.0;
  double alignment_error = 0.0;
  bool flagged = false;      // error above half the dense-subarray beamwidth
};

std::vector<SelectedSubcarrier> stage2_select_subcarriers(const StageOneReport& report,
                                                          const StageTwoParameter& param,
                                                          const FrequencyGrid& grid, int subarray_size);

struct StageTwoReport {
  StageTwoParameter param;
  std::vector<SelectedSubcarrier> selected;
  std::vector<double> calibrated_powers;  // one per selected subcarrier
  int winner = 0;                         // 1-based index into `selected`
  double steered_angle = 0.0;             // theta'_CS + 2p f_c / f^(k)
  double estimated_angle = 0.0;
};

StageTwoReport stage2_disambiguate(const TrainingSetup& setup, const LosChannel& dense_channel,
                                   const StageOneReport& report1, std::uint64_t seed);
StageTwoReport stage2_disambiguate(const TrainingSetup& setup, const PolarPoint& user,
                                   const StageOneReport& report1, std::uint64_t seed);

struct StageThreeParameters {
  TdPsParams params;
  double mu_min = 0.0;
  double mu_max = 0.0;
  double mu_bar = 0.0;
  double mu_th = 0.0;
  bool degenerate = false;  // r_min == r_max
};

StageThreeParameters stage3_td_ps_parameters(double angle, const ValidatedConfig& cfg, const FrequencyGrid& grid);
/// mu' + mu'_p f_c / f_m, grid order
std::vector<double> stage3_focus_list(const StageThreeParameters& p, const FrequencyGrid& grid);

struct StageThreeReport {
  StageThreeParameters setup;
  std::vector<double> focus;
  std::vector<double> calibrated_powers;
  int best_subcarrier = 0;
  double estimated_curvature = 0.0;
  double estimated_range = 0.0;
};

/// Throws std::runtime_error if the winning focus curvature is not positive.
StageThreeReport stage3_range_sweep(const TrainingSetup& setup, const LosChannel& full_channel, double angle,
                                    std::uint64_t seed);
StageThreeReport stage3_range_sweep(const TrainingSetup& setup, const PolarPoint& user, double angle,
                                    std::uint64_t seed);

struct TrainingOutcome {
  double angle = 0.0;
  double range = 0.0;
  int pilot_count = 0;
  StageOneReport stage1;
  StageTwoReport stage2;
  StageThreeReport stage3;
  TdPsParams data_params;  // TD-only focus on (theta*, mu*)
};

TrainingOutcome run_full_training(const TrainingSetup& setup, const TrainingChannels& channels, std::uint64_t seed);
TrainingOutcome run_full_training(const TrainingSetup& setup, const PolarPoint& user, std::uint64_t seed);

/// Per-subcarrier full-array beamformers for data transmission.
ComplexMatrix data_beamformers(const TrainingSetup& setup, const TrainingOutcome& outcome);

}  // namespace nfbt
