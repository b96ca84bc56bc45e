#include "nfbt/training.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nfbt/random.hpp"

namespace nfbt {

TrainingSetup make_training_setup(const ValidatedConfig& cfg, PathModel array_model, PathModel subarray_model,
                                  Execution ex) {
  auto grid = make_frequency_grid(cfg);
  const double td = solve_sweep_td_parameter(cfg.U(), grid);
  return TrainingSetup{cfg,           std::move(grid),      full_array(cfg), dense_subarray(cfg),
                       sparse_subarray(cfg), array_model, subarray_model,  td,
                       ex};
}

TrainingChannels make_training_channels(const TrainingSetup& s, const PolarPoint& user) {
  const auto f = s.grid.freqs();
  return {los_channel(s.cfg, user, s.sparse, f, s.subarray_model, s.ex),
          los_channel(s.cfg, user, s.dense, f, s.subarray_model, s.ex),
          los_channel(s.cfg, user, s.full, f, s.array_model, s.ex)};
}

CVector simulate_pilot(const LosChannel& ch, const ComplexMatrix& beams, double tx_power, double noise_power,
                       std::uint64_t noise_seed, Execution ex) {
  if (beams.cols() != ch.antennas() || beams.rows() != ch.size())
    throw std::invalid_argument("simulate_pilot: beamformer/channel geometry mismatch");
  auto y = channel_responses(ch, beams, ex);
  const double amp = std::sqrt(tx_power);
  for (auto& v : y) v *= amp;
  if (noise_power > 0.0) {
    std::mt19937_64 rng(noise_seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(noise_power / 2.0));
    for (auto& v : y) {
      const double re = normal(rng);
      const double im = normal(rng);
      v += cdouble(re, im);
    }
  }
  return y;
}

std::vector<double> calibrated_powers(std::span<const double> freqs, std::span<const cdouble> y) {
  if (freqs.size() != y.size()) throw std::invalid_argument("calibrated_powers: size mismatch");
  std::vector<double> p(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) p[i] = std::norm(freqs[i] * y[i]);
  return p;
}

std::size_t argmax_first(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("argmax_first: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

// ---- stage 1 -------------------------------------------------------------

StageOneReport stage1_report_for_subcarrier(double td_angle, int interval, const FrequencyGrid& grid,
                                            int subcarrier) {
  StageOneReport r;
  r.td_angle = td_angle;
  r.best_subcarrier = subcarrier;
  r.best_freq = grid.freq(subcarrier);
  r.candidates = multi_beam_angles(td_angle, interval, r.best_freq, grid.carrier());
  if (r.candidates.empty()) throw std::runtime_error("stage 1: no physical beam at the selected subcarrier");
  r.k_first = r.candidates.front().k;
  return r;
}

StageOneReport stage1_angle_sweep(const TrainingSetup& s, const LosChannel& sparse_channel, std::uint64_t seed) {
  TdPsParams td;
  td.td_angle = s.sweep_td_angle;
  const auto beams = combined_beamformer_matrix(td, s.sparse, s.grid.freqs(), s.grid.carrier(), s.ex);
  const auto y = simulate_pilot(sparse_channel, beams, s.tx_power(), s.noise_power(), seed, s.ex);
  auto powers = calibrated_powers(s.grid.freqs(), y);
  const int best = static_cast<int>(argmax_first(powers)) + 1;
  auto r = stage1_report_for_subcarrier(s.sweep_td_angle, s.cfg.U(), s.grid, best);
  r.calibrated_powers = std::move(powers);
  return r;
}

StageOneReport stage1_angle_sweep(const TrainingSetup& s, const PolarPoint& user, std::uint64_t seed) {
  const auto ch = los_channel(s.cfg, user, s.sparse, s.grid.freqs(), s.subarray_model, s.ex);
  return stage1_angle_sweep(s, ch, seed);
}

// ---- stage 2 -------------------------------------------------------------

StageTwoParameter stage2_td_parameter(double first_candidate, double best_freq, const FrequencyGrid& grid) {
  const double fc = grid.carrier();
  StageTwoParameter out;
  out.p = static_cast<int>(std::floor(2.0 * fc * fc / (grid.bandwidth() * best_freq) + 0.5));
  out.td_angle = first_candidate - 2.0 * out.p;
  return out;
}

std::vector<SelectedSubcarrier> stage2_select_subcarriers(const StageOneReport& report,
                                                          const StageTwoParameter& param,
                                                          const FrequencyGrid& grid, int subarray_size) {
  const double fc = grid.carrier();
  const auto count = static_cast<int>(report.candidates.size());
  const int eta = (grid.size() - 1) / (2 * count);
  int last_low = 0;  // highest subcarrier index with f <= f_c
  for (int m = 1; m <= grid.size() && grid.freq(m) <= fc; ++m) last_low = m;
  if (last_low == 0) throw std::runtime_error("stage 2: no subcarrier at or below the carrier");

  auto steered = [&](double f) { return param.td_angle + 2.0 * param.p * fc / f; };

  std::vector<SelectedSubcarrier> out;
  for (int k = 1; k <= count; ++k) {
    SelectedSubcarrier sel;
    sel.candidate = k;
    sel.candidate_angle = report.candidates[static_cast<std::size_t>(k - 1)].angle;
    const double guess = fc - (k - 1) * eta * grid.spacing();
    sel.seed_subcarrier = std::min(grid.nearest_index(guess), last_low);

    int best = 1;
    double best_err = std::abs(sel.candidate_angle - steered(grid.freq(1)));
    for (int m = 2; m <= last_low; ++m) {
      const double err = std::abs(sel.candidate_angle - steered(grid.freq(m)));
      if (err < best_err) {
        best_err = err;
        best = m;
      }
    }
    sel.subcarrier = best;
    sel.freq = grid.freq(best);
    sel.steered_angle = steered(sel.freq);
    sel.alignment_error = best_err;
    sel.flagged = best_err > 1.0 / subarray_size;
    out.push_back(sel);
  }
  return out;
}

StageTwoReport stage2_disambiguate(const TrainingSetup& s, const LosChannel& dense_channel,
                                   const StageOneReport& report1, std::uint64_t seed) {
  StageTwoReport r;
  r.param = stage2_td_parameter(report1.candidates.front().angle, report1.best_freq, s.grid);
  r.selected = stage2_select_subcarriers(report1, r.param, s.grid, s.cfg.Q());

  // Only the selected subcarriers carry a pilot.
  std::vector<double> freqs;
  LosChannel sub;
  sub.kind = dense_channel.kind;
  sub.model = dense_channel.model;
  sub.user = dense_channel.user;
  sub.rows = ComplexMatrix(r.selected.size(), dense_channel.antennas());
  for (std::size_t i = 0; i < r.selected.size(); ++i) {
    const auto m = static_cast<std::size_t>(r.selected[i].subcarrier - 1);
    freqs.push_back(dense_channel.freqs[m]);
    sub.path_gains.push_back(dense_channel.path_gains[m]);
    const auto src = dense_channel.rows.row(m);
    std::copy(src.begin(), src.end(), sub.rows.row(i).begin());
  }
  sub.freqs = freqs;

  TdPsParams td;
  td.td_angle = r.param.td_angle;
  const auto beams = combined_beamformer_matrix(td, s.dense, freqs, s.grid.carrier(), s.ex);
  const auto y = simulate_pilot(sub, beams, s.tx_power(), s.noise_power(), seed, s.ex);
  r.calibrated_powers = calibrated_powers(freqs, y);
  const auto w = argmax_first(r.calibrated_powers);
  r.winner = static_cast<int>(w) + 1;
  r.steered_angle = r.selected[w].steered_angle;
  r.estimated_angle = r.selected[w].candidate_angle;
  return r;
}

StageTwoReport stage2_disambiguate(const TrainingSetup& s, const PolarPoint& user, const StageOneReport& report1,
                                   std::uint64_t seed) {
  const auto ch = los_channel(s.cfg, user, s.dense, s.grid.freqs(), s.subarray_model, s.ex);
  return stage2_disambiguate(s, ch, report1, seed);
}

// ---- stage 3 -------------------------------------------------------------

StageThreeParameters stage3_td_ps_parameters(double angle, const ValidatedConfig& cfg, const FrequencyGrid& grid) {
  StageThreeParameters p;
  p.mu_min = curvature_from_range(cfg.params.range_max, angle);
  p.mu_max = curvature_from_range(cfg.params.range_min, angle);
  p.mu_bar = 0.5 * (p.mu_min + p.mu_max);
  const double rl = grid.low_ratio();
  const double rh = grid.high_ratio();
  p.degenerate = !(p.mu_max > p.mu_min);
  p.mu_th = p.degenerate ? 0.0
                         : std::max(rl * (p.mu_max - p.mu_bar) / (1.0 - rl), rh * (p.mu_bar - p.mu_min) / (rh - 1.0));
  p.params.td_angle = angle;
  p.params.td_curvature = p.mu_bar - p.mu_th;
  p.params.ps_angle = 0.0;
  p.params.ps_curvature = p.mu_th;
  return p;
}

std::vector<double> stage3_focus_list(const StageThreeParameters& p, const FrequencyGrid& grid) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(grid.size()));
  for (double f : grid.freqs()) out.push_back(p.params.td_curvature + p.params.ps_curvature * grid.carrier() / f);
  return out;
}

StageThreeReport stage3_range_sweep(const TrainingSetup& s, const LosChannel& full_channel, double angle,
                                    std::uint64_t seed) {
  StageThreeReport r;
  r.setup = stage3_td_ps_parameters(angle, s.cfg, s.grid);
  r.focus = stage3_focus_list(r.setup, s.grid);
  const auto beams = combined_beamformer_matrix(r.setup.params, s.full, s.grid.freqs(), s.grid.carrier(), s.ex);
  const auto y = simulate_pilot(full_channel, beams, s.tx_power(), s.noise_power(), seed, s.ex);
  r.calibrated_powers = calibrated_powers(s.grid.freqs(), y);
  const auto best = argmax_first(r.calibrated_powers);
  r.best_subcarrier = static_cast<int>(best) + 1;
  r.estimated_curvature = r.focus[best];
  if (!(r.estimated_curvature > 0.0))
    throw std::runtime_error("stage 3: non-positive focus curvature, range estimate undefined");
  r.estimated_range = range_from_curvature(r.estimated_curvature, angle);
  return r;
}

StageThreeReport stage3_range_sweep(const TrainingSetup& s, const PolarPoint& user, double angle,
                                    std::uint64_t seed) {
  const auto ch = los_channel(s.cfg, user, s.full, s.grid.freqs(), s.array_model, s.ex);
  return stage3_range_sweep(s, ch, angle, seed);
}

// ---- pipeline ------------------------------------------------------------

TrainingOutcome run_full_training(const TrainingSetup& s, const TrainingChannels& ch, std::uint64_t seed) {
  TrainingOutcome out;
  out.stage1 = stage1_angle_sweep(s, ch.sparse, derive_seed(seed, {1}));
  out.stage2 = stage2_disambiguate(s, ch.dense, out.stage1, derive_seed(seed, {2}));
  out.stage3 = stage3_range_sweep(s, ch.full, out.stage2.estimated_angle, derive_seed(seed, {3}));
  out.angle = out.stage2.estimated_angle;
  out.range = out.stage3.estimated_range;
  out.pilot_count = 3;
  out.data_params.td_angle = out.angle;
  out.data_params.td_curvature = out.stage3.estimated_curvature;
  return out;
}

TrainingOutcome run_full_training(const TrainingSetup& s, const PolarPoint& user, std::uint64_t seed) {
  return run_full_training(s, make_training_channels(s, user), seed);
}

ComplexMatrix data_beamformers(const TrainingSetup& s, const TrainingOutcome& outcome) {
  return combined_beamformer_matrix(outcome.data_params, s.full, s.grid.freqs(), s.grid.carrier(), s.ex);
}

}  // namespace nfbt
