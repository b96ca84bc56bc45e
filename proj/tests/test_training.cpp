#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "nfbt/beamforming.hpp"
#include "nfbt/training.hpp"

using namespace nfbt;

namespace {

ValidatedConfig config_with_noise(double noise) {
  SystemConfig c;
  c.noise_power = noise;
  return validate_config(c);
}

const TrainingSetup& quiet() {
  static const TrainingSetup s = make_training_setup(config_with_noise(0.0));
  return s;
}

}  // namespace

TEST_CASE("pilot noise variance") {
  const auto cfg = config_with_noise(1e-11);
  const auto sparse = sparse_subarray(cfg);
  const std::vector<double> freqs(100000, 60e9);
  const auto ch = los_channel(cfg, PolarPoint::from_range_angle(20.0, 0.1), sparse, freqs, PathModel::Planar);
  const auto beams = combined_beamformer_matrix({}, sparse, freqs, 60e9);
  const auto clean = simulate_pilot(ch, beams, 1.0, 0.0, 5);
  const auto noisy = simulate_pilot(ch, beams, 1.0, 1e-11, 5);
  cdouble mean = 0;
  for (std::size_t i = 0; i < freqs.size(); ++i) mean += noisy[i] - clean[i];
  mean /= static_cast<double>(freqs.size());
  double var = 0;
  for (std::size_t i = 0; i < freqs.size(); ++i) var += std::norm(noisy[i] - clean[i] - mean);
  var /= static_cast<double>(freqs.size() - 1);
  CHECK(var == doctest::Approx(1e-11).epsilon(0.02));

  CHECK(simulate_pilot(ch, beams, 1.0, 1e-11, 5) == noisy);
  CHECK(simulate_pilot(ch, beams, 1.0, 1e-11, 6) != noisy);
}

TEST_CASE("noise-free matched pilot magnitude") {
  const auto& s = quiet();
  const auto u = PolarPoint::from_range_angle(18.0, -0.3);
  const auto ch = los_channel(s.cfg, u, s.full, s.grid.freqs(), PathModel::Exact);
  ComplexMatrix beams(s.grid.size(), 513);
  for (int m = 1; m <= s.grid.size(); ++m) {
    const auto w = matched_beamformer(near_field_steering(u, s.full, s.grid.freq(m)));
    std::copy(w.entries.begin(), w.entries.end(), beams.row(m - 1).begin());
  }
  const auto y = simulate_pilot(ch, beams, 2.0, 0.0, 1);
  for (int m : {1, 600, 1024})
    CHECK(std::abs(y[m - 1]) == doctest::Approx(std::sqrt(2.0 * 513) * ch.path_gains[m - 1]).epsilon(1e-10));
}

TEST_CASE("argmax is first-index and scale invariant") {
  const std::vector<double> v{0.1, 0.7, 0.3, 0.7, 0.2};
  CHECK(argmax_first(v) == 1);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1), sc(1e-6, 1e6);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> w(50);
    for (auto& x : w) x = u(rng);
    const double k = sc(rng);
    auto scaled = w;
    for (auto& x : scaled) x *= k;
    CHECK(argmax_first(w) == argmax_first(scaled));
  }
}

TEST_CASE("calibrated powers") {
  const std::vector<double> f{1.0, 2.0};
  const CVector y{{3.0, 4.0}, {0.0, 1.0}};
  const auto p = calibrated_powers(f, y);
  CHECK(p[0] == doctest::Approx(25.0));
  CHECK(p[1] == doctest::Approx(4.0));
}

TEST_CASE("stage-1 candidates for the worked example subcarrier") {
  const auto& s = quiet();
  REQUIRE(s.sweep_td_angle == doctest::Approx(-6.125));
  REQUIRE(s.grid.nearest_index(59.3774e9) == 300);
  const auto r = stage1_report_for_subcarrier(s.sweep_td_angle, 8, s.grid, 300);
  REQUIRE(r.candidates.size() == 8);
  // first candidate at -0.8199, step 0.2526
  for (int k = 0; k < 8; ++k) CHECK(std::abs(r.candidates[k].angle - (-0.8199 + 0.2526 * k)) < 5e-4);
}

TEST_CASE("stage 1 finds the subcarrier whose beam hits the user") {
  const auto& s = quiet();
  for (int target : {40, 300, 700, 1000}) {
    const auto r = stage1_report_for_subcarrier(s.sweep_td_angle, 8, s.grid, target);
    const double theta = r.candidates[r.candidates.size() / 2].angle;
    const auto got = stage1_angle_sweep(s, PolarPoint::from_range_angle(30.0, theta), 1);
    CHECK(got.best_subcarrier == target);
  }
}

TEST_CASE("stage-1 candidate list resolves any user angle") {
  const auto& s = quiet();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ua(-0.95, 0.95);
  for (int i = 0; i < 40; ++i) {
    const double theta = ua(rng);
    const auto r = stage1_angle_sweep(s, PolarPoint::from_range_angle(30.0, theta), 1);
    double best = 1e9;
    for (auto c : r.candidates) best = std::min(best, std::abs(c.angle - theta));
    CHECK(best <= 2 * 1.5 / (1024 * 8));
  }
}

TEST_CASE("stage-2 TD parameter") {
  const FrequencyGrid g(60e9, 3e9, 1024);
  const auto p = stage2_td_parameter(-0.8199 + 0.2526, 59.3774e9, g);
  CHECK(p.p == 40);
  CHECK(p.td_angle == doctest::Approx(-0.8199 + 0.2526 - 80).epsilon(1e-12));
  CHECK(stage2_td_parameter(0.0, 60e9, g).p == static_cast<int>(std::floor(2 * 60.0 / 3 + 0.5)));
  // rounding boundary of 2 f_c^2 / (B f): 40.5 at f = 2 f_c^2 / (40.5 B)
  const double edge = 2 * 60e9 * 60e9 / (40.5 * 3e9);
  CHECK(stage2_td_parameter(0.0, edge * (1 + 1e-9), g).p == 40);
  CHECK(stage2_td_parameter(0.0, edge * (1 - 1e-9), g).p == 41);
}

TEST_CASE("stage-2 subcarrier selection for the worked example") {
  SystemConfig c;
  c.subarray_antennas = 33;
  const auto cfg = validate_config(c);
  const auto grid = make_frequency_grid(cfg);
  const auto r1 = stage1_report_for_subcarrier(-6.125, 8, grid, 300);
  const auto param = stage2_td_parameter(r1.candidates.front().angle, r1.best_freq, grid);
  CHECK(param.td_angle == doctest::Approx(-80.8199).epsilon(1e-5));
  const auto sel = stage2_select_subcarriers(r1, param, grid, 33);
  REQUIRE(sel.size() == 8);
  CHECK(sel[0].seed_subcarrier == 512);
  const double fexp[3] = {59.0698e9, 58.8853e9, 58.7036e9};
  for (int i = 0; i < 3; ++i) CHECK(std::abs(sel[5 + i].freq - fexp[i]) <= grid.spacing());
  for (const auto& s : sel) {
    const double steered = param.td_angle + 2.0 * param.p * 60e9 / s.freq;
    CHECK(s.steered_angle == doctest::Approx(steered));
    CHECK(std::abs(steered - s.candidate_angle) <= 1.0 / 33);
    CHECK_FALSE(s.flagged);
  }
  // seed spacing of eta subcarriers moves the steered angle by about 2p eta B / (M f_c)
  const int eta = 1023 / 16;
  const double predicted = 2.0 * param.p / 60e9 * eta * grid.spacing();
  const double a = param.td_angle + 2.0 * param.p * 60e9 / grid.freq(sel[3].seed_subcarrier);
  const double b = param.td_angle + 2.0 * param.p * 60e9 / grid.freq(sel[4].seed_subcarrier);
  CHECK(std::abs(b - a) == doctest::Approx(predicted).epsilon(0.05));
}

TEST_CASE("stage 2 picks the candidate the user sits on") {
  const auto& s = quiet();
  const auto r1 = stage1_report_for_subcarrier(s.sweep_td_angle, 8, s.grid, 300);
  for (std::size_t j = 0; j < r1.candidates.size(); ++j) {
    const double theta = r1.candidates[j].angle;
    if (std::abs(theta) >= 0.95) continue;
    const auto r2 = stage2_disambiguate(s, PolarPoint::from_range_angle(25.0, theta), r1, 3);
    CHECK(r2.winner == static_cast<int>(j) + 1);
    CHECK(r2.estimated_angle == theta);
  }
}

TEST_CASE("stage 2 off-grid user: nearest candidate") {
  const auto& s = quiet();
  const auto r1 = stage1_report_for_subcarrier(s.sweep_td_angle, 8, s.grid, 300);
  const double theta = r1.candidates[3].angle + 0.02;
  const auto r2 = stage2_disambiguate(s, PolarPoint::from_range_angle(25.0, theta), r1, 3);
  CHECK(r2.estimated_angle == r1.candidates[3].angle);
}

TEST_CASE("stage-3 parameters at broadside") {
  const auto& s = quiet();
  const auto p = stage3_td_ps_parameters(0.0, s.cfg, s.grid);
  CHECK(p.mu_min == doctest::Approx(0.01));
  CHECK(p.mu_max == doctest::Approx(0.05));
  CHECK(p.mu_bar == doctest::Approx(0.03));
  const double rl = s.grid.low_ratio(), rh = s.grid.high_ratio();
  CHECK(p.mu_th == doctest::Approx(std::max(rl * 0.02 / (1 - rl), rh * 0.02 / (rh - 1))));
  CHECK(p.mu_th == doctest::Approx(0.82).epsilon(0.002));
  CHECK(p.params.td_curvature + p.params.ps_curvature == doctest::Approx(p.mu_bar).epsilon(1e-14));

  const auto focus = stage3_focus_list(p, s.grid);
  CHECK(focus.back() <= p.mu_min + 1e-12);
  CHECK(focus.front() >= p.mu_max - 1e-12);
  for (std::size_t i = 1; i < focus.size(); ++i) CHECK(focus[i] < focus[i - 1]);
}

TEST_CASE("stage-3 sweep") {
  const auto& s = quiet();
  const auto p = stage3_td_ps_parameters(0.0, s.cfg, s.grid);
  const auto focus = stage3_focus_list(p, s.grid);
  const int c = s.grid.central_index();
  const double r_center = range_from_curvature(focus[c - 1], 0.0);
  const auto rep = stage3_range_sweep(s, PolarPoint::from_range_angle(r_center, 0.0), 0.0, 1);
  CHECK(rep.best_subcarrier == c);
  CHECK(rep.estimated_range == doctest::Approx(r_center).epsilon(1e-9));

  // user at r_min: half the local spacing when the channel has the same second-order
  // wavefront as the beamformer, one spacing under the exact spherical channel
  const double mu0 = curvature_from_range(10.0, 0.0);
  std::size_t j = 0;
  while (j + 2 < focus.size() && focus[j + 1] > mu0) ++j;
  const double spacing_m = std::abs(range_from_curvature(focus[j + 1], 0.0) - range_from_curvature(focus[j], 0.0));
  SystemConfig fc;
  fc.noise_power = 0.0;
  const auto fresnel = make_training_setup(validate_config(fc), PathModel::Fresnel);
  const auto near_f = stage3_range_sweep(fresnel, PolarPoint::from_range_angle(10.0, 0.0), 0.0, 1);
  CHECK(std::abs(near_f.estimated_range - 10.0) <= 0.5 * spacing_m + 1e-9);
  const auto near = stage3_range_sweep(s, PolarPoint::from_range_angle(10.0, 0.0), 0.0, 1);
  CHECK(std::abs(near.estimated_range - 10.0) <= spacing_m);

  // focus points thin out with range
  auto local = [&](double r) {
    const double mu = curvature_from_range(r, 0.0);
    std::size_t i = 0;
    while (i + 1 < focus.size() && focus[i + 1] > mu) ++i;
    return range_from_curvature(focus[i + 1], 0.0) - range_from_curvature(focus[i], 0.0);
  };
  CHECK(local(49.0) > local(11.0));
}

TEST_CASE("full training: noise-free accuracy, pilots, determinism") {
  const auto& s = quiet();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(-0.5, 0.5), ur(10, 50);
  int good = 0;
  const int users = 40;
  for (int i = 0; i < users; ++i) {
    const auto u = PolarPoint::from_range_angle(ur(rng), ua(rng));
    const auto out = run_full_training(s, u, 7);
    CHECK(out.pilot_count == 3);
    if (std::abs(out.angle - u.angle()) <= 3.0 / (1024 * 8)) ++good;
  }
  CHECK(good >= 0.95 * users);

  const auto noisy = make_training_setup(config_with_noise(1e-11));
  const auto u = PolarPoint::from_range_angle(30.0, 0.2);
  const auto a = run_full_training(noisy, u, 42);
  const auto b = run_full_training(noisy, u, 42);
  CHECK(a.angle == b.angle);
  CHECK(a.range == b.range);
  CHECK(a.stage1.calibrated_powers == b.stage1.calibrated_powers);
  CHECK(a.stage3.calibrated_powers == b.stage3.calibrated_powers);
}

TEST_CASE("parallel training matches serial") {
  const auto cfg = config_with_noise(1e-11);
  const auto ser = make_training_setup(cfg, PathModel::Exact, PathModel::Planar, Execution::Serial);
  const auto par = make_training_setup(cfg, PathModel::Exact, PathModel::Planar, Execution::Parallel);
  const auto u = PolarPoint::from_range_angle(21.0, -0.33);
  const auto a = run_full_training(ser, u, 9);
  const auto b = run_full_training(par, u, 9);
  CHECK(a.stage1.calibrated_powers == b.stage1.calibrated_powers);
  CHECK(a.stage2.calibrated_powers == b.stage2.calibrated_powers);
  CHECK(a.stage3.calibrated_powers == b.stage3.calibrated_powers);
  CHECK(a.range == b.range);
}

TEST_CASE("data beamformers focus on the estimate") {
  const auto& s = quiet();
  const auto u = PolarPoint::from_range_angle(27.0, 0.15);
  const auto out = run_full_training(s, u, 1);
  const auto w = data_beamformers(s, out);
  REQUIRE(w.rows() == 1024);
  CHECK(out.data_params.ps_angle == 0.0);
  CHECK(out.data_params.ps_curvature == 0.0);
  const auto a = near_field_steering(u, s.full, s.grid.freq(513));
  CHECK(array_gain(w.row(512), a) > 0.9);
}
